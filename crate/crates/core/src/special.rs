//! Classical Jacobi polynomials, X1 Jacobi exceptional polynomials, their
//! derivatives, and the associated normalization constants.
//!
//! Jacobi polynomials P_n^{(α,β)}(z) are orthogonal on [-1, 1] with weight
//! (1-z)^α (1+z)^β for α, β > -1. The X1 Jacobi family starts at degree 1
//! and is orthogonal under the rational weight
//! (1-z)^α (1+z)^β / (β + α - (β - α) z)².

use crate::error::{Error, Result};

/// Jacobi weight exponents (α, β), both > -1 so the weight is integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiIndex {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiIndex {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "Jacobi indices must satisfy alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }
}

/// Evaluate P_n^{(α,β)}(z) by the three-term recurrence
///
/// 2(n+1)(n+α+β+1)(2n+α+β) P_{n+1}
///   = (2n+α+β+1) [ (2n+α+β+2)(2n+α+β) z + α² - β² ] P_n
///     - 2(n+α)(n+β)(2n+α+β+2) P_{n-1}.
///
/// The recurrence is stable on [-1, 1] for the parameter ranges used here.
/// No clamping is applied; evaluation outside [-1, 1] is permitted.
pub fn jacobi_eval(n: u32, idx: JacobiIndex, z: f64) -> f64 {
    let (a, b) = (idx.alpha, idx.beta);
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
    for k in 1..n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let c_next = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        let c_cur = (s + 1.0) * ((s + 2.0) * s * z + a * a - b * b);
        let c_prev = 2.0 * (k + a) * (k + b) * (s + 2.0);
        let next = (c_cur * cur - c_prev * prev) / c_next;
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dz P_n^{(α,β)}(z) via the shift identity
/// P_n' = ((n+α+β+1)/2) P_{n-1}^{(α+1,β+1)}; zero for n = 0.
pub fn jacobi_deriv(n: u32, idx: JacobiIndex, z: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let up = JacobiIndex {
        alpha: idx.alpha + 1.0,
        beta: idx.beta + 1.0,
    };
    0.5 * (f64::from(n) + idx.alpha + idx.beta + 1.0) * jacobi_eval(n - 1, up, z)
}

/// d²/dz² P_n^{(α,β)}(z), applying the shift identity twice.
pub(crate) fn jacobi_deriv2(n: u32, idx: JacobiIndex, z: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let up2 = JacobiIndex {
        alpha: idx.alpha + 2.0,
        beta: idx.beta + 2.0,
    };
    let s = f64::from(n) + idx.alpha + idx.beta;
    0.25 * (s + 1.0) * (s + 2.0) * jacobi_eval(n - 2, up2, z)
}

/// Lanczos coefficients for g = 7 (9-term rational approximation).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms),
/// accurate to better than 12 significant digits over the positive axis.
/// For x < 0.5 the recurrence ln Γ(x) = ln Γ(x+1) - ln x keeps the
/// approximation in its well-conditioned range.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok(log_gamma_lanczos(x + 1.0) - x.ln());
    }
    Ok(log_gamma_lanczos(x))
}

fn log_gamma_lanczos(x: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + i as f64);
    }
    let t = x - 0.5 + LANCZOS_G;
    let half_ln_two_pi = 0.918_938_533_204_672_74; // ln(2π)/2
    half_ln_two_pi + (x - 0.5) * t.ln() - t + acc.ln()
}

/// Normalization constant N_n^{(α,β)} of the orthonormal Jacobi family:
///
/// N = sqrt( n! (2n+α+β+1) Γ(n+α+β+1) / (2^{α+β+1} Γ(n+α+1) Γ(n+β+1)) ),
///
/// computed in log space so large α+β cannot overflow.
pub fn norm_const(n: u32, idx: JacobiIndex) -> Result<f64> {
    let (a, b) = (idx.alpha, idx.beta);
    let nf = f64::from(n);
    for (name, arg) in [
        ("n+α+β+1", nf + a + b + 1.0),
        ("n+α+1", nf + a + 1.0),
        ("n+β+1", nf + b + 1.0),
    ] {
        if !(arg > 0.0) {
            return Err(Error::Domain(format!(
                "norm_const: gamma argument {name} = {arg} is not positive"
            )));
        }
    }
    let log_n2 = log_gamma(nf + 1.0)?
        + (2.0 * nf + a + b + 1.0).ln()
        + log_gamma(nf + a + b + 1.0)?
        - (a + b + 1.0) * std::f64::consts::LN_2
        - log_gamma(nf + a + 1.0)?
        - log_gamma(nf + b + 1.0)?;
    Ok((0.5 * log_n2).exp())
}

/// Guard tolerance for the β - α and β + α + 2n denominators.
const DEGENERACY_TOL: f64 = 1e-12;

fn check_degenerate(n: u32, idx: JacobiIndex) -> Result<(f64, f64)> {
    let diff = idx.beta - idx.alpha;
    if diff.abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateParameters(format!(
            "|beta - alpha| = {} below tolerance; the rational extension collapses",
            diff.abs()
        )));
    }
    let s = idx.beta + idx.alpha + 2.0 * f64::from(n);
    if s.abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateParameters(format!(
            "beta + alpha + 2n = {s} vanishes"
        )));
    }
    Ok((diff, s))
}

/// X1 Jacobi exceptional polynomial of degree n+1:
///
/// P̂_{n+1}^{(α,β)}(z) = ½((β+α)/(β-α) - z) P_n^{(α,β)}(z)
///   + (β+α+2n)^{-1} ( (β+α)/(β-α) P_n^{(α,β)}(z) - P_{n-1}^{(α,β)}(z) ),
///
/// with the convention P_{-1} ≡ 0 at n = 0.
pub fn x1_jacobi_eval(n: u32, idx: JacobiIndex, z: f64) -> Result<f64> {
    let (diff, s) = check_degenerate(n, idx)?;
    let c0 = (idx.beta + idx.alpha) / diff;
    let pn = jacobi_eval(n, idx, z);
    let pprev = if n == 0 {
        0.0
    } else {
        jacobi_eval(n - 1, idx, z)
    };
    Ok(0.5 * (c0 - z) * pn + (c0 * pn - pprev) / s)
}

/// Exact d/dz of `x1_jacobi_eval` by the product rule.
pub fn x1_jacobi_deriv(n: u32, idx: JacobiIndex, z: f64) -> Result<f64> {
    let (diff, s) = check_degenerate(n, idx)?;
    let c0 = (idx.beta + idx.alpha) / diff;
    let pn = jacobi_eval(n, idx, z);
    let pn_d = jacobi_deriv(n, idx, z);
    let pprev_d = if n == 0 {
        0.0
    } else {
        jacobi_deriv(n - 1, idx, z)
    };
    Ok(-0.5 * pn + 0.5 * (c0 - z) * pn_d + (c0 * pn_d - pprev_d) / s)
}

/// Exact d²/dz² of `x1_jacobi_eval`.
pub(crate) fn x1_jacobi_deriv2(n: u32, idx: JacobiIndex, z: f64) -> Result<f64> {
    let (diff, s) = check_degenerate(n, idx)?;
    let c0 = (idx.beta + idx.alpha) / diff;
    let pn_d = jacobi_deriv(n, idx, z);
    let pn_dd = jacobi_deriv2(n, idx, z);
    let pprev_dd = if n == 0 {
        0.0
    } else {
        jacobi_deriv2(n - 1, idx, z)
    };
    Ok(-pn_d + 0.5 * (c0 - z) * pn_dd + (c0 * pn_dd - pprev_dd) / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn idx(alpha: f64, beta: f64) -> JacobiIndex {
        JacobiIndex::new(alpha, beta).unwrap()
    }

    /// Generalized binomial C(x, k) for real x, integer k, as a plain product.
    fn binom(x: f64, k: u32) -> f64 {
        let mut acc = 1.0;
        for i in 1..=k {
            acc *= (x - f64::from(k) + f64::from(i)) / f64::from(i);
        }
        acc
    }

    /// Test-only oracle: the explicit hypergeometric finite sum
    /// P_n^{(α,β)}(z) = Σ_s C(n+α, n-s) C(n+β, s) ((z-1)/2)^s ((z+1)/2)^{n-s}.
    fn jacobi_sum(n: u32, idx: JacobiIndex, z: f64) -> f64 {
        (0..=n)
            .map(|s| {
                binom(f64::from(n) + idx.alpha, n - s)
                    * binom(f64::from(n) + idx.beta, s)
                    * (0.5 * (z - 1.0)).powi(s as i32)
                    * (0.5 * (z + 1.0)).powi((n - s) as i32)
            })
            .sum()
    }

    /// Composite Simpson on [a, b] with 2m intervals; test-only.
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
        let n = 2 * m;
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn jacobi_degree_zero_is_one() {
        assert_eq!(jacobi_eval(0, idx(1.1, 7.9), 0.3), 1.0);
        assert_eq!(jacobi_eval(0, idx(0.0, 0.0), -0.7), 1.0);
    }

    #[test]
    fn jacobi_degree_one_legendre() {
        assert_abs_diff_eq!(jacobi_eval(1, idx(0.0, 0.0), 0.5), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn jacobi_matches_explicit_sum() {
        // frozen from the sum oracle: P_2^{(1.1,7.9)}(0) = 4.155 exactly
        assert_relative_eq!(jacobi_eval(2, idx(1.1, 7.9), 0.0), 4.155, max_relative = 1e-14);
        for n in 0..8u32 {
            for &z in &[-0.9, -0.4, 0.0, 0.3, 0.8, 1.0] {
                let want = jacobi_sum(n, idx(1.1, 7.9), z);
                assert_relative_eq!(
                    jacobi_eval(n, idx(1.1, 7.9), z),
                    want,
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn jacobi_endpoint_identity() {
        // P_n(1) = Γ(n+α+1) / (n! Γ(α+1))
        for &(a, b) in &[(0.1, 8.9), (1.1, 7.9), (4.3, 4.7)] {
            for n in 0..=10u32 {
                let nf = f64::from(n);
                let want = (log_gamma(nf + a + 1.0).unwrap()
                    - log_gamma(nf + 1.0).unwrap()
                    - log_gamma(a + 1.0).unwrap())
                .exp();
                assert_relative_eq!(jacobi_eval(n, idx(a, b), 1.0), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_deriv_trivial_and_shifted() {
        assert_eq!(jacobi_deriv(0, idx(1.1, 7.9), 0.4), 0.0);
        assert_abs_diff_eq!(jacobi_deriv(1, idx(0.0, 0.0), -0.8), 1.0, epsilon = 1e-15);
        // frozen: d/dz P_3^{(1.1,7.9)} at z = 0.2 equals 6 P_2^{(2.1,8.9)}(0.2) = 1.2675
        assert_relative_eq!(jacobi_deriv(3, idx(1.1, 7.9), 0.2), 1.2675, max_relative = 1e-13);
    }

    #[test]
    fn jacobi_deriv_matches_finite_difference() {
        let h = 1e-6;
        for n in 1..6u32 {
            for &z in &[-0.5, 0.2, 0.7] {
                let fd = (jacobi_eval(n, idx(1.1, 7.9), z + h)
                    - jacobi_eval(n, idx(1.1, 7.9), z - h))
                    / (2.0 * h);
                assert_relative_eq!(jacobi_deriv(n, idx(1.1, 7.9), z), fd, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn jacobi_second_deriv_matches_finite_difference() {
        let h = 1e-4;
        for n in 2..6u32 {
            for &z in &[-0.3, 0.1, 0.6] {
                let fd = (jacobi_deriv(n, idx(1.1, 7.9), z + h)
                    - jacobi_deriv(n, idx(1.1, 7.9), z - h))
                    / (2.0 * h);
                assert_relative_eq!(jacobi_deriv2(n, idx(1.1, 7.9), z), fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn log_gamma_trivial_points() {
        assert_abs_diff_eq!(log_gamma(1.0).unwrap(), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(log_gamma(2.0).unwrap(), 0.0, epsilon = 1e-13);
        assert_relative_eq!(
            log_gamma(0.5).unwrap(),
            0.572_364_942_924_700_1, // ln sqrt(pi)
            max_relative = 1e-13
        );
    }

    #[test]
    fn log_gamma_against_integral_oracle() {
        // Γ(0.9) = ∫_0^∞ t^{-0.1} e^{-t} dt; the substitution t = u^10 removes
        // the endpoint singularity, and Simpson on [0, 3] captures the tail
        // (u = 3 means t ≈ 5.9e4). Then climb to 7.9 by Γ(x+1) = x Γ(x).
        let gamma_09 = simpson(|u| 10.0 * u.powi(8) * (-u.powi(10)).exp(), 0.0, 3.0, 60_000);
        assert_relative_eq!(gamma_09, 1.068_628_702_119_319_4, max_relative = 1e-12);
        let mut want = gamma_09.ln();
        for k in 0..7 {
            want += (0.9 + f64::from(k)).ln();
        }
        assert_relative_eq!(log_gamma(7.9).unwrap(), want, max_relative = 1e-12);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.0).is_err());
    }

    #[test]
    fn norm_const_legendre() {
        // ∫_{-1}^{1} P_0² dz = 2, so N_0^{(0,0)} = 1/sqrt(2)
        assert_relative_eq!(
            norm_const(0, idx(0.0, 0.0)).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-14
        );
    }

    #[test]
    fn norm_const_against_quadrature_oracle() {
        // v² ∫ (1-z)^α (1+z)^β P_n² dz = 1, with the integral from Simpson.
        for &(n, a, b) in &[(0u32, 1.1, 7.9), (3, 4.3, 4.7)] {
            let v = norm_const(n, idx(a, b)).unwrap();
            let w = simpson(
                |z| {
                    let p = jacobi_eval(n, idx(a, b), z);
                    (1.0 - z).powf(a) * (1.0 + z).powf(b) * p * p
                },
                -1.0,
                1.0,
                400_000,
            );
            assert_relative_eq!(v * v * w, 1.0, max_relative = 1e-8);
        }
        // frozen from the same oracle
        assert_relative_eq!(
            norm_const(0, idx(1.1, 7.9)).unwrap(),
            0.322_448_192_431_187_46,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            norm_const(3, idx(4.3, 4.7)).unwrap(),
            0.476_294_538_674_457_88,
            max_relative = 1e-13
        );
    }

    #[test]
    fn norm_const_rejects_nonpositive_gamma_argument() {
        // α + β + 1 = -0.1 at n = 0
        assert!(norm_const(0, idx(-0.5, -0.6)).is_err());
    }

    #[test]
    fn x1_degree_one_closed_form() {
        // n = 0: P̂_1 = ½((β+α)/(β-α) - z) + 1/(β-α), from the n = 0 collapse
        // of the defining combination with P_{-1} ≡ 0.
        for &(a, b) in &[(1.1, 7.9), (4.3, 4.7), (2.0, 0.5)] {
            for &z in &[-0.8, 0.0, 0.37, 0.9] {
                let c0 = (b + a) / (b - a);
                let want = 0.5 * (c0 - z) + 1.0 / (b - a);
                assert_relative_eq!(
                    x1_jacobi_eval(0, idx(a, b), z).unwrap(),
                    want,
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn x1_degree_two_hand_evaluation() {
        // n = 1, (α,β) = (1.1, 7.9), z = 0:
        // P_1(0) = (α-β)/2 = -3.4, P_0 = 1, c0 = 9/6.8, β+α+2n = 11
        // ⇒ ½ c0 (-3.4) + (c0 (-3.4) - 1)/11 = -2.25 - 0.5 = -2.75
        let c0: f64 = 9.0 / 6.8;
        let want = 0.5 * c0 * (-3.4) + (c0 * (-3.4) - 1.0) / 11.0;
        assert_relative_eq!(want, -2.75, max_relative = 1e-14);
        assert_relative_eq!(
            x1_jacobi_eval(1, idx(1.1, 7.9), 0.0).unwrap(),
            want,
            max_relative = 1e-13
        );
    }

    #[test]
    fn x1_orthogonal_under_rational_weight() {
        // ∫ Ŵ(z) P̂_{n+1} P̂_{m+1} dz = 0 for n ≠ m,
        // Ŵ(z) = (1-z)^α (1+z)^β / (β + α - (β-α) z)²
        let (a, b) = (1.1, 7.9);
        for n in 0..=5u32 {
            for m in 0..n {
                let int = simpson(
                    |z| {
                        let den = b + a - (b - a) * z;
                        (1.0 - z).powf(a) * (1.0 + z).powf(b) / (den * den)
                            * x1_jacobi_eval(n, idx(a, b), z).unwrap()
                            * x1_jacobi_eval(m, idx(a, b), z).unwrap()
                    },
                    -1.0,
                    1.0,
                    200_000,
                );
                assert!(
                    int.abs() < 1e-8,
                    "X1 orthogonality failed for n={n}, m={m}: {int}"
                );
            }
        }
    }

    #[test]
    fn x1_deriv_degree_one_is_constant() {
        for &z in &[-0.9, 0.0, 0.5] {
            assert_relative_eq!(
                x1_jacobi_deriv(0, idx(1.1, 7.9), z).unwrap(),
                -0.5,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn x1_deriv_matches_finite_difference() {
        let h = 1e-6;
        for &(n, a, b, z) in &[(2u32, 1.1, 7.9, 0.4), (1, 4.3, 4.7, -0.3), (4, 1.1, 7.9, 0.1)] {
            let fd = (x1_jacobi_eval(n, idx(a, b), z + h).unwrap()
                - x1_jacobi_eval(n, idx(a, b), z - h).unwrap())
                / (2.0 * h);
            assert_relative_eq!(
                x1_jacobi_deriv(n, idx(a, b), z).unwrap(),
                fd,
                max_relative = 1e-7
            );
        }
    }

    #[test]
    fn x1_second_deriv_matches_finite_difference() {
        let h = 1e-4;
        for &(n, z) in &[(2u32, 0.4), (3, -0.2)] {
            let fd = (x1_jacobi_deriv(n, idx(1.1, 7.9), z + h).unwrap()
                - x1_jacobi_deriv(n, idx(1.1, 7.9), z - h).unwrap())
                / (2.0 * h);
            assert_relative_eq!(
                x1_jacobi_deriv2(n, idx(1.1, 7.9), z).unwrap(),
                fd,
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn x1_degenerate_parameters_rejected() {
        assert!(matches!(
            x1_jacobi_eval(1, idx(2.0, 2.0 + 1e-13), 0.3),
            Err(Error::DegenerateParameters(_))
        ));
        assert!(x1_jacobi_eval(1, idx(2.0, 2.5), 0.3).is_ok());
    }

    #[test]
    fn jacobi_index_requires_integrable_weight() {
        assert!(JacobiIndex::new(-1.0, 0.0).is_err());
        assert!(JacobiIndex::new(0.0, -1.2).is_err());
        assert!(JacobiIndex::new(-0.9, -0.9).is_ok());
    }

    proptest! {
        /// The production recurrence must satisfy its own three-term
        /// relation to machine precision for n ≤ 30 and z in [-1, 1].
        #[test]
        fn recurrence_residual_at_machine_precision(
            n in 1u32..30,
            a in -0.9f64..10.0,
            b in -0.9f64..10.0,
            z in -1.0f64..1.0,
        ) {
            let ix = idx(a, b);
            let nf = f64::from(n);
            let s = 2.0 * nf + a + b;
            let lhs = 2.0 * (nf + 1.0) * (nf + a + b + 1.0) * s * jacobi_eval(n + 1, ix, z);
            let rhs = (s + 1.0) * ((s + 2.0) * s * z + a * a - b * b) * jacobi_eval(n, ix, z)
                - 2.0 * (nf + a) * (nf + b) * (s + 2.0) * jacobi_eval(n - 1, ix, z);
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
        }
    }
}
