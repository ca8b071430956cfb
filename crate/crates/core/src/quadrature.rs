//! Deterministic numerical integration.
//!
//! The basic rule is Gauss-Legendre with a fixed node table per order; an
//! integral is refined by doubling the node count until two successive
//! estimates agree to the requested relative tolerance. Node tables are
//! computed once and cached, so results are bit-reproducible for a fixed
//! [`QuadratureSpec`].
//!
//! Integrals of stationary-state quantities over the box (-π/2, π/2) go
//! through [`integrate_box`], which first applies a fixed polynomial
//! grading substitution. The grading crushes the integrable wall
//! singularities of squared eigenfunction derivatives (the integrand of
//! I₃ behaves like (π/2 - q)^{2(A-B)-4} at the right wall, which plain
//! Gauss-Legendre resolves only at an O(n^{-0.4}) rate for the parameter
//! sets of interest). Integrands receive a [`QPoint`] carrying the exact
//! wall distances so evaluation stays accurate arbitrarily close to the
//! walls.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::stationary::StationaryState;

/// Controls for the doubling Gauss-Legendre scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Node count of the first estimate. At least 16.
    pub base_order: usize,
    /// Relative agreement required between successive estimates. At least 1e-14.
    pub rel_tol: f64,
    /// Number of node-count doublings allowed before giving up.
    pub max_doublings: u32,
}

impl QuadratureSpec {
    pub fn new(base_order: usize, rel_tol: f64, max_doublings: u32) -> Result<Self> {
        if base_order < 16 {
            return Err(Error::Domain(format!(
                "base_order must be at least 16, got {base_order}"
            )));
        }
        if !(rel_tol >= 1e-14) {
            return Err(Error::Domain(format!(
                "rel_tol must be at least 1e-14, got {rel_tol}"
            )));
        }
        if max_doublings == 0 {
            return Err(Error::Domain("max_doublings must be positive".into()));
        }
        Ok(Self {
            base_order,
            rel_tol,
            max_doublings,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            base_order: 64,
            rel_tol: 1e-11,
            max_doublings: 6,
        }
    }
}

/// Two successive estimates below this magnitude are accepted as a zero
/// integral; a purely relative criterion can never terminate on them.
const ZERO_SCALE: f64 = 1e-12;

type NodeTable = Arc<(Vec<f64>, Vec<f64>)>;

fn node_cache() -> &'static Mutex<HashMap<usize, NodeTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, NodeTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and its derivative, by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Roots found by Newton iteration from the Chebyshev-like initial guess;
/// the table is symmetrized so node i and node n-1-i are exact negatives.
pub fn gauss_legendre(n: usize) -> NodeTable {
    assert!(n >= 2, "Gauss-Legendre order must be at least 2");
    if let Some(t) = node_cache().lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // one clean-up step after convergence
        let (p, d) = legendre_pair(n, x);
        x -= p / d;
        let dp = legendre_pair(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_pair(n, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (d * d);
    }
    let table: NodeTable = Arc::new((nodes, weights));
    node_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&table));
    table
}

fn gl_estimate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let table = gauss_legendre(order);
    let (nodes, weights) = (&table.0, &table.1);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        sum += w * f(mid + half * x);
    }
    half * sum
}

fn converged(latest: f64, previous: f64, rel_tol: f64) -> bool {
    let scale = latest.abs().max(previous.abs());
    let diff = (latest - previous).abs();
    diff <= rel_tol * scale || scale <= ZERO_SCALE
}

/// ∫_a^b f(x) dx by Gauss-Legendre with node doubling.
///
/// Nodes never touch the endpoints, so integrable endpoint singularities
/// do not make the rule blow up, though they may slow convergence.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a < b) {
        return Err(Error::Domain(format!(
            "integrate requires a < b, got [{a}, {b}]"
        )));
    }
    let mut previous = f64::NAN;
    let mut latest = gl_estimate(&f, a, b, spec.base_order);
    for k in 1..=spec.max_doublings {
        previous = latest;
        latest = gl_estimate(&f, a, b, spec.base_order << k);
        if converged(latest, previous, spec.rel_tol) {
            return Ok(latest);
        }
    }
    Err(Error::QuadratureNonConvergence {
        doublings: spec.max_doublings,
        previous,
        latest,
    })
}

/// Interior point of the box (-π/2, π/2) carrying numerically exact
/// distances to both walls. Evaluating eigenfunctions through the wall
/// distances keeps factors like 1 - sin q accurate where the naive
/// expression rounds to zero.
#[derive(Debug, Clone, Copy)]
pub struct QPoint {
    q: f64,
    dist_left: f64,
    dist_right: f64,
}

impl QPoint {
    /// Point at coordinate q, distances derived from q.
    pub fn new(q: f64) -> Result<Self> {
        if !(q.abs() <= FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "q = {q} outside the box [-pi/2, pi/2]"
            )));
        }
        Ok(Self {
            q,
            dist_left: q + FRAC_PI_2,
            dist_right: FRAC_PI_2 - q,
        })
    }

    /// Point at distance d from the left wall q = -π/2.
    pub fn from_left_distance(d: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&d) {
            return Err(Error::Domain(format!("wall distance {d} outside [0, pi]")));
        }
        Ok(Self {
            q: d - FRAC_PI_2,
            dist_left: d,
            dist_right: PI - d,
        })
    }

    /// Point at distance d from the right wall q = +π/2.
    pub fn from_right_distance(d: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&d) {
            return Err(Error::Domain(format!("wall distance {d} outside [0, pi]")));
        }
        Ok(Self {
            q: FRAC_PI_2 - d,
            dist_left: PI - d,
            dist_right: d,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// q + π/2, exact near the left wall.
    pub fn dist_left(&self) -> f64 {
        self.dist_left
    }

    /// π/2 - q, exact near the right wall.
    pub fn dist_right(&self) -> f64 {
        self.dist_right
    }

    /// sin q, reconstructed from the nearer wall distance.
    pub fn sin_q(&self) -> f64 {
        if self.dist_right <= self.dist_left {
            1.0 - self.one_minus_sin_q()
        } else {
            self.one_plus_sin_q() - 1.0
        }
    }

    /// 1 - sin q = 2 sin²(dist_right / 2), exact at any distance.
    pub fn one_minus_sin_q(&self) -> f64 {
        let s = (0.5 * self.dist_right).sin();
        2.0 * s * s
    }

    /// 1 + sin q = 2 sin²(dist_left / 2), exact at any distance.
    pub fn one_plus_sin_q(&self) -> f64 {
        let s = (0.5 * self.dist_left).sin();
        2.0 * s * s
    }

    /// cos q = sin(min wall distance), positive inside the box.
    pub fn cos_q(&self) -> f64 {
        self.dist_left.min(self.dist_right).sin()
    }
}

/// Order of the grading polynomial: the map u ↦ q has dq/du ∝ (1-u²)^m.
const GRADING_ORDER: u32 = 9;

/// Wall distances below this contribute nothing the grading weight has
/// not already suppressed past double precision.
const GRADING_CLAMP: f64 = 1e-100;

/// Binomial coefficients C(9, j).
const BINOM9: [f64; 10] = [1.0, 9.0, 36.0, 84.0, 126.0, 126.0, 84.0, 36.0, 9.0, 1.0];

/// ∫_{|u|}^1 (1-s²)^m ds, evaluated as a polynomial in (1 - |u|) so the
/// tail stays accurate when it underflows any naive 1 - p(u) form.
fn grading_tail(e: f64) -> f64 {
    let m = GRADING_ORDER as i32;
    let mut sum = 0.0;
    let mut epow = e.powi(m + 1);
    for (j, c) in BINOM9.iter().enumerate() {
        let j = j as i32;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * c * 2f64.powi(m - j) * epow / f64::from(m + j + 1);
        epow *= e;
    }
    sum
}

fn grading_norm() -> f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| grading_tail(1.0))
}

/// Map a rule abscissa u ∈ (-1, 1) to a box point and the Jacobian of the
/// substitution q(u), with dq/du = (π/2)(1-u²)^m / ∫₀¹(1-s²)^m ds.
fn graded_point(u: f64) -> Option<(QPoint, f64)> {
    let c = grading_norm();
    let au = u.abs();
    let tail = grading_tail(1.0 - au) / c;
    let d = FRAC_PI_2 * tail;
    if d < GRADING_CLAMP {
        return None;
    }
    let jac = FRAC_PI_2 * (1.0 - u * u).powi(GRADING_ORDER as i32) / c;
    let pt = if u >= 0.0 {
        QPoint::from_right_distance(d)
    } else {
        QPoint::from_left_distance(d)
    }
    .expect("graded distance is inside [0, pi]");
    Some((pt, jac))
}

fn graded_estimate<F: Fn(&QPoint) -> f64>(f: &F, order: usize) -> f64 {
    let table = gauss_legendre(order);
    let (nodes, weights) = (&table.0, &table.1);
    let mut sum = 0.0;
    for (u, w) in nodes.iter().zip(weights.iter()) {
        if let Some((pt, jac)) = graded_point(*u) {
            sum += w * jac * f(&pt);
        }
    }
    sum
}

/// ∫ over (-π/2, π/2) of a stationary-state quantity, through the grading
/// substitution, refined by node doubling as in [`integrate`].
pub fn integrate_box<F: Fn(&QPoint) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    let mut previous = f64::NAN;
    let mut latest = graded_estimate(&f, spec.base_order);
    for k in 1..=spec.max_doublings {
        previous = latest;
        latest = graded_estimate(&f, spec.base_order << k);
        if converged(latest, previous, spec.rel_tol) {
            return Ok(latest);
        }
    }
    Err(Error::QuadratureNonConvergence {
        doublings: spec.max_doublings,
        previous,
        latest,
    })
}

/// Moment I_k = ∫ Q²(q) q^k dq of a normalized stationary state.
/// k = 0 is admitted as the normalization check ∫ Q² dq.
pub fn moment(state: &StationaryState, k: u32, spec: &QuadratureSpec) -> Result<f64> {
    if k > 2 {
        return Err(Error::Domain(format!("moment order k = {k} not in {{0, 1, 2}}")));
    }
    integrate_box(
        |pt| {
            let v = state.eigenfunction_at(pt);
            v * v * pt.q().powi(k as i32)
        },
        spec,
    )
}

/// Kinetic moment I₃ = ∫ (dQ/dq)² dq, using the analytic derivative.
pub fn moment_kinetic(state: &StationaryState, spec: &QuadratureSpec) -> Result<f64> {
    integrate_box(
        |pt| {
            let d = state.eigenfunction_deriv_at(pt);
            d * d
        },
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{self, JacobiIndex};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn integrates_sine_exactly() {
        let spec = QuadratureSpec::default();
        let v = integrate(|q| q.sin(), 0.0, PI, &spec).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_weight_matches_beta_closed_form() {
        // ∫_{-1}^{1} (1-z)^α (1+z)^β dz = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2)
        let (a, b) = (1.1, 7.9);
        let spec = QuadratureSpec::default();
        let v = integrate(|z| (1.0 - z).powf(a) * (1.0 + z).powf(b), -1.0, 1.0, &spec).unwrap();
        let want = ((a + b + 1.0) * std::f64::consts::LN_2
            + special::log_gamma(a + 1.0).unwrap()
            + special::log_gamma(b + 1.0).unwrap()
            - special::log_gamma(a + b + 2.0).unwrap())
        .exp();
        assert_relative_eq!(v, want, max_relative = 1e-11);
        assert_relative_eq!(v, 9.617_896_661_827_128, max_relative = 1e-12);
    }

    #[test]
    fn low_degree_polynomials_are_exact() {
        let spec = QuadratureSpec::new(16, 1e-14, 1).unwrap();
        // degree 31 is the highest a 16-node rule integrates exactly
        let v = integrate(|x| 32.0 * x.powi(31) + x.powi(7) - 3.0 * x * x, -1.0, 1.0, &spec)
            .unwrap();
        assert_abs_diff_eq!(v, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn reports_nonconvergence_with_last_two_estimates() {
        let spec = QuadratureSpec::new(16, 1e-14, 2).unwrap();
        // x^{-0.95} is integrable but far too singular for undoubled nodes
        let err = integrate(|x| x.powf(-0.95), 0.0, 1.0, &spec).unwrap_err();
        match err {
            Error::QuadratureNonConvergence {
                doublings,
                previous,
                latest,
            } => {
                assert_eq!(doublings, 2);
                assert!(previous.is_finite() && latest.is_finite());
                assert!(previous != latest);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_interval() {
        let spec = QuadratureSpec::default();
        assert!(integrate(|x| x, 1.0, 1.0, &spec).is_err());
    }

    #[test]
    fn deterministic_across_runs() {
        let spec = QuadratureSpec::default();
        let a = integrate(|q| (3.0 * q).cos() * q.exp(), 0.0, 2.0, &spec).unwrap();
        let b = integrate(|q| (3.0 * q).cos() * q.exp(), 0.0, 2.0, &spec).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(8, 1e-11, 6).is_err());
        assert!(QuadratureSpec::new(64, 1e-15, 6).is_err());
        assert!(QuadratureSpec::new(64, 1e-11, 0).is_err());
        assert!(QuadratureSpec::new(16, 1e-14, 1).is_ok());
    }

    #[test]
    fn box_rule_carries_exact_jacobian() {
        let spec = QuadratureSpec::default();
        // ∫ cos q dq = 2 and ∫ 1 dq = π over the box
        let v = integrate_box(|pt| pt.cos_q(), &spec).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-12);
        let v = integrate_box(|_| 1.0, &spec).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-12);
        // odd integrand vanishes by the symmetry of the grading
        let v = integrate_box(|pt| pt.sin_q(), &spec).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn box_rule_handles_integrable_wall_singularity() {
        let spec = QuadratureSpec::default();
        // ∫ (π/2 - q)^{-0.8} dq over the box = 5 π^{0.2}
        let v = integrate_box(|pt| pt.dist_right().powf(-0.8), &spec).unwrap();
        assert_relative_eq!(v, 5.0 * PI.powf(0.2), max_relative = 1e-11);
    }

    #[test]
    fn qpoint_identities() {
        for &d in &[1e-60, 1e-20, 1e-3, 0.4, 1.5, 3.0] {
            let pt = QPoint::from_right_distance(d).unwrap();
            assert_relative_eq!(
                pt.one_minus_sin_q() + pt.one_plus_sin_q(),
                2.0,
                max_relative = 1e-15
            );
            let s = pt.sin_q();
            let c = pt.cos_q();
            assert_relative_eq!(s * s + c * c, 1.0, max_relative = 1e-14);
            // the defining stable identity: 1 - sin q = 2 sin²(d/2)
            assert!(pt.one_minus_sin_q() > 0.0);
        }
        assert!(QPoint::new(2.0).is_err());
        assert!(QPoint::from_left_distance(-0.1).is_err());
        assert!(QPoint::from_left_distance(4.0).is_err());
    }

    #[test]
    fn grading_tail_matches_direct_integral() {
        // ∫_u^1 (1-s²)^9 ds from the stable polynomial vs midpoint sum
        for &u in &[0.0, 0.3, 0.8, 0.99] {
            let n = 200_000;
            let h = (1.0 - u) / n as f64;
            let direct: f64 = (0..n)
                .map(|i| {
                    let s = u + (i as f64 + 0.5) * h;
                    (1.0 - s * s).powi(9) * h
                })
                .sum();
            assert_relative_eq!(grading_tail(1.0 - u), direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn moment_rejects_high_order() {
        let params = crate::stationary::PTParams::new(5.0, 3.4).unwrap();
        let spec = QuadratureSpec::default();
        let state =
            crate::stationary::StationaryState::new(0, crate::stationary::Sector::Minus, params, &spec)
                .unwrap();
        assert!(moment(&state, 3, &spec).is_err());
    }

    proptest! {
        /// Wall distances and q stay consistent through the constructors.
        #[test]
        fn qpoint_roundtrip(q in -FRAC_PI_2..FRAC_PI_2) {
            let pt = QPoint::new(q).unwrap();
            prop_assert!((pt.dist_left() + pt.dist_right() - PI).abs() < 1e-15);
            prop_assert!((pt.sin_q() - q.sin()).abs() < 1e-14);
            prop_assert!((pt.cos_q() - q.cos()).abs() < 1e-14);
        }
    }
}
