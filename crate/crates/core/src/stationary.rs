//! The fixed-boundary supersymmetric pair on q ∈ (-π/2, π/2): trigonometric
//! Pöschl-Teller potential (minus sector) and its rational extension (plus
//! sector), sharing the spectrum E_n = (n+A)² - (B-½)².
//!
//! Minus-sector eigenfunctions are weighted classical Jacobi polynomials;
//! plus-sector eigenfunctions are weighted X1 Jacobi polynomials divided by
//! the rational denominator β + α - (β-α) z, which equals
//! 2A - 1 - 2B sin q identically. Both sectors are renormalized to unit
//! L² norm and fixed to be positive as q → -π/2⁺, so values are
//! deterministic and directly comparable across sectors.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::quadrature::{self, QPoint, QuadratureSpec};
use crate::special::{self, JacobiIndex};

/// Potential strength parameters A, B with the singularity-avoidance
/// constraint A > max(B + 1.5, |B| + 0.5), which keeps the rational
/// denominator 2A - 1 - 2B sin q positive on the whole box and both
/// derived Jacobi exponents α = A - B - ½, β = A + B - ½ positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTParams {
    a: f64,
    b: f64,
}

impl PTParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite A = {a}, B = {b}")));
        }
        if !(a > (b + 1.5).max(b.abs() + 0.5)) {
            return Err(Error::InvalidParams(format!(
                "require A > max(B + 1.5, |B| + 0.5); got A = {a}, B = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// α = A - B - ½ (> 1 under the parameter constraint).
    pub fn alpha(&self) -> f64 {
        self.a - self.b - 0.5
    }

    /// β = A + B - ½ (> 0 under the parameter constraint).
    pub fn beta(&self) -> f64 {
        self.a + self.b - 0.5
    }

    /// Index (α-1, β+1) of the classical Jacobi family carried by the
    /// minus sector.
    fn classical_index(&self) -> JacobiIndex {
        JacobiIndex {
            alpha: self.alpha() - 1.0,
            beta: self.beta() + 1.0,
        }
    }

    /// Index (α, β) of the X1 family carried by the plus sector.
    fn exceptional_index(&self) -> JacobiIndex {
        JacobiIndex {
            alpha: self.alpha(),
            beta: self.beta(),
        }
    }
}

/// The two partners: `Minus` is the plain Pöschl-Teller potential,
/// `Plus` its rational extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Minus,
    Plus,
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::Minus => write!(f, "minus"),
            Sector::Plus => write!(f, "plus"),
        }
    }
}

fn check_interior(q: f64) -> Result<()> {
    if !(q.abs() < FRAC_PI_2) {
        return Err(Error::WallSingularity(format!(
            "q = {q} is not strictly inside (-pi/2, pi/2)"
        )));
    }
    Ok(())
}

/// Superpotential W̃(q) = (-B-½) tan q + (A-½) sec q + 2B cos q / (2A-1-2B sin q).
pub fn superpotential(q: f64, params: &PTParams) -> Result<f64> {
    check_interior(q)?;
    let (a, b) = (params.a, params.b);
    let (sin, cos) = q.sin_cos();
    let den = 2.0 * a - 1.0 - 2.0 * b * sin;
    Ok((-b - 0.5) * sin / cos + (a - 0.5) / cos + 2.0 * b * cos / den)
}

/// Analytic dW̃/dq.
pub fn superpotential_deriv(q: f64, params: &PTParams) -> Result<f64> {
    check_interior(q)?;
    let (a, b) = (params.a, params.b);
    let (sin, cos) = q.sin_cos();
    let sec2 = 1.0 / (cos * cos);
    let den = 2.0 * a - 1.0 - 2.0 * b * sin;
    let rational = (-2.0 * b * sin * den + 4.0 * b * b * cos * cos) / (den * den);
    Ok((-b - 0.5) * sec2 + (a - 0.5) * sin * sec2 + rational)
}

/// Partner potentials in closed form:
///
/// Ṽ⁻ = [A(A-1) + (B+1)²] sec²q - (B+1)(2A-1) sec q tan q - (B-½)²,
/// Ṽ⁺ = [A(A-1) + B²] sec²q - B(2A-1) sec q tan q
///      + 2(2A-1)/(2A-1-2B sin q) - 2[(2A-1)² - 4B²]/(2A-1-2B sin q)²
///      - (B-½)².
///
/// Both satisfy Ṽ^± = W̃² ± W̃' pointwise.
pub fn potential_tilde(q: f64, params: &PTParams, sector: Sector) -> Result<f64> {
    check_interior(q)?;
    Ok(potential_tilde_at(&QPoint::new(q)?, params, sector))
}

/// Same closed forms, evaluated through exact wall distances. Diverges
/// toward the walls; callers keep the point interior.
pub fn potential_tilde_at(pt: &QPoint, params: &PTParams, sector: Sector) -> f64 {
    let (a, b) = (params.a, params.b);
    let z = pt.sin_q();
    let wv = pt.one_minus_sin_q() * pt.one_plus_sin_q(); // cos² q
    let shift = (b - 0.5) * (b - 0.5);
    match sector {
        Sector::Minus => {
            let c1 = a * (a - 1.0) + (b + 1.0) * (b + 1.0);
            let c2 = (b + 1.0) * (2.0 * a - 1.0);
            (c1 - c2 * z) / wv - shift
        }
        Sector::Plus => {
            let c1 = a * (a - 1.0) + b * b;
            let c2 = b * (2.0 * a - 1.0);
            let den = 2.0 * a - 1.0 - 2.0 * b * z;
            let d1 = 2.0 * (2.0 * a - 1.0) / den;
            let d2 = 2.0 * ((2.0 * a - 1.0) * (2.0 * a - 1.0) - 4.0 * b * b) / (den * den);
            (c1 - c2 * z) / wv + d1 - d2 - shift
        }
    }
}

/// E_n = (n + A)² - (B - ½)², identical in both sectors.
pub fn energy(n: u32, params: &PTParams) -> f64 {
    let s = f64::from(n) + params.a;
    s * s - (params.b - 0.5) * (params.b - 0.5)
}

/// Wall distance used to probe the sign of the raw closed form when
/// fixing the positive-at-left-wall convention.
const SIGN_PROBE_DISTANCE: f64 = 1e-3;

/// A bound state of one sector, unit-normalized with a deterministic sign.
#[derive(Debug, Clone)]
pub struct StationaryState {
    n: u32,
    sector: Sector,
    params: PTParams,
    /// Constant in front of the weighted-polynomial closed form, including
    /// the 1/(L² norm) factor and the sign that makes the state positive
    /// as q → -π/2⁺.
    prefactor: f64,
}

impl StationaryState {
    pub fn new(n: u32, sector: Sector, params: PTParams, spec: &QuadratureSpec) -> Result<Self> {
        let raw = match sector {
            Sector::Minus => special::norm_const(n, params.classical_index())?,
            Sector::Plus => {
                // fails while B ≈ 0 collapses the rational extension
                special::x1_jacobi_eval(n, params.exceptional_index(), 0.0)?;
                let diff = params.beta() - params.alpha();
                special::norm_const(n, params.classical_index())? / energy(n, &params).sqrt()
                    * 4.0
                    * diff
                    * (params.beta() + f64::from(n))
            }
        };
        let mut state = Self {
            n,
            sector,
            params,
            prefactor: raw,
        };
        let norm_sq = quadrature::integrate_box(
            |pt| {
                let v = state.eigenfunction_at(pt);
                v * v
            },
            spec,
        )?;
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::Domain(format!(
                "eigenfunction norm² = {norm_sq} is not a positive finite number"
            )));
        }
        state.prefactor = raw / norm_sq.sqrt();
        let probe = QPoint::from_left_distance(SIGN_PROBE_DISTANCE).expect("probe inside box");
        if state.eigenfunction_at(&probe) < 0.0 {
            state.prefactor = -state.prefactor;
        }
        Ok(state)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn params(&self) -> &PTParams {
        &self.params
    }

    pub fn energy(&self) -> f64 {
        energy(self.n, &self.params)
    }

    /// Q_n(q); 0 at the walls by continuity, error outside the closed box.
    pub fn eigenfunction(&self, q: f64) -> Result<f64> {
        Ok(self.eigenfunction_at(&QPoint::new(q)?))
    }

    /// dQ_n/dq. At the exact walls the limit is returned when it is zero;
    /// a wall-singularity error is reported when the closed-form limit is
    /// unbounded there (minus sector with α < 3/2 at the right wall).
    pub fn eigenfunction_deriv(&self, q: f64) -> Result<f64> {
        let pt = QPoint::new(q)?;
        if pt.one_minus_sin_q() == 0.0 || pt.one_plus_sin_q() == 0.0 {
            if self.deriv_vanishes_at_walls() {
                return Ok(0.0);
            }
            return Err(Error::WallSingularity(format!(
                "dQ/dq is unbounded at the wall q = {q}"
            )));
        }
        Ok(self.eigenfunction_deriv_at(&pt))
    }

    /// d²Q_n/dq², analytic (no finite differencing).
    pub fn eigenfunction_second_deriv(&self, q: f64) -> Result<f64> {
        let pt = QPoint::new(q)?;
        if pt.one_minus_sin_q() == 0.0 || pt.one_plus_sin_q() == 0.0 {
            return Err(Error::WallSingularity(format!(
                "d²Q/dq² is not evaluated at the wall q = {q}"
            )));
        }
        Ok(self.parts_at(&pt).2)
    }

    fn deriv_vanishes_at_walls(&self) -> bool {
        // dQ/dq ~ (wall distance)^{2p-1} where p is the exponent of the
        // weight factor that vanishes at the wall in question. The binding
        // exponents under the parameter constraint are α - 3/2 at the
        // right wall of the minus sector and β - 1/2 at the left wall of
        // the plus sector.
        match self.sector {
            Sector::Minus => self.params.alpha() > 1.5,
            Sector::Plus => self.params.beta() > 0.5,
        }
    }

    /// Q_n at an interior point with exact wall distances.
    pub fn eigenfunction_at(&self, pt: &QPoint) -> f64 {
        self.parts_at(pt).0
    }

    /// dQ_n/dq at an interior point with exact wall distances.
    pub fn eigenfunction_deriv_at(&self, pt: &QPoint) -> f64 {
        self.parts_at(pt).1
    }

    /// (Q, Q', Q'') in one pass. The state factors as
    /// Q(q) = K w^p v^σ S(z) with w = 1-z, v = 1+z, z = sin q; the chain
    /// rule in z gives
    ///   Q'  = cos q · K w^{p-1} v^{σ-1} G₁,
    ///   Q'' = K w^{p-1} v^{σ-1} (G₂ - z G₁),
    /// where G₁ = (σw - pv) S + wv S' and
    /// G₂ = (σ-1) w G₁ - (p-1) v G₁ + wv G₁'.
    fn parts_at(&self, pt: &QPoint) -> (f64, f64, f64) {
        let w = pt.one_minus_sin_q();
        let v = pt.one_plus_sin_q();
        if w == 0.0 || v == 0.0 {
            return (0.0, 0.0, 0.0);
        }
        let z = pt.sin_q();
        let cos_q = pt.cos_q();
        let alpha = self.params.alpha();
        let beta = self.params.beta();

        let (p, sigma, s0, s1, s2) = match self.sector {
            Sector::Minus => {
                let idx = self.params.classical_index();
                let s0 = special::jacobi_eval(self.n, idx, z);
                let s1 = special::jacobi_deriv(self.n, idx, z);
                let s2 = special::jacobi_deriv2(self.n, idx, z);
                (0.5 * (alpha - 0.5), 0.5 * (beta + 1.5), s0, s1, s2)
            }
            Sector::Plus => {
                let idx_x = self.params.exceptional_index();
                let diff = beta - alpha;
                let r0 = special::x1_jacobi_eval(self.n, idx_x, z)
                    .expect("degeneracy checked at construction");
                let r1 = special::x1_jacobi_deriv(self.n, idx_x, z)
                    .expect("degeneracy checked at construction");
                let r2 = special::x1_jacobi_deriv2(self.n, idx_x, z)
                    .expect("degeneracy checked at construction");
                // S = R/D with D = β + α - (β-α) z, so D' = -(β-α)
                let den = beta + alpha - diff * z;
                let s0 = r0 / den;
                let s1 = r1 / den + diff * r0 / (den * den);
                let s2 = r2 / den + 2.0 * diff * r1 / (den * den)
                    + 2.0 * diff * diff * r0 / (den * den * den);
                (0.5 * (alpha + 0.5), 0.5 * (beta + 0.5), s0, s1, s2)
            }
        };

        let pref = self.prefactor * w.powf(p) * v.powf(sigma);
        let pref_d = self.prefactor * w.powf(p - 1.0) * v.powf(sigma - 1.0);
        let g1 = (sigma * w - p * v) * s0 + w * v * s1;
        let g1_d = -(p + sigma) * s0 + (sigma * w - p * v - 2.0 * z) * s1 + w * v * s2;
        let g2 = ((sigma - 1.0) * w - (p - 1.0) * v) * g1 + w * v * g1_d;

        let value = pref * s0;
        let dq = cos_q * pref_d * g1;
        let dqq = pref_d * (g2 - z * g1);
        (value, dq, dqq)
    }
}

/// The intertwiner (d/dq + W̃) applied to a minus-sector state. Up to a
/// global sign this equals √E_n times the matching plus-sector state; it
/// serves as an independent cross-check of the X1 construction.
pub fn susy_intertwine(state: &StationaryState, q: f64) -> Result<f64> {
    if state.sector() != Sector::Minus {
        return Err(Error::InvalidSector(
            "susy_intertwine applies (d/dq + W) to minus-sector states".into(),
        ));
    }
    let w = superpotential(q, state.params())?;
    Ok(state.eigenfunction_deriv(q)? + w * state.eigenfunction(q)?)
}
