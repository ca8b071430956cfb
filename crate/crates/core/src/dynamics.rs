//! Moving-boundary machinery: wall laws L(t), the coordinate map onto the
//! fixed box, accumulated phase integrals, time-dependent potentials
//! V^±(x, t), and the wavefunctions ψ_n^±(x, t).
//!
//! The construction separates variables through
//! q = π (x - L/2) / L and a gauge phase, reducing the problem on
//! [0, L(t)] to the fixed-boundary pair of the `stationary` module. The
//! gauge freedom is fixed by g L₁² = 1 and g₀ ≡ 0, with the additive
//! constant of the effective potential scaled by π²/L²(t) along with the
//! rest of it; this is the combination under which ψ solves the full
//! time-dependent equation exactly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};
use crate::stationary::{PTParams, Sector, StationaryState};

/// Complex value of a wavefunction sample.
pub type ComplexAmplitude = Complex64;

/// Wall position L, and its first and second time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryState {
    pub l: f64,
    pub l_dot: f64,
    pub l_ddot: f64,
}

/// Prescribed wall laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryProfile {
    /// L(t) = π (2 + sin t).
    Sinusoidal,
    /// L(t) = A₁ π / sqrt(1 + B₁ cos ωt); needs |B₁| < 1, A₁ > 0, ω > 0.
    InverseSqrtCosine { a1: f64, b1: f64, omega: f64 },
    /// L(t) = L₀, a static box.
    Fixed { l0: f64 },
}

impl BoundaryProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BoundaryProfile::Sinusoidal => Ok(()),
            BoundaryProfile::InverseSqrtCosine { a1, b1, omega } => {
                if !(a1 > 0.0) || !a1.is_finite() {
                    return Err(Error::InvalidProfile(format!("A1 must be positive, got {a1}")));
                }
                if !(b1.abs() < 1.0) {
                    return Err(Error::InvalidProfile(format!(
                        "|B1| must be below 1 so L(t) stays finite and positive, got {b1}"
                    )));
                }
                if !(omega > 0.0) || !omega.is_finite() {
                    return Err(Error::InvalidProfile(format!(
                        "omega must be positive, got {omega}"
                    )));
                }
                Ok(())
            }
            BoundaryProfile::Fixed { l0 } => {
                if !(l0 > 0.0) || !l0.is_finite() {
                    return Err(Error::InvalidProfile(format!("L0 must be positive, got {l0}")));
                }
                Ok(())
            }
        }
    }
}

/// Analytic L, L̇, L̈ at time t; no numerical differentiation anywhere.
pub fn boundary_eval(profile: &BoundaryProfile, t: f64) -> Result<BoundaryState> {
    profile.validate()?;
    Ok(match *profile {
        BoundaryProfile::Sinusoidal => BoundaryState {
            l: PI * (2.0 + t.sin()),
            l_dot: PI * t.cos(),
            l_ddot: -PI * t.sin(),
        },
        BoundaryProfile::InverseSqrtCosine { a1, b1, omega } => {
            let u = 1.0 + b1 * (omega * t).cos();
            let su = u.sqrt();
            let (s, c) = (omega * t).sin_cos();
            BoundaryState {
                l: a1 * PI / su,
                l_dot: 0.5 * a1 * PI * b1 * omega * s / (u * su),
                l_ddot: 0.5 * a1 * PI * b1 * omega * omega
                    * (c / (u * su) + 1.5 * b1 * s * s / (u * u * su)),
            }
        }
        BoundaryProfile::Fixed { l0 } => BoundaryState {
            l: l0,
            l_dot: 0.0,
            l_ddot: 0.0,
        },
    })
}


/// π (x - L/2) / L for a validated in-box x, clamped so rounding cannot
/// push the result past the box ends.
fn q_of(x: f64, l: f64) -> f64 {
    (PI * ((x - 0.5 * l) / l)).clamp(-0.5 * PI, 0.5 * PI)
}

/// q = π (x - L(t)/2) / L(t), mapping [0, L(t)] onto [-π/2, π/2].
pub fn coordinate_map(x: f64, t: f64, profile: &BoundaryProfile) -> Result<f64> {
    let l = boundary_eval(profile, t)?.l;
    if !(0.0..=l).contains(&x) {
        return Err(Error::OutOfBox(format!("x = {x} outside [0, {l}] at t = {t}")));
    }
    Ok(q_of(x, l))
}

/// The two accumulated integrals entering the phase:
/// τ(t) = ∫₀ᵗ π²/L²(s) ds and ∫₀ᵗ L̇²(s) ds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accumulated {
    pub tau: f64,
    pub ldot_sq: f64,
}

/// Accumulated integrals from 0 to t (t ≥ 0). τ is evaluated from its
/// analytic antiderivative for the inverse-sqrt-cosine law; everything
/// else goes through the quadrature module.
pub fn accumulate(profile: &BoundaryProfile, t: f64, spec: &QuadratureSpec) -> Result<Accumulated> {
    profile.validate()?;
    if t < 0.0 {
        return Err(Error::Domain(format!("accumulate requires t >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(Accumulated { tau: 0.0, ldot_sq: 0.0 });
    }
    Ok(match *profile {
        BoundaryProfile::Fixed { l0 } => Accumulated {
            tau: t * PI * PI / (l0 * l0),
            ldot_sq: 0.0,
        },
        BoundaryProfile::InverseSqrtCosine { a1, b1, omega } => {
            // π²/L² = (1 + B₁ cos ωs)/A₁² integrates in closed form
            let tau = (t + b1 / omega * (omega * t).sin()) / (a1 * a1);
            let ldot_sq = quadrature::integrate(
                |s| {
                    let d = boundary_eval(profile, s).expect("profile validated").l_dot;
                    d * d
                },
                0.0,
                t,
                spec,
            )?;
            Accumulated { tau, ldot_sq }
        }
        BoundaryProfile::Sinusoidal => {
            let tau = quadrature::integrate(
                |s| {
                    let l = boundary_eval(profile, s).expect("profile validated").l;
                    PI * PI / (l * l)
                },
                0.0,
                t,
                spec,
            )?;
            let ldot_sq = quadrature::integrate(
                |s| {
                    let d = boundary_eval(profile, s).expect("profile validated").l_dot;
                    d * d
                },
                0.0,
                t,
                spec,
            )?;
            Accumulated { tau, ldot_sq }
        }
    })
}

/// Accumulated integrals along a strictly increasing time grid, built
/// segment by segment so a sweep costs one integration pass in total.
#[derive(Debug, Clone)]
pub struct AccumulatedSweep {
    times: Vec<f64>,
    values: Vec<Accumulated>,
}

impl AccumulatedSweep {
    pub fn new(profile: &BoundaryProfile, times: &[f64], spec: &QuadratureSpec) -> Result<Self> {
        profile.validate()?;
        let mut values = Vec::with_capacity(times.len());
        let mut prev_t = 0.0;
        let mut acc = Accumulated { tau: 0.0, ldot_sq: 0.0 };
        for &t in times {
            if t < prev_t {
                return Err(Error::Domain(
                    "sweep times must be nonnegative and nondecreasing".into(),
                ));
            }
            if t > prev_t {
                let seg = segment(profile, prev_t, t, spec)?;
                acc = Accumulated {
                    tau: acc.tau + seg.tau,
                    ldot_sq: acc.ldot_sq + seg.ldot_sq,
                };
            }
            values.push(acc);
            prev_t = t;
        }
        Ok(Self {
            times: times.to_vec(),
            values,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn get(&self, i: usize) -> Accumulated {
        self.values[i]
    }
}

fn segment(
    profile: &BoundaryProfile,
    t0: f64,
    t1: f64,
    spec: &QuadratureSpec,
) -> Result<Accumulated> {
    Ok(match *profile {
        BoundaryProfile::Fixed { l0 } => Accumulated {
            tau: (t1 - t0) * PI * PI / (l0 * l0),
            ldot_sq: 0.0,
        },
        BoundaryProfile::InverseSqrtCosine { a1, b1, omega } => Accumulated {
            tau: ((t1 - t0) + b1 / omega * ((omega * t1).sin() - (omega * t0).sin())) / (a1 * a1),
            ldot_sq: quadrature::integrate(
                |s| {
                    let d = boundary_eval(profile, s).expect("profile validated").l_dot;
                    d * d
                },
                t0,
                t1,
                spec,
            )?,
        },
        BoundaryProfile::Sinusoidal => Accumulated {
            tau: quadrature::integrate(
                |s| {
                    let l = boundary_eval(profile, s).expect("profile validated").l;
                    PI * PI / (l * l)
                },
                t0,
                t1,
                spec,
            )?,
            ldot_sq: quadrature::integrate(
                |s| {
                    let d = boundary_eval(profile, s).expect("profile validated").l_dot;
                    d * d
                },
                t0,
                t1,
                spec,
            )?,
        },
    })
}

/// Coefficients of the separation transform at time t:
/// Φ(q, t) = a q²/2 + b q + c with a = (i/2) L₁ L̇₁, b = (i/2) L₁ α̇,
/// Re c = -½ ln L₁, plus the accumulated integrals. L₁ = L/π, α = L/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c_real: f64,
    pub tau: f64,
    pub ldot_sq_integral: f64,
}

pub fn transform_coefficients(
    profile: &BoundaryProfile,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<TransformCoefficients> {
    let bs = boundary_eval(profile, t)?;
    let acc = accumulate(profile, t, spec)?;
    let l1 = bs.l / PI;
    let l1_dot = bs.l_dot / PI;
    let alpha_dot = 0.5 * bs.l_dot;
    Ok(TransformCoefficients {
        a: Complex64::new(0.0, 0.5 * l1 * l1_dot),
        b: Complex64::new(0.0, 0.5 * l1 * alpha_dot),
        c_real: -0.5 * l1.ln(),
        tau: acc.tau,
        ldot_sq_integral: acc.ldot_sq,
    })
}

/// Time-dependent potential
/// V(x, t) = (π²/L²) Ṽ(q(x, t)) + (1/16) L L̈ - (1/4) (L̈/L) x²,
/// with the additive constant of Ṽ scaled inside it and g₀ ≡ 0.
pub fn potential_xt(
    x: f64,
    t: f64,
    profile: &BoundaryProfile,
    params: &PTParams,
    sector: Sector,
) -> Result<f64> {
    let bs = boundary_eval(profile, t)?;
    if !(0.0..=bs.l).contains(&x) {
        return Err(Error::OutOfBox(format!(
            "x = {x} outside [0, {}] at t = {t}",
            bs.l
        )));
    }
    if x == 0.0 || x == bs.l {
        return Err(Error::WallSingularity(format!(
            "V(x, t) diverges at the wall x = {x}"
        )));
    }
    let q = q_of(x, bs.l);
    let scale = PI * PI / (bs.l * bs.l);
    let vt = crate::stationary::potential_tilde(q, params, sector)?;
    Ok(scale * vt + bs.l * bs.l_ddot / 16.0 - 0.25 * bs.l_ddot / bs.l * x * x)
}

/// Position- and time-dependent phase
/// F_n(x, t) = (L̇/4L) x² - (1/16) L L̇ + (1/16) ∫₀ᵗ L̇² ds - E_n τ(t).
pub fn phase(
    state: &StationaryState,
    profile: &BoundaryProfile,
    x: f64,
    t: f64,
    acc: &Accumulated,
) -> Result<f64> {
    let bs = boundary_eval(profile, t)?;
    Ok(0.25 * bs.l_dot / bs.l * x * x - bs.l * bs.l_dot / 16.0 + acc.ldot_sq / 16.0
        - state.energy() * acc.tau)
}

/// ψ_n(x, t) = sqrt(π/L) Q_n(q(x, t)) exp(i F_n(x, t)), with Q_n the
/// unit-normalized stationary eigenfunction. Accumulated integrals are
/// taken from `acc` so time sweeps can reuse them.
pub fn wavefunction_at(
    state: &StationaryState,
    profile: &BoundaryProfile,
    x: f64,
    t: f64,
    acc: &Accumulated,
) -> Result<ComplexAmplitude> {
    let bs = boundary_eval(profile, t)?;
    if !(0.0..=bs.l).contains(&x) {
        return Err(Error::OutOfBox(format!(
            "x = {x} outside [0, {}] at t = {t}",
            bs.l
        )));
    }
    let q = q_of(x, bs.l);
    let amp = (PI / bs.l).sqrt() * state.eigenfunction(q)?;
    let f = phase(state, profile, x, t, acc)?;
    Ok(Complex64::from_polar(1.0, f) * amp)
}

/// One-shot form of [`wavefunction_at`] that computes the accumulated
/// integrals itself.
pub fn wavefunction(
    state: &StationaryState,
    profile: &BoundaryProfile,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude> {
    let acc = accumulate(profile, t, spec)?;
    wavefunction_at(state, profile, x, t, &acc)
}

/// Instantaneous probability density ρ_n(x, t) = |ψ_n(x, t)|², evaluated
/// as (π/L) Q_n²(q) since the phase drops out of the modulus.
pub fn density(
    state: &StationaryState,
    profile: &BoundaryProfile,
    x: f64,
    t: f64,
) -> Result<f64> {
    let bs = boundary_eval(profile, t)?;
    if !(0.0..=bs.l).contains(&x) {
        return Err(Error::OutOfBox(format!(
            "x = {x} outside [0, {}] at t = {t}",
            bs.l
        )));
    }
    let q = q_of(x, bs.l);
    let v = state.eigenfunction(q)?;
    Ok(PI / bs.l * v * v)
}
