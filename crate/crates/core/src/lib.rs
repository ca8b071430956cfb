//! Exactly solvable quantum mechanics in a box with one oscillating wall:
//! the trigonometric Pöschl-Teller potential and its rational extension
//! (solved by X1 Jacobi exceptional orthogonal polynomials), their shared
//! spectrum, time-dependent wavefunctions, densities, spreads, Heisenberg
//! products, and average energies.
//!
//! Module layout follows the pipeline: `special` (polynomials and gamma
//! machinery) → `stationary` (the fixed-box SUSY pair) → `quadrature`
//! (deterministic integration and moments) → `dynamics` (moving-boundary
//! transform) → `observables` (expectation values).

pub mod dynamics;
mod error;
pub mod observables;
pub mod quadrature;
pub mod special;
pub mod stationary;

pub use error::{Error, Result};

pub use dynamics::{
    accumulate, boundary_eval, coordinate_map, density, phase, potential_xt,
    transform_coefficients, wavefunction, wavefunction_at, Accumulated, AccumulatedSweep,
    BoundaryProfile, BoundaryState, ComplexAmplitude, TransformCoefficients,
};
pub use observables::{Moments, ObservableRecord, StateObservables};
pub use quadrature::{integrate, integrate_box, moment, moment_kinetic, QPoint, QuadratureSpec};
pub use special::{
    jacobi_deriv, jacobi_eval, log_gamma, norm_const, x1_jacobi_deriv, x1_jacobi_eval, JacobiIndex,
};
pub use stationary::{
    energy, potential_tilde, potential_tilde_at, superpotential, superpotential_deriv,
    susy_intertwine, PTParams, Sector, StationaryState,
};
