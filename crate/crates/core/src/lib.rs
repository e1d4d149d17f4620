//! Traveling-wave bifurcation analysis for a perturbed (1+1)-dimensional
//! dispersive long wave equation.
//!
//! The crate is organised bottom-up:
//!
//! * [`wave_model`] holds the traveling-wave reduction: parameters, the 3D
//!   slow/fast systems, critical and slow manifolds, the reduced planar
//!   vector field and its first integral.
//! * [`bifurcation`] finds and classifies equilibria and parameter regimes.
//! * [`closed_waves`] evaluates the closed-form solitary and kink profiles
//!   together with residual oracles.
//! * [`melnikov`] computes the Melnikov integrals `I(κ)`, `J(κ)` in closed
//!   form and by quadrature, and the associated wave speeds.
//! * [`dynamics_sim`] integrates the perturbed systems and measures the
//!   splitting of stable and unstable manifolds.
//!
//! [`ode`] and [`quadrature`] are the numerical building blocks.

pub mod bifurcation;
pub mod closed_waves;
pub mod dynamics_sim;
mod error;
pub mod melnikov;
pub mod ode;
mod poly;
pub mod quadrature;
pub mod wave_model;

pub use bifurcation::{
    classify_regime, find_equilibria, kappa_regime, turning_points, Equilibrium, EquilibriumKind,
    KappaRegime, Regime, RegimeTag, TurningPoints,
};
pub use closed_waves::{Branch, WaveKind, WaveProfile};
pub use dynamics_sim::{IntegratorConfig, Method, SplittingReport, TerminalEvent, Trajectory};
pub use error::{Error, Result};
pub use melnikov::{EvalMethod, MelnikovResult, RadicalBasis};
pub use wave_model::{Params, PhasePoint, PhysicalWaveSample, SlowPoint};

/// `1 - √3/3`, right end of the bright-solitary interval.
pub const KAPPA_BRIGHT_MAX: f64 = 1.0 - FRAC_1_SQRT_3;
/// `1 + √3/3`, left end of the dark-solitary interval.
pub const KAPPA_DARK_MIN: f64 = 1.0 + FRAC_1_SQRT_3;
/// `√3/3`, the fold value of the integration constant `G`.
pub const G_FOLD: f64 = FRAC_1_SQRT_3;

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;
