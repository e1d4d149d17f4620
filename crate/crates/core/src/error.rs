use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular limit; use reduced_rhs or fast_rhs")]
    SingularLimit,

    #[error("turning points complex for kappa = {0}")]
    TurningPointsComplex(f64),

    #[error("kappa = {kappa} outside {expected}")]
    KappaOutOfRange { kappa: f64, expected: &'static str },

    #[error("off-orbit abscissa z = {z} (radicand {radicand:e})")]
    OffOrbit { z: f64, radicand: f64 },

    #[error("outside radical domain: R({x}) = {value:e}")]
    OutsideRadicalDomain { x: f64, value: f64 },

    #[error("not a saddle: F'({z}) = {fprime}")]
    NotASaddle { z: f64, fprime: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error bound {bound:e}")]
    QuadratureNotConverged { estimate: f64, bound: f64 },

    #[error("integration blew up at zeta = {zeta}")]
    Blowup { zeta: f64 },

    #[error("integration exceeded {0} steps")]
    MaxSteps(usize),

    #[error("no section crossing")]
    NoSectionCrossing,

    #[error("no sign change in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. }
                | Error::Blowup { .. }
                | Error::MaxSteps(_)
                | Error::NoSectionCrossing
                | Error::NoSignChange { .. }
        )
    }
}
