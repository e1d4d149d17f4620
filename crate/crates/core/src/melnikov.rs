//! Melnikov integrals and persistence wave speeds.
//!
//! Along the homoclinic loop `Γ(κ)` of the unperturbed system
//!
//! ```text
//!   I(κ) = ∮ y² dζ,    J(κ) = ∮ (4.5z² - 9z + 3) y² dζ,    M_hom(c, κ) = I/c² + J,
//! ```
//!
//! and the loop survives the perturbation near `c(κ) = √(-I/J)`. On the
//! heteroclinic cycle `M_het(c) = -2√3(3c² - 5)/(15c²)`, vanishing at
//! `c* = √15/3`.
//!
//! The closed forms reduce `I` and `J` to antiderivatives of `xᵏ√R` with
//! `R = (x - x₊)(x - x₋)`, `x = z - κ`. The logarithm in `∫dx/√R` is taken
//! as `ln|2√(c₁R) + 2c₁x + b|`, which is a valid antiderivative on both sides
//! of the roots of `R`. Quadrature of the defining line integrals is the
//! independent check.

use crate::bifurcation::{require_solitary, turning_points, KappaRegime};
use crate::error::{Error, Result};
use crate::poly::cubic_prime;
use crate::quadrature::{self, AdaptiveOptions, GaussLegendre};
use crate::{KAPPA_BRIGHT_MAX, KAPPA_DARK_MIN};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const LN_2: f64 = std::f64::consts::LN_2;
const RADICAND_TOL: f64 = 1e-12;
/// Relative agreement required between closed form and quadrature.
pub const CLOSED_QUAD_RTOL: f64 = 1e-8;
/// Relative agreement required between closed-form and quadrature speeds.
pub const SPEED_RTOL: f64 = 1e-7;
/// Distance from the fold values `1 ± √3/3` below which speeds use quadrature.
pub const NEAR_FOLD: f64 = 1e-3;

/// `R(x) = a + b x + c₁ x²` and its discriminant-like `Δ = 4ac₁ - b²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadicalBasis {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub delta: f64,
}

impl RadicalBasis {
    pub fn new(a: f64, b: f64, c1: f64) -> Self {
        Self { a, b, c1, delta: 4.0 * a * c1 - b * b }
    }

    /// `R(x) = (x - r1)(x - r2)`.
    pub fn from_roots(r1: f64, r2: f64) -> Self {
        Self::new(r1 * r2, -(r1 + r2), 1.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.a + x * (self.b + x * self.c1)
    }
}

/// `[∫dx/√R, ∫√R dx, ∫x√R dx, ∫x²√R dx, ∫x³√R dx]` evaluated at `x`.
pub fn antiderivative_table(basis: &RadicalBasis, x: f64) -> Result<[f64; 5]> {
    let RadicalBasis { a, b, c1, delta } = *basis;
    if !(c1 > 0.0) {
        return Err(Error::InvalidParameter(format!("leading coefficient must be positive, got {c1}")));
    }
    let r = basis.eval(x);
    if r < -RADICAND_TOL {
        return Err(Error::OutsideRadicalDomain { x, value: r });
    }
    let r = r.max(0.0);
    let sr = r.sqrt();
    let r32 = r * sr;
    let lin = 2.0 * c1 * x + b;

    let f0 = (2.0 * (c1 * r).sqrt() + lin).abs().ln() / c1.sqrt();
    let f1 = lin * sr / (4.0 * c1) + delta / (8.0 * c1) * f0;
    let f2 = r32 / (3.0 * c1) - lin * b * sr / (8.0 * c1 * c1) - b * delta / (16.0 * c1 * c1) * f0;
    let f3 = (x / (4.0 * c1) - 5.0 * b / (24.0 * c1 * c1)) * r32
        + (5.0 * b * b / (16.0 * c1 * c1) - a / (4.0 * c1)) * f1;
    let f4 = (x * x / (5.0 * c1) - 7.0 * b * x / (40.0 * c1 * c1) + 7.0 * b * b / (48.0 * c1.powi(3))
        - 2.0 * a / (15.0 * c1 * c1))
        * r32
        - (7.0 * b.powi(3) / (32.0 * c1.powi(3)) - 3.0 * a * b / (8.0 * c1 * c1)) * f1;
    Ok([f0, f1, f2, f3, f4])
}

/// Definite integrals of the five table entries over `[lo, hi]`.
pub fn definite_table(basis: &RadicalBasis, lo: f64, hi: f64) -> Result<[f64; 5]> {
    let upper = antiderivative_table(basis, hi)?;
    let lower = antiderivative_table(basis, lo)?;
    Ok(std::array::from_fn(|k| upper[k] - lower[k]))
}

/// Loop geometry in the shifted variable `x = z - κ`.
struct Loop {
    kappa: f64,
    /// turning point reached by the loop
    turn: f64,
    /// the other root of `R`
    other: f64,
}

impl Loop {
    fn new(kappa: f64) -> Result<Self> {
        let regime = require_solitary(kappa)?;
        let tp = turning_points(kappa)?;
        let (turn, other) = match regime {
            KappaRegime::DarkSolitary => (tp.z_plus, tp.z_minus),
            _ => (tp.z_minus, tp.z_plus),
        };
        Ok(Self { kappa, turn, other })
    }

    /// `∫_{x_t}^{0} x^k √R dx` for k = 1, 2, 3.
    fn moments(&self) -> Result<[f64; 3]> {
        let basis = RadicalBasis::from_roots(self.turn - self.kappa, self.other - self.kappa);
        let t = definite_table(&basis, self.turn - self.kappa, 0.0)?;
        Ok([t[2], t[3], t[4]])
    }
}

/// `I(κ)` from the antiderivative table.
pub fn i_closed(kappa: f64) -> Result<f64> {
    let m = Loop::new(kappa)?.moments()?;
    Ok(-SQRT_3 * m[0])
}

/// `J(κ)` from the antiderivative table.
pub fn j_closed(kappa: f64) -> Result<f64> {
    let lp = Loop::new(kappa)?;
    let m = lp.moments()?;
    // (4.5z² - 9z + 3)(κ - z) with z = κ + x
    let k = kappa;
    Ok(-SQRT_3 * (4.5 * m[2] + (9.0 * k - 9.0) * m[1] + cubic_prime(k) * m[0]))
}

/// Fully expanded closed forms for `I(κ)` and `J(κ)`, valid on both solitary
/// intervals with every logarithm taken of an absolute value.
pub fn expanded_closed(kappa: f64) -> Result<(f64, f64)> {
    require_solitary(kappa)?;
    let k = kappa;
    let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
    let s = (6.0 * k2 - 12.0 * k + 4.0).sqrt();
    let ls = (s + 2.0 * k - 2.0).abs().ln();
    let lm = (2.0 * k - k2).abs().ln();
    let q = 2f64.sqrt() * (3.0 * k2 - 6.0 * k + 2.0).powi(3).sqrt();

    let x = 6.0 * LN_2 * k3 + 6.0 * k3 * ls - 18.0 * LN_2 * k2 - 18.0 * k2 * ls + 12.0 * LN_2 * k
        + 12.0 * k * ls
        + 2.0 * s;
    let y = k2 * lm + 3.0 * LN_2 * k2 - 3.0 * k * lm - 9.0 * LN_2 * k + 2.0 * lm + 6.0 * LN_2;
    let z = 27.0 * k4 * s + 15.0 * k3 * lm - 198.0 * k3 * s - 30.0 * k3 * ls + 15.0 * LN_2 * k3
        - 45.0 * k2 * lm
        + 90.0 * k2 * ls
        + 30.0 * k * q
        + 294.0 * k2 * s
        - 45.0 * LN_2 * k2
        + 30.0 * k * lm
        - 60.0 * k * ls
        + 10.0 * q
        - 72.0 * k * s
        + 30.0 * LN_2 * k
        - 18.0 * s;
    Ok((SQRT_3 / 3.0 * x - SQRT_3 * k * y, -SQRT_3 / 5.0 * z))
}

/// Quadrature value with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue {
    pub value: f64,
    pub error: f64,
}

/// `2∫|y| weight(z) dz` over the loop after `z = z_t + (κ - z_t) sin²θ`.
fn loop_quad<W: Fn(f64) -> f64>(kappa: f64, weight: W) -> Result<QuadValue> {
    let lp = Loop::new(kappa)?;
    let span = lp.kappa - lp.turn;
    let len = span.abs();
    let gap = lp.turn - lp.other;
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let z = lp.turn + span * s * s;
        // |y| = (√3/2)|κ-z|√|(z-z_t)(z-z_o)|, |dz/dθ| = 2|L| sinθ cosθ
        let far = (gap + span * s * s).abs();
        let abs_y = 0.5 * SQRT_3 * len * c * c * s * (len * far).sqrt();
        2.0 * weight(z) * abs_y * 2.0 * len * s * c
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let coarse = GaussLegendre::new(20).integrate(integrand, 0.0, half_pi);
    let abs_tol = (1e-10 * coarse.abs()).clamp(1e-300, 1e-11);
    let opts = AdaptiveOptions { abs_tol, ..Default::default() };
    let est = quadrature::integrate(integrand, 0.0, half_pi, &opts)?;
    Ok(QuadValue { value: est.value, error: est.error })
}

pub fn i_quad(kappa: f64) -> Result<QuadValue> {
    loop_quad(kappa, |_| 1.0)
}

pub fn j_quad(kappa: f64) -> Result<QuadValue> {
    loop_quad(kappa, cubic_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    ClosedForm,
    Quadrature,
}

impl std::fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ClosedForm => "closed",
            Self::Quadrature => "quad",
        })
    }
}

/// `I`, `J` and the Melnikov value `M = I/c² + J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelnikovResult {
    pub i: f64,
    pub j: f64,
    pub m: f64,
    pub method: EvalMethod,
    /// Quadrature error bound on `m`; zero for closed forms.
    pub err_estimate: f64,
}

/// `(I, J, error)` with the requested method.
pub fn integrals(kappa: f64, method: EvalMethod) -> Result<(f64, f64, f64, f64)> {
    match method {
        EvalMethod::ClosedForm => Ok((i_closed(kappa)?, j_closed(kappa)?, 0.0, 0.0)),
        EvalMethod::Quadrature => {
            let (i, j) = (i_quad(kappa)?, j_quad(kappa)?);
            Ok((i.value, j.value, i.error, j.error))
        }
    }
}

pub fn m_hom(c: f64, kappa: f64, method: EvalMethod) -> Result<MelnikovResult> {
    check_speed(c)?;
    let (i, j, ei, ej) = integrals(kappa, method)?;
    Ok(MelnikovResult { i, j, m: i / (c * c) + j, method, err_estimate: ei / (c * c) + ej })
}

/// `∂M_hom/∂c = -2I/c³`.
pub fn dm_hom_dc(c: f64, kappa: f64) -> Result<f64> {
    check_speed(c)?;
    Ok(-2.0 * i_closed(kappa)? / c.powi(3))
}

/// Wave speed with provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedReport {
    pub c: f64,
    pub method: EvalMethod,
    /// Closed-form speed, when it could be evaluated.
    pub closed: Option<f64>,
    /// Quadrature speed.
    pub quad: f64,
    /// Whether the closed form agreed with quadrature to [`SPEED_RTOL`].
    pub closed_validated: bool,
}

/// `c(κ) = √(-I/J)`, the unique positive zero of `c ↦ M_hom(c, κ)`.
pub fn wave_speed_hom(kappa: f64) -> Result<f64> {
    wave_speed_hom_report(kappa).map(|r| r.c)
}

pub fn wave_speed_hom_report(kappa: f64) -> Result<SpeedReport> {
    require_solitary(kappa)?;
    let quad = (-i_quad(kappa)?.value / j_quad(kappa)?.value).sqrt();
    let near_fold = (kappa - KAPPA_BRIGHT_MAX).abs() < NEAR_FOLD || (kappa - KAPPA_DARK_MIN).abs() < NEAR_FOLD;
    if near_fold {
        log::warn!("kappa = {kappa} is within {NEAR_FOLD} of a fold; I and J are both small, using quadrature");
        return Ok(SpeedReport { c: quad, method: EvalMethod::Quadrature, closed: None, quad, closed_validated: false });
    }
    let closed = (|| -> Result<f64> { Ok((-i_closed(kappa)? / j_closed(kappa)?).sqrt()) })().ok();
    match closed {
        Some(c) if c.is_finite() && ((c - quad) / quad).abs() <= SPEED_RTOL => Ok(SpeedReport {
            c,
            method: EvalMethod::ClosedForm,
            closed,
            quad,
            closed_validated: true,
        }),
        _ => {
            log::warn!("closed-form speed {closed:?} disagrees with quadrature {quad} at kappa = {kappa}");
            Ok(SpeedReport { c: quad, method: EvalMethod::Quadrature, closed, quad, closed_validated: false })
        }
    }
}

/// Heteroclinic Melnikov function. `I` and `J` are the cycle integrals
/// `2√3/3` and `-2√3/5`.
pub fn m_het(c: f64) -> Result<MelnikovResult> {
    check_speed(c)?;
    let i = 2.0 * SQRT_3 / 3.0;
    let j = -2.0 * SQRT_3 / 5.0;
    let m = -2.0 * SQRT_3 * (3.0 * c * c - 5.0) / (15.0 * c * c);
    Ok(MelnikovResult { i, j, m, method: EvalMethod::ClosedForm, err_estimate: 0.0 })
}

/// `M_het` by Gauss–Legendre quadrature of `(√3/2)(P'(z) + 1/c²) z (2 - z)` on `[0, 2]`.
pub fn m_het_quad(c: f64) -> Result<MelnikovResult> {
    check_speed(c)?;
    let rule = GaussLegendre::new(8);
    let i = rule.integrate(|z| 0.5 * SQRT_3 * z * (2.0 - z), 0.0, 2.0);
    let j = rule.integrate(|z| 0.5 * SQRT_3 * cubic_prime(z) * z * (2.0 - z), 0.0, 2.0);
    Ok(MelnikovResult { i, j, m: i / (c * c) + j, method: EvalMethod::Quadrature, err_estimate: 0.0 })
}

pub fn dm_het_dc(c: f64) -> Result<f64> {
    check_speed(c)?;
    Ok(-4.0 * SQRT_3 / (5.0 * c) + 4.0 * SQRT_3 * (3.0 * c * c - 5.0) / (15.0 * c.powi(3)))
}

/// `c* = √15/3`.
pub fn wave_speed_het() -> f64 {
    let c = 15f64.sqrt() / 3.0;
    debug_assert!(dm_het_dc(c).map(|d| d != 0.0).unwrap_or(false));
    c
}

fn check_speed(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("wave speed must be positive, got {c}")))
    }
}
