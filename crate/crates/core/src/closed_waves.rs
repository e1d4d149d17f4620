//! Closed-form orbits and wave profiles of the unperturbed system.
//!
//! Solitary profiles are written as `z(ζ) = κ + Φ(ζ)` with
//!
//! ```text
//!   Φ(ζ) = -2A / (σ·2r·cosh(βζ) + 4κ - 4),
//!   A = 6κ² - 12κ + 4,  r = √(4κ - 2κ²),  β = ½√(18κ² - 36κ + 12),
//! ```
//!
//! `σ = +1` for the dark wave and `σ = -1` for the bright wave. `Φ` is the
//! deviation from the background state; only `κ + Φ` lies on the homoclinic
//! level set. The kink is `z(ζ) = 2 / (1 + e^{±√3ζ})`, the solution of
//! `dz/dζ = ±(√3/2) z (z - 2)` through `z(0) = 1`.
//!
//! Derivatives along profiles are exact, so the residual oracles test the
//! formulas themselves.

use crate::bifurcation::{kappa_regime, turning_points, KappaRegime};
use crate::error::{Error, Result};
use crate::poly::{cubic, cubic_prime};
use crate::wave_model::{first_integral, homoclinic_level, PhasePoint};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
/// Beyond this `cosh`/`exp` argument profiles return their saddle limit.
const OVERFLOW_ARG: f64 = 700.0;
/// Radicands down to this negative value are treated as round-off.
const RADICAND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveKind {
    DarkSolitary,
    BrightSolitary,
    Kink,
    AntiKink,
}

impl std::fmt::Display for WaveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::DarkSolitary => "dark",
            Self::BrightSolitary => "bright",
            Self::Kink => "kink",
            Self::AntiKink => "antikink",
        })
    }
}

impl std::str::FromStr for WaveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dark" => Ok(Self::DarkSolitary),
            "bright" => Ok(Self::BrightSolitary),
            "kink" => Ok(Self::Kink),
            "antikink" | "anti-kink" => Ok(Self::AntiKink),
            other => Err(format!("unknown wave kind '{other}'")),
        }
    }
}

/// Sign selecting the upper (`Plus`) or lower (`Minus`) branch of a level set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// One point of a closed-form profile with its exact derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub zeta: f64,
    pub z: f64,
    /// `dz/dζ`
    pub y: f64,
    /// `d²z/dζ²`
    pub dy: f64,
}

/// Sampled closed-form profile.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveProfile {
    pub kind: WaveKind,
    pub kappa: f64,
    /// `(ζ, z, y)` triples in grid order.
    pub samples: Vec<(f64, f64, f64)>,
    pub meta: ProfileMeta,
}

/// Closed-form constants used to build a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileMeta {
    /// Decay rate of the tails (`β` for solitary waves, `√3` for kinks).
    pub rate: f64,
    /// Value at `ζ = 0`.
    pub z0: f64,
    /// Saddle limit at `ζ → ±∞` (kinks: the limit at `+∞`).
    pub limit: f64,
}

/// `y` on the homoclinic level set through `(κ, 0)`:
/// `± √(¾ (z-κ)² (z-z₊)(z-z₋))`.
pub fn homoclinic_y(z: f64, kappa: f64, branch: Branch) -> Result<f64> {
    let tp = turning_points(kappa)?;
    let d = z - kappa;
    let radicand = 0.75 * d * d * (z - tp.z_plus) * (z - tp.z_minus);
    if radicand < -RADICAND_TOL {
        return Err(Error::OffOrbit { z, radicand });
    }
    Ok(branch.sign() * radicand.max(0.0).sqrt())
}

/// `y` on the heteroclinic level set: `± (√3/2) z (z - 2)`.
pub fn heteroclinic_y(z: f64, branch: Branch) -> f64 {
    branch.sign() * 0.5 * SQRT_3 * z * (z - 2.0)
}

struct Solitary {
    kappa: f64,
    sigma: f64,
    a: f64,
    r: f64,
    beta: f64,
}

impl Solitary {
    fn new(kappa: f64, sigma: f64) -> Self {
        let a = 6.0 * kappa * kappa - 12.0 * kappa + 4.0;
        let r = (4.0 * kappa - 2.0 * kappa * kappa).sqrt();
        let beta = 0.5 * (18.0 * kappa * kappa - 36.0 * kappa + 12.0).sqrt();
        Self { kappa, sigma, a, r, beta }
    }

    fn eval(&self, zeta: f64) -> ProfilePoint {
        let arg = self.beta * zeta;
        if arg.abs() > OVERFLOW_ARG {
            return ProfilePoint { zeta, z: self.kappa, y: 0.0, dy: 0.0 };
        }
        let (ch, sh) = (arg.cosh(), arg.sinh());
        let d = self.sigma * 2.0 * self.r * ch + 4.0 * self.kappa - 4.0;
        let d1 = self.sigma * 2.0 * self.r * self.beta * sh;
        let d2 = self.sigma * 2.0 * self.r * self.beta * self.beta * ch;
        let phi = -2.0 * self.a / d;
        // Φ' = 2A D'/D², Φ'' = 2A/D · (D''/D - 2(D'/D)²)
        let q1 = d1 / d;
        let y = 2.0 * self.a / d * q1;
        let dy = 2.0 * self.a / d * (d2 / d - 2.0 * q1 * q1);
        ProfilePoint { zeta, z: self.kappa + phi, y, dy }
    }
}

fn require(kappa: f64, want: KappaRegime, expected: &'static str) -> Result<()> {
    if kappa_regime(kappa) == want {
        Ok(())
    } else {
        Err(Error::KappaOutOfRange { kappa, expected })
    }
}

/// Dark solitary profile point, `1+√3/3 < κ < 2`.
pub fn dark_point(zeta: f64, kappa: f64) -> Result<ProfilePoint> {
    require(kappa, KappaRegime::DarkSolitary, "(1+√3/3, 2)")?;
    Ok(Solitary::new(kappa, 1.0).eval(zeta))
}

/// Bright solitary profile point, `0 < κ < 1-√3/3`.
pub fn bright_point(zeta: f64, kappa: f64) -> Result<ProfilePoint> {
    require(kappa, KappaRegime::BrightSolitary, "(0, 1-√3/3)")?;
    Ok(Solitary::new(kappa, -1.0).eval(zeta))
}

/// Kink (`sign = +1`, from 2 down to 0) or anti-kink (`sign = -1`) point.
pub fn kink_point(zeta: f64, sign: f64) -> ProfilePoint {
    let s = if sign < 0.0 { -1.0 } else { 1.0 };
    let arg = s * SQRT_3 * zeta;
    let z = if arg > OVERFLOW_ARG {
        0.0
    } else if arg < -OVERFLOW_ARG {
        2.0
    } else if arg > 0.0 {
        let e = (-arg).exp();
        2.0 * e / (1.0 + e)
    } else {
        2.0 / (1.0 + arg.exp())
    };
    let y = s * 0.5 * SQRT_3 * z * (z - 2.0);
    let dy = s * 0.5 * SQRT_3 * (2.0 * z - 2.0) * y;
    ProfilePoint { zeta, z, y, dy }
}

pub fn dark_profile(zeta: f64, kappa: f64) -> Result<f64> {
    dark_point(zeta, kappa).map(|p| p.z)
}

pub fn bright_profile(zeta: f64, kappa: f64) -> Result<f64> {
    bright_point(zeta, kappa).map(|p| p.z)
}

pub fn kink_profile(zeta: f64, sign: f64) -> f64 {
    kink_point(zeta, sign).z
}

/// Profile point of any kind. `kappa` is ignored for kinks.
pub fn profile_point(kind: WaveKind, kappa: f64, zeta: f64) -> Result<ProfilePoint> {
    match kind {
        WaveKind::DarkSolitary => dark_point(zeta, kappa),
        WaveKind::BrightSolitary => bright_point(zeta, kappa),
        WaveKind::Kink => Ok(kink_point(zeta, 1.0)),
        WaveKind::AntiKink => Ok(kink_point(zeta, -1.0)),
    }
}

/// Saddle parameter whose level set the profile lies on.
fn level_kappa(kind: WaveKind, kappa: f64) -> f64 {
    match kind {
        WaveKind::Kink | WaveKind::AntiKink => 0.0,
        _ => kappa,
    }
}

/// `max |z'' - (P(z) - P(κ))|` over the grid.
pub fn ode_residual(kind: WaveKind, kappa: f64, zeta_grid: &[f64]) -> Result<f64> {
    let k = level_kappa(kind, kappa);
    let pk = cubic(k);
    zeta_grid.iter().try_fold(0.0f64, |acc, &zeta| {
        let p = profile_point(kind, kappa, zeta)?;
        Ok(acc.max((p.dy - (cubic(p.z) - pk)).abs()))
    })
}

/// `max |H(z, y) - h(κ)|` over the grid; kinks are compared with level 0.
pub fn level_residual(kind: WaveKind, kappa: f64, zeta_grid: &[f64]) -> Result<f64> {
    let k = level_kappa(kind, kappa);
    let level = homoclinic_level(k);
    zeta_grid.iter().try_fold(0.0f64, |acc, &zeta| {
        let p = profile_point(kind, kappa, zeta)?;
        Ok(acc.max((first_integral(PhasePoint::new(p.z, p.y), k) - level).abs()))
    })
}

/// Samples a profile on the given grid.
pub fn sample_profile(kind: WaveKind, kappa: f64, zeta_grid: &[f64]) -> Result<WaveProfile> {
    let samples = zeta_grid
        .iter()
        .map(|&zeta| profile_point(kind, kappa, zeta).map(|p| (p.zeta, p.z, p.y)))
        .collect::<Result<Vec<_>>>()?;
    let meta = match kind {
        WaveKind::DarkSolitary | WaveKind::BrightSolitary => ProfileMeta {
            rate: cubic_prime(kappa).sqrt(),
            z0: profile_point(kind, kappa, 0.0)?.z,
            limit: kappa,
        },
        WaveKind::Kink => ProfileMeta { rate: SQRT_3, z0: 1.0, limit: 0.0 },
        WaveKind::AntiKink => ProfileMeta { rate: SQRT_3, z0: 1.0, limit: 2.0 },
    };
    Ok(WaveProfile { kind, kappa, samples, meta })
}

/// Physical wave `u(x, t) = c·z(c(x - ct))`.
pub fn wave_solution(kind: WaveKind, kappa: f64, c: f64, x: f64, t: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("wave speed must be positive, got {c}")));
    }
    let zeta = c * (x - c * t);
    Ok(c * profile_point(kind, kappa, zeta)?.z)
}

/// `n` evenly spaced points on `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave_model::{physical_wave, Params};
    use proptest::prelude::*;

    /// Independent transcription of the printed dark-wave u-formula, shifted by cκ.
    fn printed_dark_u(kappa: f64, c: f64, x: f64, t: f64) -> f64 {
        let num = 2.0 * (6.0 * kappa * kappa - 12.0 * kappa + 4.0) * c;
        let arg = 0.5 * (18.0 * kappa * kappa - 36.0 * kappa + 12.0).sqrt() * c * (x - c * t);
        let den = 2.0 * arg.cosh() * (-2.0 * kappa * kappa + 4.0 * kappa).sqrt() + 4.0 * kappa - 4.0;
        c * kappa - num / den
    }

    #[test]
    fn homoclinic_y_examples() {
        assert_eq!(homoclinic_y(1.7, 1.7, Branch::Plus).unwrap(), 0.0);
        let zp = turning_points(1.7).unwrap().z_plus;
        assert_eq!(homoclinic_y(zp, 1.7, Branch::Minus).unwrap(), 0.0);
        let y = homoclinic_y(1.5, 1.7, Branch::Plus).unwrap();
        assert!(y > 0.0);
        let h = first_integral(PhasePoint::new(1.5, y), 1.7);
        assert!((h - homoclinic_level(1.7)).abs() < 1e-12);
        assert!(matches!(homoclinic_y(1.0, 1.7, Branch::Plus), Err(Error::OffOrbit { .. })));
    }

    #[test]
    fn heteroclinic_y_examples() {
        assert_eq!(heteroclinic_y(0.0, Branch::Plus), 0.0);
        assert_eq!(heteroclinic_y(2.0, Branch::Minus), 0.0);
        assert!((heteroclinic_y(1.0, Branch::Plus) + SQRT_3 / 2.0).abs() < 1e-15);
        for z in linspace(-1.0, 3.0, 41) {
            let y = heteroclinic_y(z, Branch::Plus);
            assert!(first_integral(PhasePoint::new(z, y), 0.0).abs() < 1e-13);
        }
    }

    #[test]
    fn dark_profile_hits_turning_point() {
        let z0 = dark_profile(0.0, 1.7).unwrap();
        assert!((z0 - 1.309_950_494).abs() < 1e-9);
        assert!((z0 - turning_points(1.7).unwrap().z_plus).abs() < 1e-14);
        assert!((dark_profile(60.0, 1.7).unwrap() - 1.7).abs() < 1e-15);
        assert_eq!(dark_profile(1e6, 1.7).unwrap(), 1.7);
        assert!(dark_profile(0.0, 0.3).is_err());
    }

    #[test]
    fn bright_profile_hits_turning_point() {
        let z0 = bright_profile(0.0, 0.3).unwrap();
        assert!((z0 - 0.690_049_506).abs() < 1e-9);
        assert!((bright_profile(-60.0, 0.3).unwrap() - 0.3).abs() < 1e-15);
        assert!(bright_profile(0.0, 1.7).is_err());
    }

    #[test]
    fn kink_examples() {
        assert_eq!(kink_profile(0.0, 1.0), 1.0);
        assert!(kink_profile(40.0, 1.0) < 1e-25);
        assert!((kink_profile(-40.0, 1.0) - 2.0).abs() < 1e-15);
        assert_eq!(kink_profile(1e4, 1.0), 0.0);
        assert_eq!(kink_profile(-1e4, 1.0), 2.0);
        let p = kink_point(1.0, 1.0);
        assert!((p.z - 2.0 / (1.0 + SQRT_3.exp())).abs() < 1e-15);
        assert!((p.y - heteroclinic_y(p.z, Branch::Plus)).abs() < 1e-12);
        // Anti-kink rises from 0 to 2 on the other branch.
        let q = kink_point(1.0, -1.0);
        assert!(q.y > 0.0);
        assert!((q.y - heteroclinic_y(q.z, Branch::Minus)).abs() < 1e-12);
    }

    #[test]
    fn kink_derivative_matches_finite_difference() {
        // Independent check of the closed-form dz/dζ.
        for zeta in linspace(-3.0, 3.0, 13) {
            let h = 1e-5;
            let fd = (kink_profile(zeta + h, 1.0) - kink_profile(zeta - h, 1.0)) / (2.0 * h);
            assert!((fd - kink_point(zeta, 1.0).y).abs() < 1e-9);
        }
    }

    #[test]
    fn residual_examples() {
        let grid = linspace(-10.0, 10.0, 2001);
        assert!(ode_residual(WaveKind::DarkSolitary, 1.7, &grid).unwrap() <= 1e-8);
        assert!(ode_residual(WaveKind::BrightSolitary, 0.3, &grid).unwrap() <= 1e-8);
        assert!(ode_residual(WaveKind::Kink, 0.0, &grid).unwrap() <= 1e-10);
        assert!(ode_residual(WaveKind::AntiKink, 2.0, &grid).unwrap() <= 1e-10);
        assert!(level_residual(WaveKind::DarkSolitary, 1.7, &grid).unwrap() <= 1e-10);
        assert!(level_residual(WaveKind::Kink, 0.0, &grid).unwrap() <= 1e-12);
        assert!(level_residual(WaveKind::AntiKink, 0.0, &grid).unwrap() <= 1e-12);
    }

    #[test]
    fn saddle_sits_on_its_level() {
        for k in [0.2, 1.7] {
            assert!((first_integral(PhasePoint::new(k, 0.0), k) - homoclinic_level(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn dark_point_level_at_one() {
        let p = dark_point(1.0, 1.7).unwrap();
        let h = first_integral(PhasePoint::new(p.z, p.y), 1.7);
        assert!((h - homoclinic_level(1.7)).abs() <= 1e-10);
        let p = bright_point(2.0, 0.3).unwrap();
        let h = first_integral(PhasePoint::new(p.z, p.y), 0.3);
        assert!((h - homoclinic_level(0.3)).abs() <= 1e-10);
    }

    #[test]
    fn dark_tail_is_increasing_and_kink_monotone() {
        let grid = linspace(0.0, 20.0, 401);
        let dark: Vec<f64> = grid.iter().map(|&s| dark_profile(s, 1.7).unwrap()).collect();
        assert!(dark.windows(2).all(|w| w[1] > w[0] || (w[1] - 1.7).abs() < 1e-12));
        let grid = linspace(-10.0, 10.0, 401);
        let kink: Vec<f64> = grid.iter().map(|&s| kink_profile(s, 1.0)).collect();
        assert!(kink.windows(2).all(|w| w[1] < w[0]));
        let anti: Vec<f64> = grid.iter().map(|&s| kink_profile(s, -1.0)).collect();
        assert!(anti.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn profiles_stay_on_their_side_of_the_saddle() {
        for s in linspace(-15.0, 15.0, 301) {
            assert!(dark_profile(s, 1.7).unwrap() < 1.7);
            assert!(bright_profile(s, 0.3).unwrap() > 0.3);
        }
    }

    #[test]
    fn physical_wave_matches_printed_dark_formula() {
        let (k, c) = (1.7, 0.5);
        let params = Params::new(c, 0.0, k).unwrap();
        for x in linspace(-8.0, 8.0, 17) {
            for t in [0.0, 1.5, -3.0] {
                let s = physical_wave(|z| dark_profile(z, k).unwrap(), &params, x, t);
                let expected = printed_dark_u(k, c, x, t);
                assert!((s.u - expected).abs() < 1e-13);
                assert!((s.v - (c * s.u - 0.5 * s.u * s.u)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn wave_solution_examples() {
        let u = wave_solution(WaveKind::DarkSolitary, 1.7, 0.5, 0.5 * 3.0, 3.0).unwrap();
        assert!((u - 0.654_975_247).abs() < 1e-9);
        let u = wave_solution(WaveKind::Kink, 0.0, 0.5, 1e3, 0.0).unwrap();
        assert!(u.abs() < 1e-30);
        assert!(wave_solution(WaveKind::Kink, 0.0, 0.0, 0.0, 0.0).is_err());
        for xi in linspace(-4.0, 4.0, 9) {
            let u = wave_solution(WaveKind::BrightSolitary, 0.3, 1.0, xi, 0.0).unwrap();
            assert_eq!(u, bright_profile(xi, 0.3).unwrap());
        }
    }

    proptest! {
        #[test]
        fn solitary_profiles_are_even(s in -30.0f64..30.0, t in 0.01f64..0.99) {
            let kd = crate::KAPPA_DARK_MIN + (2.0 - crate::KAPPA_DARK_MIN) * t;
            let kb = crate::KAPPA_BRIGHT_MAX * t;
            prop_assert!((dark_profile(s, kd).unwrap() - dark_profile(-s, kd).unwrap()).abs() <= 1e-14);
            prop_assert!((bright_profile(s, kb).unwrap() - bright_profile(-s, kb).unwrap()).abs() <= 1e-14);
        }

        #[test]
        fn bright_mirrors_dark(s in -20.0f64..20.0, t in 0.01f64..0.99) {
            let kb = crate::KAPPA_BRIGHT_MAX * t;
            let mirrored = 2.0 - dark_profile(s, 2.0 - kb).unwrap();
            prop_assert!((bright_profile(s, kb).unwrap() - mirrored).abs() <= 1e-10);
        }

        #[test]
        fn traveling_wave_shift_invariance(x in -10.0f64..10.0, t in -5.0f64..5.0, d in -2.0f64..2.0) {
            let c = 0.5;
            let a = wave_solution(WaveKind::DarkSolitary, 1.7, c, x + c * d, t + d).unwrap();
            let b = wave_solution(WaveKind::DarkSolitary, 1.7, c, x, t).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}
