//! Equilibria of the unperturbed planar system and their regimes.
//!
//! Equilibria are the real roots of `F(z) = 1.5z³ - 4.5z² + 3z + G`. The
//! shift `z = 1 + s` turns this into the depressed cubic `s³ - s + 2G/3 = 0`,
//! which has three real roots for `|G| < √3/3`, a double root at the fold
//! `|G| = √3/3` and a single root beyond it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::{cubic, cubic_prime};
use crate::{G_FOLD, KAPPA_BRIGHT_MAX, KAPPA_DARK_MIN};

/// Absolute tolerance used to snap `G` onto the regime boundaries `0` and `±√3/3`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Default `|F'(z)|` threshold below which an equilibrium is degenerate.
pub const DEGENERATE_TOL: f64 = 1e-10;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Saddle,
    Center,
    /// `F'(z) = 0`: the cusp born at the fold.
    Degenerate,
}

impl std::fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Saddle => "Saddle",
            Self::Center => "Center",
            Self::Degenerate => "Degenerate",
        })
    }
}

/// An equilibrium `(z, 0)` of the planar system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub z: f64,
    pub kind: EquilibriumKind,
    /// `F'(z)`; its sign decides the kind.
    pub fprime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    /// `|G| > √3/3`
    SingleSaddle,
    /// `|G| = √3/3`
    SaddleCusp,
    /// `0 < G < √3/3`: homoclinic loop to the saddle in `(1+√3/3, 2)`.
    HomoclinicRight,
    /// `G = 0`: heteroclinic cycle between `(0,0)` and `(2,0)`.
    HeteroclinicLoop,
    /// `-√3/3 < G < 0`: homoclinic loop to the saddle in `(0, 1-√3/3)`.
    HomoclinicLeft,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SingleSaddle => "SingleSaddle",
            Self::SaddleCusp => "SaddleCusp",
            Self::HomoclinicRight => "HomoclinicRight",
            Self::HeteroclinicLoop => "HeteroclinicLoop",
            Self::HomoclinicLeft => "HomoclinicLeft",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub tag: RegimeTag,
    pub g: f64,
}

/// Non-saddle intersections of the homoclinic level set with `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub z_plus: f64,
    pub z_minus: f64,
}

impl TurningPoints {
    /// The turning point the homoclinic loop through `(κ, 0)` actually reaches.
    pub fn orbit_side(&self, kappa: f64) -> f64 {
        if kappa > 1.0 {
            self.z_plus
        } else {
            self.z_minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KappaRegime {
    BrightSolitary,
    DarkSolitary,
    KinkPair,
    NoHomoclinic,
}

impl std::fmt::Display for KappaRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::BrightSolitary => "BrightSolitary",
            Self::DarkSolitary => "DarkSolitary",
            Self::KinkPair => "KinkPair",
            Self::NoHomoclinic => "NoHomoclinic",
        })
    }
}

/// Real roots of `F(z) = 1.5z³ - 4.5z² + 3z + G`, ascending.
///
/// Closed-form trigonometric or hyperbolic solution followed by one Newton
/// step. Within [`BOUNDARY_TOL`] of the fold the double root is returned once.
pub fn cubic_roots(g: f64) -> Vec<f64> {
    let fold_gap = g.abs() - G_FOLD;
    let mut roots = if fold_gap.abs() <= BOUNDARY_TOL {
        let sign = g.signum();
        vec![1.0 + sign / SQRT_3, 1.0 - 2.0 * sign / SQRT_3]
    } else if fold_gap < 0.0 {
        let theta = (-SQRT_3 * g).acos() / 3.0;
        (0..3)
            .map(|k| 1.0 + 2.0 / SQRT_3 * (theta - 2.0 * PI * k as f64 / 3.0).cos())
            .map(|z| newton_polish(z, g))
            .collect()
    } else {
        let s = -2.0 * g.signum() / SQRT_3 * ((SQRT_3 * g.abs()).acosh() / 3.0).cosh();
        vec![newton_polish(1.0 + s, g)]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

fn newton_polish(z: f64, g: f64) -> f64 {
    let d = cubic_prime(z);
    if d.abs() < 1e-8 {
        return z;
    }
    z - (cubic(z) + g) / d
}

/// All equilibria for the given `G`, classified with the default tolerance.
pub fn find_equilibria(g: f64) -> Vec<Equilibrium> {
    find_equilibria_with_tol(g, DEGENERATE_TOL)
}

pub fn find_equilibria_with_tol(g: f64, tol: f64) -> Vec<Equilibrium> {
    cubic_roots(g)
        .into_iter()
        .map(|z| {
            let fprime = cubic_prime(z);
            let kind = if fprime > tol {
                EquilibriumKind::Saddle
            } else if fprime < -tol {
                EquilibriumKind::Center
            } else {
                EquilibriumKind::Degenerate
            };
            Equilibrium { z, kind, fprime }
        })
        .collect()
}

pub fn classify_regime(g: f64) -> Regime {
    let tag = if (g.abs() - G_FOLD).abs() <= BOUNDARY_TOL {
        RegimeTag::SaddleCusp
    } else if g.abs() > G_FOLD {
        RegimeTag::SingleSaddle
    } else if g.abs() <= BOUNDARY_TOL {
        RegimeTag::HeteroclinicLoop
    } else if g > 0.0 {
        RegimeTag::HomoclinicRight
    } else {
        RegimeTag::HomoclinicLeft
    };
    Regime { tag, g }
}

/// `z± = 2 - κ ± √(4κ - 2κ²)`.
pub fn turning_points(kappa: f64) -> Result<TurningPoints> {
    if !(0.0..=2.0).contains(&kappa) {
        return Err(Error::TurningPointsComplex(kappa));
    }
    let root = (4.0 * kappa - 2.0 * kappa * kappa).max(0.0).sqrt();
    let tp = TurningPoints { z_plus: 2.0 - kappa + root, z_minus: 2.0 - kappa - root };
    debug_assert!(match kappa_regime(kappa) {
        KappaRegime::DarkSolitary => tp.z_minus < tp.z_plus && tp.z_plus < kappa,
        KappaRegime::BrightSolitary => kappa < tp.z_minus && tp.z_minus < tp.z_plus,
        _ => true,
    });
    Ok(tp)
}

pub fn kappa_regime(kappa: f64) -> KappaRegime {
    if kappa.abs() <= BOUNDARY_TOL || (kappa - 2.0).abs() <= BOUNDARY_TOL {
        KappaRegime::KinkPair
    } else if kappa > 0.0 && kappa < KAPPA_BRIGHT_MAX {
        KappaRegime::BrightSolitary
    } else if kappa > KAPPA_DARK_MIN && kappa < 2.0 {
        KappaRegime::DarkSolitary
    } else {
        KappaRegime::NoHomoclinic
    }
}

/// Checks that `κ` lies strictly inside one of the two solitary intervals.
pub(crate) fn require_solitary(kappa: f64) -> Result<KappaRegime> {
    match kappa_regime(kappa) {
        r @ (KappaRegime::BrightSolitary | KappaRegime::DarkSolitary) => Ok(r),
        _ => Err(Error::KappaOutOfRange {
            kappa,
            expected: "(0, 1-√3/3) ∪ (1+√3/3, 2)",
        }),
    }
}
