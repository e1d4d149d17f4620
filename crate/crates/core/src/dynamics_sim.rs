//! Trajectories of the perturbed systems and the splitting of saddle
//! manifolds.
//!
//! The splitting functional is the energy gap `ΔH = H(P_u) - H(P_s)` between
//! the first crossings of the unstable and stable manifold branches with a
//! transverse section. Along the reduced flow
//! `dH/dζ = ε c y² (P'(z) + 1/c²)`, so to first order `ΔH ≈ ε c M(c)`.

use crate::bifurcation::{require_solitary, turning_points, KappaRegime};
use crate::error::{Error, Result};
use crate::melnikov::{m_het, m_hom, wave_speed_het, wave_speed_hom, EvalMethod};
use crate::ode::{solve, Run};
pub use crate::ode::{IntegratorConfig, Method, TerminalEvent};
use crate::poly::cubic_prime;
use crate::wave_model::{energy, fast_rhs, first_integral, reduced_rhs, Params, PhasePoint, SlowPoint};

/// Components beyond this magnitude stop the integration.
pub const BLOWUP: f64 = 1e6;
/// Default distance of a shooting seed from its saddle.
pub const DEFAULT_OFFSET: f64 = 1e-6;
/// Span of slow time allowed for a manifold branch to reach its section.
const SHOOT_SPAN: f64 = 400.0;

/// Samples of a planar trajectory in slow time `ζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<(f64, PhasePoint)>,
    pub terminal_event: TerminalEvent,
}

impl Trajectory {
    pub fn last(&self) -> (f64, PhasePoint) {
        *self.samples.last().expect("trajectory has at least its initial sample")
    }

    /// Converts blowup and step exhaustion into errors.
    pub fn check(self) -> Result<Self> {
        match self.terminal_event {
            TerminalEvent::Blowup => Err(Error::Blowup { zeta: self.last().0 }),
            TerminalEvent::MaxSteps => Err(Error::MaxSteps(self.samples.len() - 1)),
            _ => Ok(self),
        }
    }

    /// `max |H - H(start)|` for the first integral with saddle at `κ`.
    pub fn energy_drift(&self, g: f64) -> f64 {
        let h0 = energy(self.samples[0].1, g);
        self.samples.iter().map(|(_, p)| (energy(*p, g) - h0).abs()).fold(0.0, f64::max)
    }
}

/// Samples of the 3D fast system in fast time `η`.
#[derive(Debug, Clone, PartialEq)]
pub struct FastTrajectory {
    pub samples: Vec<(f64, SlowPoint)>,
    pub terminal_event: TerminalEvent,
    pub eps: f64,
}

impl FastTrajectory {
    /// Slow time `ζ = εη` of each sample.
    pub fn zeta(&self) -> Vec<f64> {
        self.samples.iter().map(|(eta, _)| self.eps * eta).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section {
    /// `y = 0` on the turning-point side of the saddle.
    TurningAxis,
    /// `z = 1`, midway between the two heteroclinic saddles.
    Midline,
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::TurningAxis => "y=0",
            Self::Midline => "z=1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingReport {
    pub c: f64,
    /// Saddle abscissa; `0` for the heteroclinic case.
    pub kappa: f64,
    pub eps: f64,
    pub delta_h: f64,
    /// First-order prediction `ε c M(c)`.
    pub predicted: f64,
    /// Melnikov function at `c`.
    pub melnikov: f64,
    pub section: Section,
    pub unstable_hit: PhasePoint,
    pub stable_hit: PhasePoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManifoldBranch {
    UnstableForward,
    StableBackward,
}

fn planar_field(params: Params) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    move |_t, s| {
        let (dz, dy) = reduced_rhs(PhasePoint::new(s[0], s[1]), &params);
        [dz, dy]
    }
}

fn to_trajectory(sol: crate::ode::Solution<2>) -> Trajectory {
    Trajectory {
        samples: sol.ts.iter().zip(&sol.ys).map(|(&t, y)| (t, PhasePoint::new(y[0], y[1]))).collect(),
        terminal_event: sol.terminal,
    }
}

/// Integrates the reduced planar system over `span = (ζ₀, ζ₁)`; `ζ₁ < ζ₀`
/// integrates backward.
///
/// Blowup and step exhaustion are reported through the terminal event; use
/// [`Trajectory::check`] to turn them into errors.
pub fn integrate_planar(params: &Params, init: PhasePoint, span: (f64, f64), cfg: &IntegratorConfig) -> Result<Trajectory> {
    if !init.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite initial point {init:?}")));
    }
    let f = planar_field(*params);
    let run = Run { blowup: BLOWUP, ..Default::default() };
    solve(&f, span.0, [init.z, init.y], span.1, cfg, &run).map(to_trajectory)
}

/// Integrates the 3D fast system over the fast-time span `(η₀, η₁)`.
pub fn integrate_fast3d(params: &Params, init: SlowPoint, span: (f64, f64), cfg: &IntegratorConfig) -> Result<FastTrajectory> {
    let p = *params;
    let f = move |_t: f64, s: &[f64; 3]| {
        let (a, b, c) = fast_rhs(SlowPoint::new(s[0], s[1], s[2]), &p);
        [a, b, c]
    };
    let run = Run { blowup: BLOWUP, ..Default::default() };
    let sol = solve(&f, span.0, [init.z, init.y, init.w], span.1, cfg, &run)?;
    Ok(FastTrajectory {
        samples: sol.ts.iter().zip(&sol.ys).map(|(&t, y)| (t, SlowPoint::new(y[0], y[1], y[2]))).collect(),
        terminal_event: sol.terminal,
        eps: params.eps(),
    })
}

/// Eigenvalues `(λ_u, λ_s)` of the perturbed linearization at the saddle `(z₀, 0)`.
fn saddle_eigenvalues(z0: f64, params: &Params) -> Result<(f64, f64)> {
    let fp = cubic_prime(z0);
    if !(fp > 0.0) {
        return Err(Error::NotASaddle { z: z0, fprime: fp });
    }
    let c = params.c();
    let trace = params.eps() * c * (fp + 1.0 / (c * c));
    let disc = (trace * trace + 4.0 * fp).sqrt();
    Ok((0.5 * (trace + disc), 0.5 * (trace - disc)))
}

/// Seed on a saddle manifold at distance `offset` from `(z₀, 0)`, on the side
/// `toward` (`±1` in `z`).
fn seed_at(z0: f64, params: &Params, which: ManifoldBranch, offset: f64, toward: f64) -> Result<PhasePoint> {
    if !(1e-8..=1e-4).contains(&offset) {
        return Err(Error::InvalidParameter(format!("seed offset {offset} outside [1e-8, 1e-4]")));
    }
    let (lu, ls) = saddle_eigenvalues(z0, params)?;
    let lambda = match which {
        ManifoldBranch::UnstableForward => lu,
        ManifoldBranch::StableBackward => ls,
    };
    let norm = (1.0 + lambda * lambda).sqrt();
    let s = toward * offset / norm;
    Ok(PhasePoint::new(z0 + s, s * lambda))
}

/// Shooting seed along the unstable or stable eigenvector of the saddle
/// `(κ, 0)`, displaced toward the homoclinic loop.
///
/// The eigenvector is that of the linearization including the `ε` damping
/// term, which reduces to `(1, ±√F'(κ))` at `ε = 0`.
pub fn saddle_manifold_seed(kappa: f64, params: &Params, which: ManifoldBranch, offset: f64) -> Result<PhasePoint> {
    let toward = match turning_points(kappa) {
        Ok(tp) => (tp.orbit_side(kappa) - kappa).signum(),
        Err(_) => 1.0,
    };
    let toward = if kappa == 2.0 || (kappa - 2.0).abs() < 1e-9 { -1.0 } else { toward };
    seed_at(kappa, params, which, offset, toward)
}

fn shoot_to_section<G>(params: &Params, seed: PhasePoint, backward: bool, section: &G, cfg: &IntegratorConfig) -> Result<PhasePoint>
where
    G: Fn(f64, &[f64; 2]) -> f64,
{
    let f = planar_field(*params);
    let end = if backward { -SHOOT_SPAN } else { SHOOT_SPAN };
    let run = Run { event: Some(section), blowup: BLOWUP, dense: false };
    let sol = solve(&f, 0.0, [seed.z, seed.y], end, cfg, &run)?;
    if sol.terminal != TerminalEvent::SectionCrossing {
        log::debug!("branch from {seed:?} ended with {:?}", sol.terminal);
        return Err(Error::NoSectionCrossing);
    }
    let (_, y) = sol.last();
    Ok(PhasePoint::new(y[0], y[1]))
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("splitting needs eps > 0, got {eps}")));
    }
    Ok(())
}

/// Energy splitting of the homoclinic loop at `(κ, 0)` on the section `y = 0`.
pub fn splitting_distance(c: f64, kappa: f64, eps: f64, cfg: &IntegratorConfig) -> Result<SplittingReport> {
    splitting_distance_with_offset(c, kappa, eps, cfg, DEFAULT_OFFSET)
}

pub fn splitting_distance_with_offset(c: f64, kappa: f64, eps: f64, cfg: &IntegratorConfig, offset: f64) -> Result<SplittingReport> {
    require_solitary(kappa)?;
    check_eps(eps)?;
    let params = Params::new(c, eps, kappa)?;
    let u_seed = saddle_manifold_seed(kappa, &params, ManifoldBranch::UnstableForward, offset)?;
    let s_seed = saddle_manifold_seed(kappa, &params, ManifoldBranch::StableBackward, offset)?;
    let section = |_t: f64, s: &[f64; 2]| s[1];
    let pu = shoot_to_section(&params, u_seed, false, &section, cfg)?;
    let ps = shoot_to_section(&params, s_seed, true, &section, cfg)?;
    let melnikov = m_hom(c, kappa, EvalMethod::ClosedForm)?.m;
    Ok(SplittingReport {
        c,
        kappa,
        eps,
        delta_h: first_integral(pu, kappa) - first_integral(ps, kappa),
        predicted: eps * c * melnikov,
        melnikov,
        section: Section::TurningAxis,
        unstable_hit: pu,
        stable_hit: ps,
    })
}

/// Energy splitting of the heteroclinic connection from `(2, 0)` to `(0, 0)`
/// on the section `z = 1`.
pub fn heteroclinic_splitting(c: f64, eps: f64, cfg: &IntegratorConfig) -> Result<SplittingReport> {
    check_eps(eps)?;
    let params = Params::new(c, eps, 0.0)?;
    let u_seed = seed_at(2.0, &params, ManifoldBranch::UnstableForward, DEFAULT_OFFSET, -1.0)?;
    let s_seed = seed_at(0.0, &params, ManifoldBranch::StableBackward, DEFAULT_OFFSET, 1.0)?;
    let section = |_t: f64, s: &[f64; 2]| s[0] - 1.0;
    let pu = shoot_to_section(&params, u_seed, false, &section, cfg)?;
    let ps = shoot_to_section(&params, s_seed, true, &section, cfg)?;
    let melnikov = m_het(c)?.m;
    Ok(SplittingReport {
        c,
        kappa: 0.0,
        eps,
        delta_h: first_integral(pu, 0.0) - first_integral(ps, 0.0),
        predicted: eps * c * melnikov,
        melnikov,
        section: Section::Midline,
        unstable_hit: pu,
        stable_hit: ps,
    })
}

/// Bisection for the sign change of `c ↦ split(c)` on `[lo, hi]`.
pub fn bisect_speed<F>(split: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (split(a)?, split(b)?);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = split(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Speed `c̃(κ, ε)` at which the perturbed homoclinic loop persists, by
/// bisection of the splitting on `[c(κ) - 0.5, c(κ) + 0.5]`.
pub fn persistent_speed(kappa: f64, eps: f64, cfg: &IntegratorConfig) -> Result<f64> {
    persistent_speed_with_offset(kappa, eps, cfg, DEFAULT_OFFSET)
}

pub fn persistent_speed_with_offset(kappa: f64, eps: f64, cfg: &IntegratorConfig, offset: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 0.05], got {eps}")));
    }
    let c0 = wave_speed_hom(kappa)?;
    bisect_speed(
        |c| splitting_distance_with_offset(c, kappa, eps, cfg, offset).map(|r| r.delta_h),
        c0 - 0.5,
        c0 + 0.5,
        1e-9,
    )
}

/// Persistent kink speed near `√15/3`.
pub fn persistent_speed_het(eps: f64, cfg: &IntegratorConfig) -> Result<f64> {
    check_eps(eps)?;
    let c0 = wave_speed_het();
    bisect_speed(|c| heteroclinic_splitting(c, eps, cfg).map(|r| r.delta_h), c0 - 0.5, c0 + 0.5, 1e-9)
}

/// Whether `κ` has a homoclinic loop to shoot.
pub fn is_shootable(kappa: f64) -> bool {
    matches!(
        crate::bifurcation::kappa_regime(kappa),
        KappaRegime::BrightSolitary | KappaRegime::DarkSolitary
    )
}
