//! Explicit Runge–Kutta integrators with section-crossing detection.
//!
//! Two methods are provided: classic fixed-step RK4 and the adaptive
//! Dormand–Prince 5(4) pair. Events are located by bisection on the step
//! fraction, re-taking a single step of the same method from the last
//! accepted state, so event states carry the full step accuracy.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Classic fourth-order Runge–Kutta with a fixed step.
    Rk4 { step: f64 },
    /// Dormand–Prince 5(4) with mixed absolute/relative error control.
    Rk45 { abs_tol: f64, rel_tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub method: Method,
    pub max_steps: usize,
    /// Width of the bracket, in the independent variable, at which event
    /// bisection stops.
    pub event_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self::rk45(1e-11, 1e-11)
    }
}

impl IntegratorConfig {
    pub fn rk45(abs_tol: f64, rel_tol: f64) -> Self {
        Self { method: Method::Rk45 { abs_tol, rel_tol }, max_steps: 1_000_000, event_tol: 1e-12 }
    }

    pub fn rk4(step: f64) -> Self {
        Self { method: Method::Rk4 { step }, max_steps: 10_000_000, event_tol: 1e-12 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.method {
            Method::Rk4 { step } => step > 0.0 && step.is_finite(),
            Method::Rk45 { abs_tol, rel_tol } => abs_tol > 0.0 && rel_tol > 0.0,
        };
        if !ok || self.max_steps < 1 || !(self.event_tol > 0.0) {
            return Err(Error::InvalidParameter(format!("invalid integrator configuration {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TerminalEvent {
    SectionCrossing,
    Blowup,
    MaxSteps,
    /// The end of the requested span was reached.
    TimeLimit,
}

impl std::fmt::Display for TerminalEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SectionCrossing => "SectionCrossing",
            Self::Blowup => "Blowup",
            Self::MaxSteps => "MaxSteps",
            Self::TimeLimit => "TimeLimit",
        })
    }
}

/// Samples of a numerical solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<const N: usize> {
    pub ts: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    pub terminal: TerminalEvent,
}

impl<const N: usize> Solution<N> {
    pub fn last(&self) -> (f64, [f64; N]) {
        (*self.ts.last().unwrap(), *self.ys.last().unwrap())
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, h, &[(0.5, &k1)]));
    let k3 = f(t + 0.5 * h, &axpy(y, h, &[(0.5, &k2)]));
    let k4 = f(t + h, &axpy(y, h, &[(1.0, &k3)]));
    axpy(y, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)])
}

/// One Dormand–Prince step: fifth-order solution and the embedded error vector.
pub fn dp45_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> ([f64; N], [f64; N])
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + h / 5.0, &axpy(y, h, &[(1.0 / 5.0, &k1)]));
    let k3 = f(t + 3.0 * h / 10.0, &axpy(y, h, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]));
    let k4 = f(
        t + 4.0 * h / 5.0,
        &axpy(y, h, &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)]),
    );
    let k5 = f(
        t + 8.0 * h / 9.0,
        &axpy(
            y,
            h,
            &[(19372.0 / 6561.0, &k1), (-25360.0 / 2187.0, &k2), (64448.0 / 6561.0, &k3), (-212.0 / 729.0, &k4)],
        ),
    );
    let k6 = f(
        t + h,
        &axpy(
            y,
            h,
            &[
                (9017.0 / 3168.0, &k1),
                (-355.0 / 33.0, &k2),
                (46732.0 / 5247.0, &k3),
                (49.0 / 176.0, &k4),
                (-5103.0 / 18656.0, &k5),
            ],
        ),
    );
    let y5 = axpy(
        y,
        h,
        &[
            (35.0 / 384.0, &k1),
            (500.0 / 1113.0, &k3),
            (125.0 / 192.0, &k4),
            (-2187.0 / 6784.0, &k5),
            (11.0 / 84.0, &k6),
        ],
    );
    let k7 = f(t + h, &y5);
    let err = axpy(
        &[0.0; N],
        h,
        &[
            (71.0 / 57600.0, &k1),
            (-71.0 / 16695.0, &k3),
            (71.0 / 1920.0, &k4),
            (-17253.0 / 339200.0, &k5),
            (22.0 / 525.0, &k6),
            (-1.0 / 40.0, &k7),
        ],
    );
    (y5, err)
}

/// Options for [`solve`] beyond the integrator configuration.
pub struct Run<'a, const N: usize> {
    /// Scalar event function; integration stops at its first sign change.
    pub event: Option<&'a dyn Fn(f64, &[f64; N]) -> f64>,
    /// Integration stops with [`TerminalEvent::Blowup`] once any component exceeds this.
    pub blowup: f64,
    /// Keep every accepted step (otherwise only the endpoints).
    pub dense: bool,
}

impl<const N: usize> Default for Run<'_, N> {
    fn default() -> Self {
        Self { event: None, blowup: 1e6, dense: true }
    }
}

/// Integrates `y' = f(t, y)` from `t0` towards `t_end` (which may lie below `t0`).
pub fn solve<const N: usize, F>(
    f: &F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    cfg: &IntegratorConfig,
    run: &Run<'_, N>,
) -> Result<Solution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    cfg.validate()?;
    if !(t_end.is_finite() && t0.is_finite()) || t_end == t0 {
        return Err(Error::InvalidParameter(format!("degenerate span [{t0}, {t_end}]")));
    }
    let dir = (t_end - t0).signum();
    let span = (t_end - t0).abs();
    let mut ts = vec![t0];
    let mut ys = vec![y0];
    let (mut t, mut y) = (t0, y0);
    let mut g_prev = run.event.map(|g| g(t, &y));

    let (mut h, adaptive) = match cfg.method {
        Method::Rk4 { step } => (step.min(span), None),
        Method::Rk45 { abs_tol, rel_tol } => ((span * 1e-3).min(0.05), Some((abs_tol, rel_tol))),
    };

    let take = |t: f64, y: &[f64; N], hs: f64| -> [f64; N] {
        match cfg.method {
            Method::Rk4 { .. } => rk4_step(f, t, y, hs),
            Method::Rk45 { .. } => dp45_step(f, t, y, hs).0,
        }
    };

    let mut steps = 0usize;
    let terminal = loop {
        let remaining = (t_end - t) * dir;
        if remaining <= span * 1e-15 {
            break TerminalEvent::TimeLimit;
        }
        if steps >= cfg.max_steps {
            break TerminalEvent::MaxSteps;
        }
        steps += 1;
        let hs = h.min(remaining);
        let y_new = match adaptive {
            None => rk4_step(f, t, &y, dir * hs),
            Some((atol, rtol)) => {
                let (y5, e) = dp45_step(f, t, &y, dir * hs);
                let norm = (0..N)
                    .map(|i| {
                        let sc = atol + rtol * y[i].abs().max(y5[i].abs());
                        (e[i] / sc).powi(2)
                    })
                    .sum::<f64>()
                    / N as f64;
                let norm = norm.sqrt();
                let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
                if !norm.is_finite() || norm > 1.0 {
                    h = hs * if norm.is_finite() { factor } else { 0.2 };
                    if h < 1e-14 * span.max(1.0) {
                        break TerminalEvent::Blowup;
                    }
                    continue;
                }
                h = hs * factor;
                y5
            }
        };
        let t_new = t + dir * hs;

        if let (Some(g), Some(gp)) = (run.event, g_prev) {
            let g_new = g(t_new, &y_new);
            if gp != 0.0 && (g_new == 0.0 || g_new.signum() != gp.signum()) {
                let (mut lo, mut hi) = (0.0, hs);
                let mut y_hit = y_new;
                while hi - lo > cfg.event_tol {
                    let mid = 0.5 * (lo + hi);
                    let ym = take(t, &y, dir * mid);
                    let gm = g(t + dir * mid, &ym);
                    if gm == 0.0 {
                        lo = mid;
                        hi = mid;
                        y_hit = ym;
                        break;
                    }
                    if gm.signum() == gp.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                        y_hit = ym;
                    }
                }
                if hi != lo || hi == hs {
                    y_hit = if hi == hs { y_new } else { take(t, &y, dir * hi) };
                }
                ts.push(t + dir * hi);
                ys.push(y_hit);
                break TerminalEvent::SectionCrossing;
            }
            g_prev = Some(g_new);
        }

        t = t_new;
        y = y_new;
        let blown = y.iter().any(|v| !v.is_finite() || v.abs() > run.blowup);
        if run.dense || blown {
            ts.push(t);
            ys.push(y);
        }
        if blown {
            break TerminalEvent::Blowup;
        }
    };
    if !run.dense && terminal != TerminalEvent::SectionCrossing && ts.last() != Some(&t) {
        ts.push(t);
        ys.push(y);
    }
    Ok(Solution { ts, ys, terminal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(_t: f64, y: &[f64; 2]) -> [f64; 2] {
        [y[1], -y[0]]
    }

    #[test]
    fn rk45_solves_harmonic_oscillator() {
        let cfg = IntegratorConfig::rk45(1e-12, 1e-12);
        let tau = 2.0 * std::f64::consts::PI;
        let sol = solve(&oscillator, 0.0, [1.0, 0.0], tau, &cfg, &Run::default()).unwrap();
        let (t, y) = sol.last();
        assert_eq!(sol.terminal, TerminalEvent::TimeLimit);
        assert!((t - tau).abs() < 1e-12);
        assert!((y[0] - 1.0).abs() < 1e-10 && y[1].abs() < 1e-10);
        assert!(sol.ts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn backward_integration() {
        let cfg = IntegratorConfig::rk45(1e-12, 1e-12);
        let f = |_t: f64, y: &[f64; 1]| [y[0]];
        let sol = solve(&f, 0.0, [1.0], -2.0, &cfg, &Run::default()).unwrap();
        let (_, y) = sol.last();
        assert!((y[0] - (-2f64).exp()).abs() < 1e-11);
        assert!(sol.ts.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn rk4_is_fourth_order() {
        let f = |_t: f64, y: &[f64; 1]| [-y[0]];
        let err = |h: f64| {
            let cfg = IntegratorConfig::rk4(h);
            let sol = solve(&f, 0.0, [1.0], 1.0, &cfg, &Run::default()).unwrap();
            (sol.last().1[0] - (-1f64).exp()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!((ratio - 16.0).abs() < 2.0, "ratio {ratio}");
    }

    #[test]
    fn locates_section_crossing() {
        let cfg = IntegratorConfig::rk45(1e-12, 1e-12);
        let g = |_t: f64, y: &[f64; 2]| y[0];
        let run = Run { event: Some(&g), ..Default::default() };
        let sol = solve(&oscillator, 0.0, [1.0, 0.0], 10.0, &cfg, &run).unwrap();
        assert_eq!(sol.terminal, TerminalEvent::SectionCrossing);
        let (t, y) = sol.last();
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
        assert!(y[0].abs() < 1e-10 && (y[1] + 1.0).abs() < 1e-10);
    }

    #[test]
    fn reports_blowup_and_max_steps() {
        let cfg = IntegratorConfig::rk45(1e-10, 1e-10);
        let f = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        let sol = solve(&f, 0.0, [1.0], 2.0, &cfg, &Run::default()).unwrap();
        assert_eq!(sol.terminal, TerminalEvent::Blowup);
        let cfg = IntegratorConfig { max_steps: 3, ..IntegratorConfig::rk4(0.01) };
        let sol = solve(&oscillator, 0.0, [1.0, 0.0], 1.0, &cfg, &Run::default()).unwrap();
        assert_eq!(sol.terminal, TerminalEvent::MaxSteps);
        assert_eq!(sol.ts.len(), 4);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = IntegratorConfig::rk4(-1.0);
        assert!(solve(&oscillator, 0.0, [1.0, 0.0], 1.0, &cfg, &Run::default()).is_err());
        let cfg = IntegratorConfig::rk45(1e-8, 1e-8);
        assert!(solve(&oscillator, 1.0, [1.0, 0.0], 1.0, &cfg, &Run::default()).is_err());
    }
}
