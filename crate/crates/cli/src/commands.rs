use dlwave_core::closed_waves::{level_residual, linspace, ode_residual, profile_point};
use dlwave_core::dynamics_sim::{
    bisect_speed, heteroclinic_splitting, integrate_planar, persistent_speed, splitting_distance, SplittingReport,
};
use dlwave_core::melnikov::{integrals, m_hom, wave_speed_het, wave_speed_hom_report};
use dlwave_core::wave_model::{energy, kappa_to_g, physical_wave};
use dlwave_core::{
    classify_regime, find_equilibria, kappa_regime, turning_points, EvalMethod, IntegratorConfig, KappaRegime,
    Method, Params, PhasePoint, TerminalEvent, WaveKind,
};

use crate::args::*;
use crate::output::{Cell, Table};
use crate::CliError;

type Out = Result<Table, CliError>;

pub fn classify(a: &ClassifyArgs) -> Out {
    let g = match (a.g, a.kappa) {
        (Some(g), None) => g,
        (None, Some(k)) => kappa_to_g(k),
        _ => return Err(CliError::Usage("exactly one of --G and --kappa".into())),
    };
    let regime = classify_regime(g);
    let mut t = Table::new(&["regime", "G", "z", "kind", "fprime"]);
    for e in find_equilibria(g) {
        t.push(vec![regime.tag.to_string().into(), g.into(), e.z.into(), e.kind.to_string().into(), e.fprime.into()]);
    }
    Ok(t)
}

pub fn melnikov(a: &MelnikovArgs) -> Out {
    if let Some(c) = a.c {
        if !(c > 0.0) {
            return Err(CliError::Usage(format!("--c must be positive, got {c}")));
        }
    }
    let methods: &[EvalMethod] = match a.method {
        MethodArg::Closed => &[EvalMethod::ClosedForm],
        MethodArg::Quad => &[EvalMethod::Quadrature],
        MethodArg::Both => &[EvalMethod::ClosedForm, EvalMethod::Quadrature],
    };
    let mut t = Table::new(&["kappa", "I", "J", "M", "method", "err"]);
    let mut vals = Vec::new();
    for &m in methods {
        let (i, j, ei, ej) = integrals(a.kappa, m)?;
        let mm = a.c.map(|c| i / (c * c) + j);
        vals.push((i, j, mm));
        t.push(vec![a.kappa.into(), i.into(), j.into(), mm.into(), m.to_string().into(), ei.max(ej).into()]);
    }
    if let [(i0, j0, m0), (i1, j1, m1)] = vals[..] {
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
        let dm = m0.zip(m1).map(|(x, y)| rel(x, y));
        t.push(vec![a.kappa.into(), rel(i0, i1).into(), rel(j0, j1).into(), dm.into(), "rel_diff".into(), Cell::Empty]);
    }
    Ok(t)
}

pub fn speed(a: &SpeedArgs) -> Out {
    let mut t = Table::new(&["target", "c", "method", "closed", "quad", "closed_validated"]);
    if a.het {
        let c = wave_speed_het();
        t.push(vec!["het".into(), c.into(), "closed".into(), c.into(), Cell::Empty, true.into()]);
    } else {
        let k = a.kappa.expect("clap enforces the group");
        let r = wave_speed_hom_report(k)?;
        t.push(vec![
            format!("{k}").into(),
            r.c.into(),
            r.method.to_string().into(),
            r.closed.into(),
            r.quad.into(),
            r.closed_validated.into(),
        ]);
    }
    Ok(t)
}

fn wave_kind(k: KindArg) -> WaveKind {
    match k {
        KindArg::Dark => WaveKind::DarkSolitary,
        KindArg::Bright => WaveKind::BrightSolitary,
        KindArg::Kink => WaveKind::Kink,
        KindArg::Antikink => WaveKind::AntiKink,
    }
}

pub fn wave(a: &WaveArgs) -> Out {
    let kind = wave_kind(a.kind);
    let kappa = match kind {
        WaveKind::Kink | WaveKind::AntiKink => a.kappa.unwrap_or(0.0),
        _ => a.kappa.ok_or_else(|| CliError::Usage(format!("--kappa is required for {kind} waves")))?,
    };
    if !(a.c > 0.0) {
        return Err(CliError::Usage(format!("--c must be positive, got {}", a.c)));
    }
    // Surfaces regime mismatches before any output.
    profile_point(kind, kappa, 0.0)?;

    if let Some(xt) = &a.xt_range {
        let (xs, ts) = xt.split_once(',').ok_or_else(|| CliError::Usage(format!("expected xa:xb:nx,ta:tb:nt, got '{xt}'")))?;
        let (x0, x1, nx) = parse_grid(xs).map_err(CliError::Usage)?;
        let (t0, t1, nt) = parse_grid(ts).map_err(CliError::Usage)?;
        let params = Params::new(a.c, 0.0, kappa)?;
        let profile = |zeta: f64| profile_point(kind, kappa, zeta).map(|p| p.z).unwrap_or(f64::NAN);
        let mut t = Table::new(&["x", "t", "u", "v"]);
        for tt in linspace(t0, t1, nt) {
            for x in linspace(x0, x1, nx) {
                let s = physical_wave(profile, &params, x, tt);
                t.push(vec![s.x.into(), s.t.into(), s.u.into(), s.v.into()]);
            }
        }
        return Ok(t);
    }

    let (z0, z1, n) = parse_grid(a.zeta_range.as_deref().unwrap_or("-10:10:201")).map_err(CliError::Usage)?;
    let header: &[&'static str] =
        if a.validate { &["zeta", "z", "y", "ode_residual", "level_residual"] } else { &["zeta", "z", "y"] };
    let mut t = Table::new(header);
    for zeta in linspace(z0, z1, n) {
        let p = profile_point(kind, kappa, zeta)?;
        let mut row: Vec<Cell> = vec![p.zeta.into(), p.z.into(), p.y.into()];
        if a.validate {
            row.push(ode_residual(kind, kappa, &[zeta])?.into());
            row.push(level_residual(kind, kappa, &[zeta])?.into());
        }
        t.push(row);
    }
    Ok(t)
}

fn integrator(a: &IntegratorArgs) -> Result<IntegratorConfig, CliError> {
    let mut cfg = match a.integrator {
        IntegratorArg::Rk45 => IntegratorConfig::rk45(a.tol, a.tol),
        IntegratorArg::Rk4 => IntegratorConfig::rk4(a.step),
    };
    cfg.max_steps = a.max_steps;
    cfg.validate()?;
    Ok(cfg)
}

pub fn simulate(a: &SimulateArgs) -> Out {
    let span = parse_span(&a.span).map_err(CliError::Usage)?;
    let cfg = integrator(&a.integrator)?;
    let c = match a.c.as_str() {
        "auto" => wave_speed_hom_report(a.kappa)?.c,
        s => s.parse::<f64>().map_err(|_| CliError::Usage(format!("--c expects a number or 'auto', got '{s}'")))?,
    };
    let params = Params::new(c, a.eps, a.kappa)?;
    let init = match a.init.as_str() {
        "zplus" => PhasePoint::new(turning_points(a.kappa)?.z_plus, 0.0),
        "zminus" => PhasePoint::new(turning_points(a.kappa)?.z_minus, 0.0),
        "turn" => PhasePoint::new(turning_points(a.kappa)?.orbit_side(a.kappa), 0.0),
        s => {
            let (z, y) = s
                .split_once(',')
                .and_then(|(z, y)| Some((z.trim().parse().ok()?, y.trim().parse().ok()?)))
                .ok_or_else(|| CliError::Usage(format!("--init expects zplus, zminus, turn or z,y; got '{s}'")))?;
            PhasePoint::new(z, y)
        }
    };
    let tr = integrate_planar(&params, init, span, &cfg)?;
    let g = kappa_to_g(a.kappa);
    let h0 = energy(init, g);
    let mut t = Table::new(&["zeta", "z", "y", "H", "dH"]);
    for (zeta, p) in &tr.samples {
        let h = energy(*p, g);
        t.push(vec![(*zeta).into(), p.z.into(), p.y.into(), h.into(), (h - h0).into()]);
    }
    log::info!(
        "c = {c}, {} samples, terminal {}, max |H - H0| = {:e}",
        tr.samples.len(),
        tr.terminal_event,
        tr.energy_drift(g)
    );
    match tr.terminal_event {
        TerminalEvent::Blowup | TerminalEvent::MaxSteps => {
            tr.check()?;
            unreachable!()
        }
        _ => Ok(t),
    }
}

pub fn sweep(a: &SweepArgs) -> Out {
    if a.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", a.n)));
    }
    let (ra, rb) = (kappa_regime(a.kappa_from), kappa_regime(a.kappa_to));
    let solitary = matches!(ra, KappaRegime::BrightSolitary | KappaRegime::DarkSolitary);
    if !solitary || ra != rb {
        return Err(dlwave_core::Error::KappaOutOfRange {
            kappa: if solitary { a.kappa_to } else { a.kappa_from },
            expected: "a range inside one of (0, 1-√3/3) or (1+√3/3, 2)",
        }
        .into());
    }
    let cfg = IntegratorConfig::rk45(1e-11, 1e-11);
    let mut t = Table::new(&["kappa", "I", "J", "c", "c_tilde", "discrepancy"]);
    for k in linspace(a.kappa_from, a.kappa_to, a.n) {
        let (i, j, _, _) = integrals(k, EvalMethod::ClosedForm)?;
        let (iq, jq, _, _) = integrals(k, EvalMethod::Quadrature)?;
        let disc = ((i - iq).abs() / iq.abs()).max((j - jq).abs() / jq.abs());
        let c = wave_speed_hom_report(k)?.c;
        let ct = a.eps.map(|e| persistent_speed(k, e, &cfg)).transpose()?;
        t.push(vec![k.into(), i.into(), j.into(), c.into(), ct.into(), disc.into()]);
    }
    Ok(t)
}

pub fn splitting(a: &SplittingArgs) -> Out {
    if !(a.c_from < a.c_to) || a.c_from <= 0.0 {
        return Err(CliError::Usage(format!("need 0 < c-from < c-to, got {}..{}", a.c_from, a.c_to)));
    }
    if a.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", a.n)));
    }
    let cfg = IntegratorConfig { method: Method::Rk45 { abs_tol: a.tol, rel_tol: a.tol }, ..Default::default() };
    let shoot = |c: f64| -> dlwave_core::Result<SplittingReport> {
        match a.kappa {
            Some(k) if !a.het => splitting_distance(c, k, a.eps, &cfg),
            _ => heteroclinic_splitting(c, a.eps, &cfg),
        }
    };
    if let Some(k) = a.kappa.filter(|_| !a.het) {
        // Validates kappa before the scan.
        m_hom(1.0, k, EvalMethod::ClosedForm)?;
    }
    let reports = linspace(a.c_from, a.c_to, a.n).into_iter().map(shoot).collect::<Result<Vec<_>, _>>()?;
    let root = reports
        .windows(2)
        .find(|w| w[0].delta_h * w[1].delta_h <= 0.0)
        .map(|w| bisect_speed(|c| shoot(c).map(|r| r.delta_h), w[0].c, w[1].c, 1e-10))
        .transpose()?;
    if root.is_none() {
        log::warn!("no sign change of the splitting in [{}, {}]", a.c_from, a.c_to);
    }
    let mut t = Table::new(&["c", "delta_H", "eps_c_M", "M", "c_tilde"]);
    for r in reports {
        t.push(vec![r.c.into(), r.delta_h.into(), r.predicted.into(), r.melnikov.into(), root.into()]);
    }
    Ok(t)
}
