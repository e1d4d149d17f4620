use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "dlwave", version, about = "Traveling-wave bifurcation analysis", args_override_self = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// key=value file of default flags; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilibria and regime for a value of G or kappa.
    Classify(ClassifyArgs),
    /// Melnikov integrals I, J and optionally M at a speed.
    Melnikov(MelnikovArgs),
    /// Persistence speed of a homoclinic loop or of the kink pair.
    Speed(SpeedArgs),
    /// Closed-form wave profiles.
    Wave(WaveArgs),
    /// Integrate the perturbed planar system.
    Simulate(SimulateArgs),
    /// Melnikov data over a grid of kappa.
    Sweep(SweepArgs),
    /// Scan the manifold splitting over a range of speeds.
    Splitting(SplittingArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
#[command(group(ArgGroup::new("target").required(true).args(["g", "kappa"])))]
pub struct ClassifyArgs {
    #[arg(long = "G")]
    pub g: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Quad,
    Both,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct MelnikovArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MethodArg,
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
#[command(group(ArgGroup::new("target").required(true).args(["kappa", "het"])))]
pub struct SpeedArgs {
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub het: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Dark,
    Bright,
    Kink,
    Antikink,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
#[command(group(ArgGroup::new("grid").args(["zeta_range", "xt_range"])))]
pub struct WaveArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Saddle abscissa; ignored for kinks.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// a:b:n in the scaled phase.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta_range: Option<String>,
    /// xa:xb:nx,ta:tb:nt for the physical fields.
    #[arg(long, allow_hyphen_values = true)]
    pub xt_range: Option<String>,
    /// Append residual columns.
    #[arg(long)]
    pub validate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegratorArg {
    Rk45,
    Rk4,
}

#[derive(Debug, Args)]
pub struct IntegratorArgs {
    #[arg(long, value_enum, default_value = "rk45")]
    pub integrator: IntegratorArg,
    /// Absolute and relative tolerance for rk45.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Step for rk4.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct SimulateArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    /// A speed or `auto` for the Melnikov speed.
    #[arg(long, default_value = "auto")]
    pub c: String,
    /// `zplus`, `zminus`, `turn` (the loop's turning point) or `z,y`.
    #[arg(long, default_value = "turn", allow_hyphen_values = true)]
    pub init: String,
    /// a:b in the scaled phase; b < a integrates backward.
    #[arg(long, default_value = "0:40", allow_hyphen_values = true)]
    pub span: String,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub kappa_from: f64,
    #[arg(long)]
    pub kappa_to: f64,
    #[arg(long)]
    pub n: usize,
    /// Also compute the persistent speed at this perturbation size.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
#[command(group(ArgGroup::new("target").required(true).args(["kappa", "het"])))]
pub struct SplittingArgs {
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub het: bool,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub c_from: f64,
    #[arg(long)]
    pub c_to: f64,
    #[arg(long, default_value_t = 15)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-11)]
    pub tol: f64,
}

/// `a:b:n` with `n ≥ 2` inclusive samples.
pub fn parse_grid(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected a:b:n, got '{s}'"));
    }
    let a = parse_num(parts[0])?;
    let b = parse_num(parts[1])?;
    let n: usize = parts[2].trim().parse().map_err(|_| format!("bad sample count '{}'", parts[2]))?;
    if n < 2 {
        return Err(format!("need at least 2 samples, got {n}"));
    }
    Ok((a, b, n))
}

/// `a:b` with `a != b`.
pub fn parse_span(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got '{s}'"))?;
    let (a, b) = (parse_num(a)?, parse_num(b)?);
    if a == b {
        return Err(format!("empty span '{s}'"));
    }
    Ok((a, b))
}

fn parse_num(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("non-finite number '{s}'"));
    }
    Ok(v)
}

/// Splices `--key value` pairs from a config file in front of the explicit
/// subcommand flags so that later, explicit flags override them.
pub fn splice_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_owned());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config '{path}': {e}"))?;
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key = value", n + 1))?;
        let key = k.trim().trim_matches('"').replace('_', "-");
        let value = v.trim().trim_matches('"');
        if key == "config" {
            continue;
        }
        match value {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => extra.push(format!("--{key}={value}")),
        }
    }
    let names = ["classify", "melnikov", "speed", "wave", "simulate", "sweep", "splitting"];
    let at = args
        .iter()
        .position(|a| names.contains(&a.as_str()))
        .map_or(args.len(), |i| i + 1);
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_spans() {
        assert_eq!(parse_grid("-1:2.5:4").unwrap(), (-1.0, 2.5, 4));
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:x:3").is_err());
        assert_eq!(parse_span("0:-20").unwrap(), (0.0, -20.0));
        assert!(parse_span("3:3").is_err());
    }

    #[test]
    fn config_is_spliced_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("dlwave-cfg-{}", std::process::id()));
        std::fs::write(&dir, "# defaults\nkappa = 1.7\nmethod = quad\n").unwrap();
        let args: Vec<String> = ["dlwave", "--config", dir.to_str().unwrap(), "melnikov", "--kappa", "0.3"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = splice_config(args).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(&out[3..], ["melnikov", "--kappa=1.7", "--method=quad", "--kappa", "0.3"]);
        let cli = Cli::try_parse_from(&out).unwrap();
        match cli.command {
            Command::Melnikov(m) => assert_eq!((m.kappa, m.method), (0.3, MethodArg::Quad)),
            _ => unreachable!(),
        }
    }
}
