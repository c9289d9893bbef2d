use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcflow::cli::{self, Command, CommandRequest, RunOptions};

/// Exact sl(2)-frame derivation and verification for 3D flows.
#[derive(Parser, Debug)]
#[command(name = "mcflow", version, about, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print M, alpha, beta, gamma, the potential A and its scale.
    Derive(Common),
    /// Run the exact verification suite and the numeric oracle.
    Verify(Common),
    /// Integrate with RK4 and measure first-integral drift.
    Integrate(Common),
    /// Sample one check (or every check) at random grid points.
    Sample {
        #[command(flatten)]
        common: Common,
        /// Check name, e.g. sl2.uv.
        #[arg(long)]
        check: Option<String>,
    },
    /// Parse and verify a .sys file.
    CheckFile(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Builtin name (guillot, dh_classic, dh_symmetric, heisenberg_example) or .sys path.
    system: String,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Sign branch of the second integral.
    #[arg(long, value_parser = parse_eps, allow_hyphen_values = true)]
    eps: Option<i8>,
    /// Conformal factor rho for the transformed frame.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    /// Function f in sigma = alpha - 1/2 dlog(rho) + f gamma.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Sample points per identity.
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Integration end time.
    #[arg(long, default_value_t = 0.2)]
    t: f64,
    /// Start point x,y,z.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, default_value = "1,1,1")]
    from: [f64; 3],
    /// Sampling seed.
    #[arg(long, default_value_t = RunOptions::default().seed)]
    seed: u64,
    /// Tolerance for sampled zero residuals.
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    /// Sampling box lo,hi (integers) applied to every coordinate.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true, default_value = "-3,3")]
    sample_box: (i64, i64),
    /// Drift tolerance for rational integrals; ten times this for integrals with logarithms.
    #[arg(long, default_value_t = 1e-8)]
    drift_tolerance: f64,
}

fn parse_eps(s: &str) -> Result<i8, String> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got `{s}`")),
    }
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(parts).map_err(|_| format!("expected three comma-separated numbers, got `{s}`"))
}

fn parse_box(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(lo)?, p(hi)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, check) = match cli.command {
        Cmd::Derive(c) => (Command::Derive, c, None),
        Cmd::Verify(c) => (Command::Verify, c, None),
        Cmd::Integrate(c) => (Command::Integrate, c, None),
        Cmd::Sample { common, check } => (Command::Sample, common, check),
        Cmd::CheckFile(c) => (Command::CheckFile, c, None),
    };
    let options = RunOptions {
        eps: common.eps,
        rho: common.rho,
        f: common.f,
        points: common.points,
        h: common.h,
        t: common.t,
        from: common.from,
        seed: common.seed,
        tolerance: common.tolerance,
        sample_box: common.sample_box,
        drift_tolerance: common.drift_tolerance,
        check,
    };
    let req = CommandRequest { command, system: common.system, options };
    let doc = cli::run(&req);
    let text = if common.json { cli::render_json(&doc) } else { cli::render_text(&doc) };
    print!("{text}");
    ExitCode::from(doc.exit_status as u8)
}
