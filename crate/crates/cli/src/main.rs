use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fopt_cli::commands::{self, OptimizeArgs, SideArg, Transform};
use fopt_cli::{verify, CliError, CliResult, EXIT_CHECK_FAILED, EXIT_OK};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fopt", version, about = "Certified bounds for pair-correlation Fourier extremal problems")]
struct Cli {
    /// Working precision of interval computations, in bits (minimum 64).
    #[arg(long, global = true, env = "FOPT_PRECISION_BITS", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision_bits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified value of one functional at one polynomial.
    Eval {
        /// ep1, ep2, ep3, ep4, j1 or j2.
        #[arg(long)]
        problem: String,
        /// Even coefficients, e.g. "5,-1" for 5 - x^2, or one of p1, p2, p3, q2.
        #[arg(long)]
        poly: String,
        /// Shift truncation for j1/j2.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Re-derive every published constant and report pass/fail.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Closed-form triangle bounds, optionally with explicit configurations.
    Triangle {
        #[arg(long, allow_hyphen_values = true)]
        ell: String,
        /// Bandwidth Delta in [4/3, 2) for the general bounds.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = SideOpt::Both)]
        side: SideOpt,
        #[arg(long)]
        emit_config: bool,
    },
    /// Multistart search for a good polynomial, certified at the end.
    Optimize {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 8)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting polynomial (repeatable); coefficients or an alias.
        #[arg(long = "seed-poly")]
        seed_poly: Vec<String>,
        /// Objective evaluations per start.
        #[arg(long)]
        max_evals: Option<usize>,
    },
    /// The constant c0 and Dirichlet kernel minima.
    Constants {
        /// Orders n for the Dirichlet kernel minima.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 5, 10, 50, 100, 200])]
        n: Vec<u32>,
    },
    /// CSV data for plots.
    PlotData {
        #[command(subcommand)]
        what: PlotWhat,
    },
}

#[derive(Subcommand)]
enum PlotWhat {
    /// Columns ell, upper, lower, conjecture.
    #[command(alias = "bounds_vs_ell")]
    BoundsVsEll {
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long, default_value = "10")]
        to: String,
        #[arg(long, default_value = "0.01")]
        step: String,
    },
    /// Columns x, ghat(x).
    Ghat(TransformArgs),
    /// Columns x, hhat(x).
    Hhat(TransformArgs),
}

#[derive(clap::Args)]
struct TransformArgs {
    #[arg(long)]
    poly: String,
    #[arg(long, default_value = "-1.2", allow_hyphen_values = true)]
    from: String,
    #[arg(long, default_value = "1.2", allow_hyphen_values = true)]
    to: String,
    #[arg(long, default_value_t = 241)]
    points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideOpt {
    Upper,
    Lower,
    Both,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> CliResult<(String, i32)> {
    let prec = cli.precision_bits;
    Ok(match cli.command {
        Command::Eval { problem, poly, m } => (json(&commands::eval(&problem, &poly, m, prec)?), EXIT_OK),
        Command::Verify { json: as_json } => {
            let r = verify::run(&verify::VerifyInputs::default(), prec);
            let code = if r.all_pass { EXIT_OK } else { EXIT_CHECK_FAILED };
            (if as_json { json(&r) } else { r.table() }, code)
        }
        Command::Triangle { ell, delta, side, emit_config } => {
            let side = match side {
                SideOpt::Upper => SideArg::Upper,
                SideOpt::Lower => SideArg::Lower,
                SideOpt::Both => SideArg::Both,
            };
            (json(&commands::triangle(&ell, delta.as_deref(), side, emit_config, prec)?), EXIT_OK)
        }
        Command::Optimize { problem, degree, starts, seed, seed_poly, max_evals } => {
            if starts == 0 {
                return Err(CliError::usage("--starts must be at least 1"));
            }
            let args = OptimizeArgs { problem: &problem, degree, starts, seed, seed_polys: &seed_poly, max_evals };
            (json(&commands::optimize(&args)?), EXIT_OK)
        }
        Command::Constants { n } => (json(&commands::constants(&n, prec)?), EXIT_OK),
        Command::PlotData { what } => {
            let csv = match what {
                PlotWhat::BoundsVsEll { from, to, step } => commands::plot_bounds(&from, &to, &step, prec)?,
                PlotWhat::Ghat(a) => commands::plot_transform(Transform::Ghat, &a.poly, &a.from, &a.to, a.points)?,
                PlotWhat::Hhat(a) => commands::plot_transform(Transform::Hhat, &a.poly, &a.from, &a.to, a.points)?,
            };
            (csv, EXIT_OK)
        }
    })
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    let _ = stdout.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            emit(&out);
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.report.message);
            emit(&json(&e.report));
            ExitCode::from(e.code as u8)
        }
    }
}
