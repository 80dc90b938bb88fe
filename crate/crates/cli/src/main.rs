use std::io::Write;
use std::process::ExitCode;

use ccs_cli::{execute, parse_field, parse_vars, render, run_batch, Command, Failure, Format, Request, DEFAULT_SEED};
use clap::Parser;

/// Characteristic classes of projective schemes given by homogeneous ideals.
#[derive(Parser, Debug)]
#[command(name = "ccs", version)]
struct Args {
    /// segre, fulton, csm, milnor, euler, euleraffine, degrees or excess.
    #[arg(required_unless_present = "batch")]
    command: Option<Command>,

    /// Comma-separated generators. For `excess`, the Segre class as a polynomial in H.
    #[arg(required_unless_present = "batch")]
    generators: Option<String>,

    /// Ordered variable names, comma separated. Inferred from the input when omitted.
    #[arg(long, default_value = "")]
    vars: String,

    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: ccs_core::FieldSpec,

    /// Seed for the random hyperplane sections.
    #[arg(long, env = "CCS_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, default_value = "text")]
    format: Format,

    /// Compute CSM-type answers over a prime field anyway.
    #[arg(long)]
    force: bool,

    /// Drop redundant generators before computing.
    #[arg(long)]
    simplify: bool,

    /// Degree of the hypersurfaces, for `excess`.
    #[arg(long)]
    d: Option<i64>,

    /// Ambient dimension, for `excess`.
    #[arg(long)]
    n: Option<usize>,

    /// Process a file of `<command>; <vars>; <field>; <generators>` lines, writing JSON lines.
    #[arg(long, conflicts_with_all = ["command", "generators"])]
    batch: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();

    if let Some(path) = &args.batch {
        let src = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("ccs: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let mut out = std::io::stdout().lock();
        for record in run_batch(&src, args.seed, args.force) {
            let _ = writeln!(out, "{record}");
        }
        return ExitCode::SUCCESS;
    }

    let command = args.command.expect("clap enforces a command");
    let mut req = Request::new(command, args.generators.unwrap_or_default());
    req.field = args.field;
    req.vars = parse_vars(&args.vars);
    req.seed = args.seed;
    req.format = args.format;
    req.force = args.force;
    req.simplify = args.simplify;
    if command == Command::Excess {
        req.excess = args.d.zip(args.n);
    }

    match execute(&req) {
        Ok(outcome) => {
            println!("{}", render(&outcome, req.format));
            ExitCode::SUCCESS
        }
        Err(f) => report(&f),
    }
}

fn report(f: &Failure) -> ExitCode {
    eprintln!("ccs: {f}");
    ExitCode::from(f.exit_code() as u8)
}
