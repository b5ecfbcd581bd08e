use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zariski_cli::{run, Format, Overrides};

/// Zariski decompositions, P^1 models and small-section probes from JSON job specs.
#[derive(Debug, Parser)]
#[command(name = "zariski", version)]
struct Args {
    /// Job spec file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Numerical tolerance, overriding the job spec.
    #[arg(long)]
    tol: Option<f64>,
    /// Output format, overriding the job spec.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads for section enumeration.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match &args.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let out = run(
        &input,
        &Overrides {
            tol: args.tol,
            format: args.format,
            jobs: args.jobs,
        },
    );
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
