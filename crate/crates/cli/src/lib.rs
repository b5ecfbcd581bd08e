//! JSON job specs in, tables / CSV / JSON out.

pub mod commands;
pub mod error;
pub mod job;
pub mod render;

use serde_json::Value;

pub use commands::Context;
pub use error::CliError;
pub use job::{Command, Format, JobSpec, DEFAULT_TOL};
pub use render::Artifact;

/// Overrides taken from the command line; they win over the job spec.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
}

/// What the process prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_job(input: &str) -> Result<JobSpec, CliError> {
    serde_json::from_str(input).map_err(CliError::malformed)
}

fn execute(input: &str, o: &Overrides) -> (Format, Result<Artifact, CliError>) {
    let job = match parse_job(input) {
        Ok(j) => j,
        Err(e) => return (o.format.unwrap_or_default(), Err(e)),
    };
    let format = o.format.or(job.output).unwrap_or_default();
    let tol = o.tol.or(job.tol).unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return (format, Err(CliError::Malformed(format!("tol must be positive, got {tol}"))));
    }
    let ctx = Context {
        tol,
        jobs: o.jobs.unwrap_or(1).max(1),
    };
    (format, commands::run(job.command, job.payload, &ctx))
}

/// Runs one job end to end.
pub fn run(input: &str, o: &Overrides) -> Outcome {
    let (format, result) = execute(input, o);
    match result {
        Ok(a) => Outcome {
            code: 0,
            stdout: a.render(format),
            stderr: String::new(),
        },
        Err(CliError::Domain { message, payload }) => {
            let rows = vec![vec![
                payload["outcome"].as_str().unwrap_or_default().to_string(),
                message.clone(),
            ]];
            let a = Artifact::new(payload, &["outcome", "message"], rows);
            Outcome {
                code: 3,
                stdout: a.render(format),
                stderr: format!("{message}\n"),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Convenience for callers holding a parsed value.
pub fn run_value(job: &Value, o: &Overrides) -> Outcome {
    run(&job.to_string(), o)
}
