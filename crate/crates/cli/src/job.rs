use serde::Deserialize;
use serde_json::Value;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    Certify,
    P1Decompose,
    P1Degree,
    P1Pair,
    P1Vol,
    SectionsCount,
    SectionsSigma,
    ProbeDist,
    ProbeGromov,
    ProbeOrth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default = "empty_object")]
    pub payload: Value,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub output: Option<Format>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}
