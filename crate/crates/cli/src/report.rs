//! The JSON document printed by every command.

use homdual::algebra::Algebra;
use homdual::gorenstein::{Caps, Status};
use homdual::modules::Module;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    Inconclusive,
    Refuted,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Refuted => 2,
            Outcome::Inconclusive => 3,
        }
    }

    pub fn of_status(s: Status) -> Outcome {
        match s {
            Status::Verified => Outcome::Ok,
            Status::Inconclusive => Outcome::Inconclusive,
            Status::Refuted => Outcome::Refuted,
        }
    }

    pub fn decided(yes: bool) -> Outcome {
        if yes {
            Outcome::Ok
        } else {
            Outcome::Inconclusive
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AlgebraInfo {
    pub file: String,
    pub digest: String,
    pub field: u32,
    pub dim: usize,
    pub vertices: Vec<String>,
    pub basis: Vec<String>,
}

impl AlgebraInfo {
    pub fn new(file: &str, a: &Algebra) -> Self {
        AlgebraInfo {
            file: file.to_string(),
            digest: a.digest().to_string(),
            field: a.field().p(),
            dim: a.dim(),
            vertices: a.vertex_names().to_vec(),
            basis: a.labels().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub algebra: AlgebraInfo,
    pub caps: Caps,
    pub module: Option<ModuleSummary>,
    pub results: Vec<Value>,
    pub status: Outcome,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub spec: String,
    pub side: &'static str,
    pub dim: usize,
    pub dim_vector: Vec<usize>,
}

impl ModuleSummary {
    pub fn new(spec: &str, m: &Module) -> Self {
        ModuleSummary { spec: spec.to_string(), side: side(m), dim: m.dim(), dim_vector: m.dim_vector() }
    }
}

pub fn side(m: &Module) -> &'static str {
    if m.alg().is_opposite() {
        "right"
    } else {
        "left"
    }
}

/// Results of one command before they are wrapped in a [`Report`].
#[derive(Debug, Default)]
pub struct Findings {
    pub results: Vec<Value>,
    pub outcome: Option<Outcome>,
}

impl Findings {
    pub fn push(&mut self, v: impl Serialize) {
        self.results.push(serde_json::to_value(v).expect("reports serialize"));
    }

    /// Keep the worst outcome seen.
    pub fn outcome(&mut self, o: Outcome) {
        self.outcome = Some(self.outcome.map_or(o, |p| p.max(o)));
    }

    pub fn status(&self) -> Outcome {
        self.outcome.unwrap_or(Outcome::Ok)
    }
}
