use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::linalg::Mat;
use crate::modules::{Module, ModuleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

/// A module written out as generator matrices, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    /// True for a right module, i.e. a module over the opposite algebra.
    pub opposite: bool,
    pub dim: usize,
    pub dim_vector: Vec<usize>,
    /// Action of each generator (idempotents, then arrows), `dim x dim` row-major.
    pub gens: Vec<Vec<u32>>,
}

impl ModuleRecord {
    pub fn of(m: &Module) -> Self {
        ModuleRecord {
            opposite: m.alg().is_opposite(),
            dim: m.dim(),
            dim_vector: m.dim_vector(),
            gens: m.gens().iter().map(Mat::flatten).collect(),
        }
    }

    /// Rebuild over `alg` (or its opposite, as recorded).
    pub fn rebuild(&self, alg: &Algebra) -> Result<Module, ModuleError> {
        let side = if self.opposite != alg.is_opposite() { alg.op() } else { alg.clone() };
        let f = side.field();
        let d = self.dim;
        let mut mats = Vec::new();
        for data in &self.gens {
            if data.len() != d * d {
                return Err(ModuleError::Shape(format!("generator needs {d}x{d} entries")));
            }
            mats.push(Mat::from_vec(f, d, d, data.clone()));
        }
        Module::new(&side, d, mats)
    }
}

/// A counterexample or the module an inconclusive check stalled on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub modules: Vec<ModuleRecord>,
}

/// Outcome of checking one statement over one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub id: String,
    pub algebra: String,
    pub status: Status,
    /// False when the statement's hypothesis fails; the verdict is then vacuous.
    pub hypothesis_met: bool,
    pub inputs: BTreeMap<String, String>,
    pub checked: usize,
    pub inconclusive: usize,
    pub evidence: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub witness: Option<Witness>,
}

/// Accumulates checks for one verdict.
#[derive(Debug)]
pub(crate) struct Tally {
    id: &'static str,
    algebra: String,
    hypothesis_met: bool,
    inputs: BTreeMap<String, String>,
    checked: usize,
    inconclusive: usize,
    evidence: BTreeMap<String, String>,
    notes: Vec<String>,
    witness: Option<Witness>,
    stalled: Option<Witness>,
}

impl Tally {
    pub(crate) fn new(id: &'static str, alg: &Algebra) -> Self {
        Tally {
            id,
            algebra: alg.digest().to_string(),
            hypothesis_met: true,
            inputs: BTreeMap::new(),
            checked: 0,
            inconclusive: 0,
            evidence: BTreeMap::new(),
            notes: Vec::new(),
            witness: None,
            stalled: None,
        }
    }

    pub(crate) fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn evidence(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.evidence.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    pub(crate) fn hypothesis(&mut self, met: bool) -> &mut Self {
        self.hypothesis_met = met;
        self
    }

    pub(crate) fn hypothesis_met(&self) -> bool {
        self.hypothesis_met
    }

    /// Record one decided check; the first failure becomes the witness.
    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String, modules: &[&Module]) -> bool {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness =
                Some(Witness { description: what(), modules: modules.iter().map(|m| ModuleRecord::of(m)).collect() });
        }
        ok
    }

    /// Record one check the caps could not decide.
    pub(crate) fn undecided(&mut self, what: impl FnOnce() -> String, modules: &[&Module]) {
        self.inconclusive += 1;
        if self.stalled.is_none() {
            self.stalled =
                Some(Witness { description: what(), modules: modules.iter().map(|m| ModuleRecord::of(m)).collect() });
        }
    }

    /// `Some(true)` passes, `Some(false)` fails, `None` is undecided.
    pub(crate) fn decide(&mut self, v: Option<bool>, what: impl FnOnce() -> String, modules: &[&Module]) {
        match v {
            Some(ok) => {
                self.check(ok, what, modules);
            }
            None => self.undecided(what, modules),
        }
    }

    pub(crate) fn finish(self) -> TheoremVerdict {
        let status = if self.witness.is_some() {
            Status::Refuted
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Verified
        };
        let mut notes = self.notes;
        if !self.hypothesis_met {
            notes.push("hypothesis not satisfied; nothing to verify".into());
        }
        let witness = self.witness.or(if status == Status::Inconclusive { self.stalled } else { None });
        TheoremVerdict {
            id: self.id.to_string(),
            algebra: self.algebra,
            status,
            hypothesis_met: self.hypothesis_met,
            inputs: self.inputs,
            checked: self.checked,
            inconclusive: self.inconclusive,
            evidence: self.evidence,
            notes,
            witness,
        }
    }
}

/// Combine verdicts of the same statement into one.
pub(crate) fn merge(id: &str, alg: &Algebra, parts: Vec<TheoremVerdict>) -> TheoremVerdict {
    let mut out = TheoremVerdict {
        id: id.to_string(),
        algebra: alg.digest().to_string(),
        status: Status::Verified,
        hypothesis_met: false,
        inputs: BTreeMap::new(),
        checked: 0,
        inconclusive: 0,
        evidence: BTreeMap::new(),
        notes: Vec::new(),
        witness: None,
    };
    out.evidence.insert("instances".into(), parts.len().to_string());
    for v in parts {
        out.hypothesis_met |= v.hypothesis_met;
        out.checked += v.checked;
        out.inconclusive += v.inconclusive;
        let rank = |s: Status| match s {
            Status::Verified => 0,
            Status::Inconclusive => 1,
            Status::Refuted => 2,
        };
        if rank(v.status) > rank(out.status) {
            out.status = v.status;
            out.witness = v.witness;
        }
        for n in v.notes {
            if !out.notes.contains(&n) {
                out.notes.push(n);
            }
        }
        for (k, x) in v.inputs {
            out.inputs.entry(k).or_insert(x);
        }
    }
    out.notes.retain(|n| !n.starts_with("hypothesis not satisfied"));
    if !out.hypothesis_met {
        out.notes.push("hypothesis not satisfied; nothing to verify".into());
    }
    out
}
