//! Gorenstein profiles and checkable verdicts for the grade, duality and
//! reflexivity statements, swept over enumerated modules.

mod findim;
mod grades;
mod profile;
mod reflexive;
mod suite;
mod verdict;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::modules::{enumerate_modules, Corpus, Module};

pub use findim::{findim_bounds, nakayama_report, verify_finitistic, FinDimBounds};
pub use grades::{
    auslander_crosscheck, pseudo_null_crosscheck, pure_criteria, quasi_grade_crosscheck, random_short_exact,
    verify_duality_grade_t, verify_ext_purity, verify_grade_exact_seq, verify_triple_ext, ShortExact,
};
pub use profile::{gorenstein_profile, GorensteinProfile, SideProfile};
pub use reflexive::{
    evaluation_sequences, free_embedding, ideal_reflexivity_report, reduced_grade_projective, reduced_grade_reflexive,
    reflexive_criterion, reflexive_implies_projective_scan, syzygy_torsionfree, transpose_projective,
    verify_cokernel_family, verify_dclass, CokernelFamily,
};
pub use suite::{explore_purity_question, run_verifier, verifier_ids, verify_all, PurityExploration};
pub use verdict::{ModuleRecord, Status, TheoremVerdict, Witness};

/// Budgets shared by every sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Homological degree bound (resolution lengths, grade bounds).
    pub cap: usize,
    /// Total dimension bound for enumerated modules.
    pub dim_cap: usize,
    pub lattice_cap: usize,
    /// Representations tried per dimension vector before giving up on it.
    pub max_candidates: u64,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { cap: 6, dim_cap: 4, lattice_cap: 1_000_000, max_candidates: 1 << 20, seed: 0 }
    }
}

/// An algebra with its caps and lazily computed profile and module corpora.
pub struct Context {
    pub alg: Algebra,
    pub caps: Caps,
    profile: OnceLock<GorensteinProfile>,
    left: OnceLock<Corpus>,
    right: OnceLock<Corpus>,
}

impl Context {
    pub fn new(alg: &Algebra, caps: Caps) -> Self {
        Context { alg: alg.clone(), caps, profile: OnceLock::new(), left: OnceLock::new(), right: OnceLock::new() }
    }

    pub fn profile(&self) -> &GorensteinProfile {
        self.profile.get_or_init(|| gorenstein_profile(&self.alg, self.caps.cap))
    }

    /// Left modules up to `dim_cap`, one per isomorphism class.
    pub fn left(&self) -> &Corpus {
        self.left.get_or_init(|| enumerate_modules(&self.alg, self.caps.dim_cap, self.caps.max_candidates))
    }

    /// Right modules (over the opposite algebra) up to `dim_cap`.
    pub fn right(&self) -> &Corpus {
        self.right.get_or_init(|| enumerate_modules(&self.alg.op(), self.caps.dim_cap, self.caps.max_candidates))
    }

    /// Corpus for one side: `false` is left, `true` is right.
    pub fn corpus(&self, opposite: bool) -> &Corpus {
        if opposite {
            self.right()
        } else {
            self.left()
        }
    }

    pub fn side_alg(&self, opposite: bool) -> Algebra {
        if opposite {
            self.alg.op()
        } else {
            self.alg.clone()
        }
    }

    /// Indecomposable projectives and injectives of one side, added to sweeps so
    /// that they are covered even beyond `dim_cap`.
    pub fn standard_modules(&self, opposite: bool) -> Vec<Module> {
        let a = self.side_alg(opposite);
        let n = a.num_vertices();
        (0..n).flat_map(|v| [Module::projective(&a, v), Module::injective(&a, v), Module::simple(&a, v)]).collect()
    }

    /// Corpus plus the standard modules.
    pub fn sweep(&self, opposite: bool) -> Vec<Module> {
        let mut out = self.corpus(opposite).modules.clone();
        out.extend(self.standard_modules(opposite).into_iter().filter(|m| m.dim() > self.caps.dim_cap));
        out
    }
}
