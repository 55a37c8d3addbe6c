//! Resolutions, `Ext^i(−, Λ)`, the transpose, evaluation maps, grades and
//! the dimension invariants built on them.

mod dclass;
mod eval;
mod grade;
mod injective;
mod projective;
mod purity;
mod resolution;

use thiserror::Error;

use crate::modules::ModuleError;

pub use dclass::{d_class_chain, DClassChain, DClassStep};
pub use eval::{dual_map, dual_module, eval_report, evaluation_map, DualModule, EvalReport};
pub use grade::{
    first_nonvanishing, grade, grade_report, is_k_torsionfree, reduced_grade, strong_grade, syzygy, GradeReport,
    StrongGrade, TorsionfreeReport,
};
pub(crate) use injective::dominant_from;
pub use injective::{
    dims, dominant_dimension, injective_envelope, injective_pds, min_inj_resolution, sum_pd, Dims, InjResolution,
};
pub use projective::{projective_cover, Cover, ProjMap, ProjectiveSum};
pub use purity::{is_pseudo_null, pseudo_null_part, pseudo_null_target, purity_classify, PurityReport};
pub use resolution::{min_proj_resolution, transpose, transpose_from, ExtModule, ProjComplex, ProjResolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("stage {stage} of the chain is not torsionless")]
    NotTorsionless { stage: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `Ext^i(M, Λ)` as a module over the opposite algebra.
pub fn ext_lambda(m: &crate::modules::Module, i: usize) -> ExtModule {
    min_proj_resolution(m, i + 1).ext(i).expect("resolution computed to depth i + 1")
}
