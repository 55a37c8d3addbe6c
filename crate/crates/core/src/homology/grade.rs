use serde::{Deserialize, Serialize};

use crate::extent::Extent;
use crate::linalg::Subspace;
use crate::modules::{all_submodules, Module};

use super::resolution::{min_proj_resolution, transpose_from, ProjResolution};

/// Least `i ≥ from` in `from..=bound` with `Ext^i(M, Λ) ≠ 0`.
///
/// Reports `Infinite` when the vanishing range already covers everything the
/// resolution can produce: past a finite `pd`, or a full period of a periodic resolution.
pub fn first_nonvanishing(r: &ProjResolution, from: usize, bound: usize) -> Extent {
    if r.module.is_zero() {
        return Extent::Infinite;
    }
    for i in from..=bound {
        let e = r.ext(i).expect("resolution deep enough");
        if !e.is_zero() {
            return Extent::Exact(i);
        }
    }
    if let Extent::Exact(n) = r.pd {
        if n <= bound {
            return Extent::Infinite;
        }
    }
    if let Some((a, b)) = r.period {
        // Ext^t repeats with period b - a for t > a; degrees up to b cover a period.
        if b <= bound && from <= a + 1 {
            return Extent::Infinite;
        }
    }
    Extent::AtLeast(bound + 1)
}

pub fn grade(m: &Module, bound: usize) -> Extent {
    first_nonvanishing(&min_proj_resolution(m, bound + 1), 0, bound)
}

/// Least `i ≥ 1` with `Ext^i(M, Λ) ≠ 0`.
pub fn reduced_grade(m: &Module, bound: usize) -> Extent {
    first_nonvanishing(&min_proj_resolution(m, bound + 1), 1, bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongGrade {
    pub value: Extent,
    /// False when the submodule lattice hit its cap; `value` is then only an upper bound.
    pub complete: bool,
    /// A submodule attaining the minimum.
    #[serde(skip)]
    pub witness: Option<Subspace>,
}

/// Minimum of `grade X` over nonzero submodules `X`.
pub fn strong_grade(m: &Module, bound: usize, lattice_cap: usize) -> StrongGrade {
    if m.is_zero() {
        return StrongGrade { value: Extent::Infinite, complete: true, witness: None };
    }
    let lattice = all_submodules(m, lattice_cap);
    let mut value = Extent::Infinite;
    let mut witness = None;
    for (s, x) in lattice.nonzero_modules() {
        let g = grade(&x, bound);
        let lower = value.min(g);
        if lower != value {
            value = lower;
            witness = Some(s.clone());
        }
        if value == Extent::Exact(0) {
            break;
        }
    }
    StrongGrade { value, complete: lattice.complete, witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeReport {
    pub grade: Extent,
    pub reduced_grade: Extent,
    pub strong_grade: Extent,
    pub strong_grade_complete: bool,
    pub bound: usize,
}

pub fn grade_report(m: &Module, bound: usize, lattice_cap: usize) -> GradeReport {
    let r = min_proj_resolution(m, bound + 1);
    let sg = strong_grade(m, bound, lattice_cap);
    GradeReport {
        grade: first_nonvanishing(&r, 0, bound),
        reduced_grade: first_nonvanishing(&r, 1, bound),
        strong_grade: sg.value,
        strong_grade_complete: sg.complete,
        bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionfreeReport {
    pub k: usize,
    pub holds: bool,
    /// Reduced grade of `Tr M`, computed up to `k + 1`.
    pub transpose_reduced_grade: Extent,
}

/// `M` is k-torsionfree when `r.grade Tr M ≥ k + 1`.
pub fn is_k_torsionfree(m: &Module, k: usize) -> TorsionfreeReport {
    let tr = transpose_from(&min_proj_resolution(m, 1));
    let rg = reduced_grade(&tr, k);
    TorsionfreeReport { k, holds: rg.ge(k + 1) == Some(true), transpose_reduced_grade: rg }
}

/// `Ω^k M`, the kernel at step `k` of the minimal projective resolution.
pub fn syzygy(m: &Module, k: usize) -> Module {
    min_proj_resolution(m, k).syzygy(k).expect("resolution computed to depth k")
}
