use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::extent::Extent;
use crate::linalg::{kernel_basis, Mat, Subspace};
use crate::modules::{all_submodules, hom_space, Module};

use super::grade::grade;
use super::injective::min_inj_resolution;

/// `I'_0 ⊕ I'_1` from the minimal injective resolution of `_ΛΛ`, cached per algebra side.
pub fn pseudo_null_target(alg: &Algebra) -> Module {
    let (dim, gens) = alg.cache().pseudo_null_target.get_or_init(|| {
        let r = min_inj_resolution(&Module::regular(alg), 1);
        let parts: Vec<&Module> = r.term_modules.iter().take(2).collect();
        let m = Module::direct_sum(&parts).expect("same algebra");
        (m.dim(), m.gens().to_vec())
    });
    Module::from_gens_unchecked(alg, *dim, gens.clone())
}

/// `Hom(M, I'_0 ⊕ I'_1) = 0`.
pub fn is_pseudo_null(m: &Module) -> bool {
    hom_space(m, &pseudo_null_target(m.alg())).expect("same algebra").dim() == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityReport {
    pub pseudo_null: bool,
    pub grade: Extent,
    /// `None` when the lattice was incomplete or some grade stayed undecided.
    pub pure: Option<bool>,
    pub lattice_complete: bool,
    /// Basis of a nonzero submodule whose grade differs from `grade M`.
    pub witness: Option<Vec<Vec<u32>>>,
}

/// Pseudo-null test and purity (every nonzero submodule has the grade of `M`).
pub fn purity_classify(m: &Module, bound: usize, lattice_cap: usize) -> PurityReport {
    let g = grade(m, bound);
    let pseudo_null = is_pseudo_null(m);
    if m.is_zero() {
        return PurityReport { pseudo_null, grade: g, pure: None, lattice_complete: true, witness: None };
    }
    let lattice = all_submodules(m, lattice_cap);
    let mut undecided = false;
    for (s, x) in lattice.nonzero_modules() {
        match grade(&x, bound).decided_eq(g) {
            Some(true) => {}
            Some(false) => {
                return PurityReport {
                    pseudo_null,
                    grade: g,
                    pure: Some(false),
                    lattice_complete: lattice.complete,
                    witness: Some(s.vectors()),
                }
            }
            None => undecided = true,
        }
    }
    let pure = if lattice.complete && !undecided { Some(true) } else { None };
    PurityReport { pseudo_null, grade: g, pure, lattice_complete: lattice.complete, witness: None }
}

/// Largest pseudo-null submodule: the common kernel of all maps `M → I'_0 ⊕ I'_1`.
/// A submodule lies in it iff every map from it to that injective (all of which
/// extend to `M`) vanishes.
pub fn pseudo_null_part(m: &Module) -> Subspace {
    let f = m.alg().field();
    let hom = hom_space(m, &pseudo_null_target(m.alg())).expect("same algebra");
    let stacked = (0..hom.dim()).fold(Mat::zeros(f, 0, m.dim()), |acc, j| acc.vstack(&hom.matrix(j)));
    Subspace::from_rows(&kernel_basis(&stacked))
}
