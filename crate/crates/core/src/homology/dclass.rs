use crate::linalg::Subspace;
use crate::modules::{Module, ModuleMap};

use super::eval::{dual_map, dual_module, evaluation_map};
use super::projective::projective_cover;
use super::HomologyError;

/// One row `0 → T_i** → P_i → T_{i+1} → 0` of a chain.
#[derive(Clone, Debug)]
pub struct DClassStep {
    /// Vertices of the projective `Y` with the epimorphism `ρ: Y ↠ T_i*`.
    pub cover_vertices: Vec<usize>,
    /// `ρ*: T_i** ↪ Y* = P_i`.
    pub embedding: ModuleMap,
    /// `P_i ↠ T_{i+1}`.
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct DClassChain {
    pub k: usize,
    /// `T_1, ..., T_k`.
    pub stages: Vec<Module>,
    pub steps: Vec<DClassStep>,
}

/// Build `T_1 = t, T_2, ..., T_k`, each `T_{i+1}` the cokernel of the double dual
/// embedding obtained from a projective cover of `T_i*`.
pub fn d_class_chain(t: &Module, k: usize) -> Result<DClassChain, HomologyError> {
    assert!(k >= 1);
    let mut stages = vec![t.clone()];
    let mut steps = Vec::new();
    for i in 1..=k {
        let cur = stages.last().expect("nonempty").clone();
        let (sigma, d1, d2) = evaluation_map(&cur);
        if !sigma.is_injective() {
            return Err(HomologyError::NotTorsionless { stage: i });
        }
        if i == k {
            break;
        }
        let tstar = &d1.module;
        let c = projective_cover(tstar, &Subspace::full(tstar.alg().field(), tstar.dim()));
        let y = c.proj.module();
        let rho = ModuleMap::unchecked(y.clone(), tstar.clone(), c.matrix);
        let ystar = dual_module(&y);
        let emb = dual_map(&rho, &ystar, &d2);
        if !emb.is_injective() {
            return Err(HomologyError::Inconsistent("dual of an epimorphism is not monic".into()));
        }
        let (next, projection) = emb.cokernel();
        steps.push(DClassStep { cover_vertices: c.proj.vertices().to_vec(), embedding: emb, projection });
        stages.push(next);
    }
    Ok(DClassChain { k, stages, steps })
}
