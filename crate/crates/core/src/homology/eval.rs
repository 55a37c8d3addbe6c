use serde::{Deserialize, Serialize};

use crate::linalg::Mat;
use crate::modules::{hom_space, HomSpace, Module, ModuleMap};

use super::resolution::{min_proj_resolution, transpose_from};
use super::HomologyError;

/// `M* = Hom(M, Λ)` with its action of the opposite algebra, `φ·λ = (m ↦ φ(m)λ)`.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub module: Module,
    pub hom: HomSpace,
}

pub fn dual_module(m: &Module) -> DualModule {
    let alg = m.alg();
    let hom = hom_space(m, &Module::regular(alg)).expect("same algebra");
    let op = alg.op();
    let f = alg.field();
    let h = hom.dim();
    let gens = (0..op.num_gens())
        .map(|g| {
            let r = alg.right_mult_by(op.gen_elem(g));
            let cols: Vec<Vec<u32>> = (0..h).map(|j| hom.coords(&r.mul(&hom.matrix(j)))).collect();
            if cols.is_empty() {
                Mat::zeros(f, 0, 0)
            } else {
                Mat::from_cols(f, h, &cols)
            }
        })
        .collect();
    DualModule { module: Module::from_gens_unchecked(&op, h, gens), hom }
}

/// `f*: N* → M*`, `ψ ↦ ψ ∘ f`.
pub fn dual_map(f: &ModuleMap, source_dual: &DualModule, target_dual: &DualModule) -> ModuleMap {
    let field = f.source.alg().field();
    let (hm, hn) = (source_dual.hom.dim(), target_dual.hom.dim());
    let cols: Vec<Vec<u32>> =
        (0..hn).map(|j| source_dual.hom.coords(&target_dual.hom.matrix(j).mul(&f.matrix))).collect();
    let matrix = if cols.is_empty() { Mat::zeros(field, hm, 0) } else { Mat::from_cols(field, hm, &cols) };
    ModuleMap::unchecked(target_dual.module.clone(), source_dual.module.clone(), matrix)
}

/// `σ_M: M → M**`, `m ↦ (φ ↦ φ(m))`, together with `M*` and `M**`.
pub fn evaluation_map(m: &Module) -> (ModuleMap, DualModule, DualModule) {
    let d1 = dual_module(m);
    let d2 = dual_module(&d1.module);
    let f = m.alg().field();
    let n = m.alg().dim();
    let h = d1.hom.dim();
    let mut cols = Vec::with_capacity(m.dim());
    for c in 0..m.dim() {
        // Column j of ψ_m is φ_j(m) = φ_j e_c.
        let mut psi = Mat::zeros(f, n, h);
        for j in 0..h {
            let phi = d1.hom.matrix(j);
            for r in 0..n {
                psi.set(r, j, phi.get(r, c));
            }
        }
        cols.push(d2.hom.coords(&psi));
    }
    let matrix =
        if cols.is_empty() { Mat::zeros(f, d2.module.dim(), 0) } else { Mat::from_cols(f, d2.module.dim(), &cols) };
    let sigma = ModuleMap::unchecked(m.clone(), d2.module.clone(), matrix);
    (sigma, d1, d2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dim: usize,
    pub dual_dim: usize,
    pub double_dual_dim: usize,
    pub ker_dim: usize,
    pub coker_dim: usize,
    pub torsionless: bool,
    pub reflexive: bool,
    /// `dim Ext^1(Tr M, Λ)` and `dim Ext^2(Tr M, Λ)` over the opposite algebra.
    pub ext1_tr_dim: usize,
    pub ext2_tr_dim: usize,
}

/// Evaluation map data, checked against the Ext groups of the transpose.
pub fn eval_report(m: &Module) -> Result<EvalReport, HomologyError> {
    let (sigma, d1, d2) = evaluation_map(m);
    if !sigma.is_homomorphism() {
        return Err(HomologyError::Inconsistent("evaluation map is not a homomorphism".into()));
    }
    let rank = sigma.rank();
    let ker_dim = m.dim() - rank;
    let coker_dim = d2.module.dim() - rank;
    let tr = transpose_from(&min_proj_resolution(m, 1));
    let rt = min_proj_resolution(&tr, 3);
    let e1 = rt.ext(1).expect("depth 3").dim();
    let e2 = rt.ext(2).expect("depth 3").dim();
    if e1 != ker_dim || e2 != coker_dim {
        return Err(HomologyError::Inconsistent(format!(
            "ker σ = {ker_dim}, coker σ = {coker_dim}, but Ext^1(Tr M) = {e1}, Ext^2(Tr M) = {e2}"
        )));
    }
    Ok(EvalReport {
        dim: m.dim(),
        dual_dim: d1.module.dim(),
        double_dual_dim: d2.module.dim(),
        ker_dim,
        coker_dim,
        torsionless: ker_dim == 0,
        reflexive: ker_dim == 0 && coker_dim == 0,
        ext1_tr_dim: e1,
        ext2_tr_dim: e2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::transpose;
    use crate::modules::{enumerate_modules, is_isomorphic, random_module, IsoOptions};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dual_examples() {
        let a2 = fixtures::a2();
        let p = Module::projective(&a2, 0);
        let d = dual_module(&p);
        assert!(d.module.validate().is_ok());
        assert!(is_isomorphic(&d.module, &Module::projective(&a2.op(), 0), &IsoOptions::default()).unwrap().is_yes());
        assert!(dual_module(&Module::simple(&a2, 0)).module.is_zero());
        let dn = fixtures::dual_numbers();
        let s = Module::simple(&dn, 0);
        let d = dual_module(&s);
        assert!(is_isomorphic(&d.module, &Module::simple(&dn.op(), 0), &IsoOptions::default()).unwrap().is_yes());
    }

    #[test]
    fn eval_examples() {
        for (_, a) in fixtures::all() {
            for v in 0..a.num_vertices() {
                let r = eval_report(&Module::projective(&a, v)).unwrap();
                assert!(r.reflexive);
            }
        }
        let dn = fixtures::dual_numbers();
        for m in enumerate_modules(&dn, 4, 1 << 20).modules {
            assert!(eval_report(&m).unwrap().reflexive);
        }
        let a2 = fixtures::a2();
        let r = eval_report(&Module::simple(&a2, 0)).unwrap();
        assert_eq!((r.ker_dim, r.coker_dim), (1, 0));
        assert!(!r.torsionless);
        let r = eval_report(&Module::simple(&a2, 1)).unwrap();
        assert!(r.reflexive);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn evaluation_sequences_hold_both_ways(seed in any::<u64>(), which in 0usize..5) {
            let (_, a) = fixtures::all().swap_remove(which);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&a, &mut rng, 6);
            let (sigma, d1, _) = evaluation_map(&m);
            prop_assert!(sigma.is_homomorphism());
            prop_assert!(d1.module.validate().is_ok());
            prop_assert!(eval_report(&m).is_ok());
            prop_assert!(eval_report(&transpose(&m)).is_ok());
        }

        #[test]
        fn dual_map_is_functorial(seed in any::<u64>(), which in 0usize..5) {
            let (_, a) = fixtures::all().swap_remove(which);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&a, &mut rng, 5);
            let v: Vec<u32> = (0..m.dim()).map(|i| ((seed >> i) & 1) as u32).collect();
            let u = m.spin(&[v]);
            let (_, proj) = m.quotient(&u);
            let dm = dual_module(&m);
            let dq = dual_module(&proj.target);
            let g = dual_map(&proj, &dm, &dq);
            prop_assert!(g.is_homomorphism());
            // Hom(−, Λ) is left exact: the dual of an epimorphism is injective.
            prop_assert!(g.is_injective());
        }
    }
}
