use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::extent::Extent;
use crate::linalg::Subspace;
use crate::modules::{is_isomorphic, IsoOptions, Module, ModuleMap};

use super::projective::projective_cover;
use super::resolution::min_proj_resolution;

/// `M ↪ E(M) = ⊕ I_v`, with the vertices of the summands.
///
/// Obtained as the k-dual of a projective cover `Q ↠ D(M)` over the opposite
/// algebra, so `E(M) = D(Q)` and the embedding is the transposed cover matrix.
pub fn injective_envelope(m: &Module) -> (Vec<usize>, ModuleMap) {
    let dm = m.dual_k();
    let c = projective_cover(&dm, &Subspace::full(m.alg().field(), m.dim()));
    let e = c.proj.module().dual_k();
    let map = ModuleMap::unchecked(m.clone(), e, c.matrix.transpose());
    (c.proj.vertices().to_vec(), map)
}

#[derive(Clone, Debug)]
pub struct InjResolution {
    pub module: Module,
    /// Vertices of the indecomposable injective summands of `I'_i`.
    pub terms: Vec<Vec<usize>>,
    /// `I'_i` as modules.
    pub term_modules: Vec<Module>,
    /// `M → I'_0`, then `I'_{i-1} → I'_i`.
    pub maps: Vec<ModuleMap>,
    pub id: Extent,
    /// `(a, b)`: the cosyzygies `Ω^{-a}` and `Ω^{-b}` are isomorphic and nonzero.
    pub period: Option<(usize, usize)>,
}

/// Iterated injective envelopes for terms `0..=cap`.
pub fn min_inj_resolution(m: &Module, cap: usize) -> InjResolution {
    let mut terms = Vec::new();
    let mut term_modules = Vec::new();
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut cosyz: Vec<Module> = vec![m.clone()];
    let mut period = None;
    let mut id = Extent::AtLeast(cap + 1);
    if m.is_zero() {
        return InjResolution { module: m.clone(), terms, term_modules, maps, id: Extent::Exact(0), period };
    }
    let mut c = m.clone();
    // Projection from the previous term onto the current cosyzygy.
    let mut proj: Option<ModuleMap> = None;
    for i in 0..=cap {
        let (verts, emb) = injective_envelope(&c);
        let (next, q) = emb.cokernel();
        let to_term = match &proj {
            None => emb.clone(),
            Some(p) => emb.after(p),
        };
        terms.push(verts);
        term_modules.push(emb.target.clone());
        maps.push(to_term);
        if next.is_zero() {
            id = Extent::Exact(i);
            break;
        }
        if period.is_none() {
            for (a, earlier) in cosyz.iter().enumerate() {
                if earlier.dim() == next.dim()
                    && is_isomorphic(earlier, &next, &IsoOptions::default()).expect("same algebra").is_yes()
                {
                    period = Some((a, i + 1));
                    id = Extent::Infinite;
                    break;
                }
            }
            cosyz.push(next.clone());
        }
        c = next;
        proj = Some(q);
    }
    InjResolution { module: m.clone(), terms, term_modules, maps, id, period }
}

/// `pd I_v` for every vertex, computed up to `cap`.
pub fn injective_pds(alg: &Algebra, cap: usize) -> Vec<Extent> {
    (0..alg.num_vertices()).map(|v| min_proj_resolution(&Module::injective(alg, v), cap).pd).collect()
}

/// `pd` of a sum of indecomposable injectives; the zero module has `pd` 0.
pub fn sum_pd(vertices: &[usize], pds: &[Extent]) -> Extent {
    vertices.iter().fold(Extent::Exact(0), |acc, &v| acc.max(pds[v]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub pd: Extent,
    pub id: Extent,
    /// Equal to `pd` for finitely generated modules over a finite-dimensional algebra.
    pub fd: Extent,
    pub periodic: bool,
}

pub fn dims(m: &Module, cap: usize) -> Dims {
    let r = min_proj_resolution(m, cap);
    let ir = min_inj_resolution(m, cap);
    Dims { pd: r.pd, id: ir.id, fd: r.pd, periodic: r.period.is_some() }
}

/// Number of leading projective terms in the minimal injective resolution of `_ΛΛ`.
pub fn dominant_dimension(alg: &Algebra, cap: usize) -> Extent {
    let r = min_inj_resolution(&Module::regular(alg), cap);
    let pds = injective_pds(alg, 1);
    dominant_from(&r, &pds)
}

pub(crate) fn dominant_from(r: &InjResolution, pds: &[Extent]) -> Extent {
    for (i, t) in r.terms.iter().enumerate() {
        if sum_pd(t, pds) != Extent::Exact(0) {
            return Extent::Exact(i);
        }
    }
    match r.id {
        Extent::Exact(_) => Extent::Infinite,
        _ => Extent::AtLeast(r.terms.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modules::random_module;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn envelope_of_injective_is_iso() {
        for (_, a) in fixtures::all() {
            for v in 0..a.num_vertices() {
                let r = min_inj_resolution(&Module::injective(&a, v), 4);
                assert_eq!(r.id, Extent::Exact(0));
                assert_eq!(r.terms, vec![vec![v]]);
            }
        }
    }

    #[test]
    fn regular_module_examples() {
        let b = fixtures::branch_a3();
        let r = min_inj_resolution(&Module::regular(&b), 6);
        assert_eq!(r.id, Extent::Exact(1));
        let a2 = fixtures::a2();
        let r = min_inj_resolution(&Module::regular(&a2), 6);
        assert_eq!(r.id, Extent::Exact(1));
        // I'_0 = I_2² (= P_1²), I'_1 = I_1 (= S_1).
        assert_eq!(r.terms, vec![vec![1, 1], vec![0]]);
        let dn = fixtures::dual_numbers();
        assert_eq!(min_inj_resolution(&Module::regular(&dn), 6).id, Extent::Exact(0));
    }

    #[test]
    fn dims_examples() {
        let ss = fixtures::semisimple();
        let d = dims(&Module::simple(&ss, 0), 4);
        assert_eq!((d.pd, d.id, d.fd), (Extent::Exact(0), Extent::Exact(0), Extent::Exact(0)));
        let a2 = fixtures::a2();
        assert_eq!(dims(&Module::simple(&a2, 0), 4).pd, Extent::Exact(1));
        let dn = fixtures::dual_numbers();
        let d = dims(&Module::simple(&dn, 0), 4);
        assert_eq!((d.pd, d.id), (Extent::Infinite, Extent::Infinite));
        assert!(d.periodic);
    }

    #[test]
    fn dominant_dimension_examples() {
        assert_eq!(dominant_dimension(&fixtures::dual_numbers(), 6), Extent::Infinite);
        assert_eq!(dominant_dimension(&fixtures::a2(), 6), Extent::Exact(1));
        assert_eq!(dominant_dimension(&fixtures::branch_a3(), 6), Extent::Exact(0));
        assert_eq!(dominant_dimension(&fixtures::gldim2(), 6), Extent::Exact(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn injective_resolutions_are_exact(seed in any::<u64>(), which in 0usize..5) {
            let (_, a) = fixtures::all().swap_remove(which);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&a, &mut rng, 6);
            let r = min_inj_resolution(&m, 4);
            if m.is_zero() {
                return Ok(());
            }
            prop_assert!(r.maps[0].is_injective());
            for w in r.maps.windows(2) {
                prop_assert!(w[1].is_homomorphism());
                prop_assert!(w[1].matrix.mul(&w[0].matrix).is_zero());
                prop_assert_eq!(w[1].kernel(), w[0].image());
            }
            // Socle of M maps onto the socle of I'_0.
            let soc = m.socle_space();
            let e = &r.maps[0];
            prop_assert_eq!(soc.image_under(&e.matrix), e.target.socle_space());
        }
    }
}
