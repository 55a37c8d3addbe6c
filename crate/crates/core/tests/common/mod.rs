//! Independent oracles for the integration tests. They use only module
//! construction, `hom_space` and plain matrix ranks: resolutions here are
//! deliberately non-minimal and never touch the resolution code.
#![allow(dead_code)]

use std::collections::HashSet;

use homdual::algebra::Algebra;
use homdual::linalg::{kernel_basis, Mat, Subspace};
use homdual::modules::{hom_space, Module};

/// `⊕_v (Λe_v)^{dim e_v M} → M`, one copy per basis vector of `e_v M`.
/// Returns the free-ish module and the map as a `dim M x dim P` matrix.
pub fn fat_cover(m: &Module) -> (Module, Mat) {
    let alg = m.alg();
    let f = alg.field();
    let mut parts = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for v in 0..alg.num_vertices() {
        let image = Subspace::column_space(m.idem(v));
        for x in image.vectors() {
            parts.push(Module::projective(alg, v));
            for b in alg.proj_basis(v).vectors() {
                let mut y = vec![0u32; m.dim()];
                for (j, &c) in b.iter().enumerate() {
                    if c != 0 {
                        let bx = m.basis_action()[j].mul_vec(&x);
                        for (t, s) in y.iter_mut().zip(bx) {
                            *t = f.add(*t, f.mul(c, s));
                        }
                    }
                }
                cols.push(y);
            }
        }
    }
    if parts.is_empty() {
        return (Module::zero(alg), Mat::zeros(f, m.dim(), 0));
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let p = Module::direct_sum(&refs).unwrap();
    (p, Mat::from_cols(f, m.dim(), &cols))
}

/// Terms `P_0..P_len` and differentials `d_i: P_i → P_{i-1}` (as matrices) of
/// the resolution built from [`fat_cover`].
pub fn fat_resolution(m: &Module, len: usize) -> (Vec<Module>, Vec<Mat>) {
    let f = m.alg().field();
    let (p0, mut cur) = fat_cover(m);
    let mut terms = vec![p0];
    let mut diffs = Vec::new();
    for _ in 0..len {
        let last = terms.last().unwrap().clone();
        let k = Subspace::from_rows(&kernel_basis(&cur));
        let (km, incl) = last.submodule(&k);
        let (p, pi) = fat_cover(&km);
        let d = if km.dim() == 0 { Mat::zeros(f, last.dim(), p.dim()) } else { incl.matrix.mul(&pi) };
        diffs.push(d.clone());
        terms.push(p);
        cur = d;
    }
    (terms, diffs)
}

/// Rank of `φ ↦ φ ∘ d` from `Hom(target, Λ)` to `Hom(source, Λ)`.
fn dual_rank(target: &Module, d: &Mat) -> usize {
    let reg = Module::regular(target.alg());
    let h = hom_space(target, &reg).unwrap();
    let f = target.alg().field();
    let cols: Vec<Vec<u32>> = (0..h.dim()).map(|j| h.matrix(j).mul(d).flatten()).collect();
    if cols.is_empty() || d.cols() == 0 {
        return 0;
    }
    Mat::from_cols(f, cols[0].len(), &cols).rank()
}

/// `dim Ext^i(M, Λ)` for `i = 0..=top`, from the fat resolution.
pub fn ext_dims(m: &Module, top: usize) -> Vec<usize> {
    let (terms, diffs) = fat_resolution(m, top + 1);
    let reg = Module::regular(m.alg());
    (0..=top)
        .map(|i| {
            let hom_i = if terms[i].dim() == 0 { 0 } else { hom_space(&terms[i], &reg).unwrap().dim() };
            let out = if terms[i].dim() == 0 { 0 } else { dual_rank(&terms[i], &diffs[i]) };
            let inc = if i == 0 || terms[i - 1].dim() == 0 { 0 } else { dual_rank(&terms[i - 1], &diffs[i - 1]) };
            hom_i - out - inc
        })
        .collect()
}

/// Least `i ≤ bound` with `Ext^i(M, Λ) ≠ 0`.
pub fn grade(m: &Module, bound: usize) -> Option<usize> {
    ext_dims(m, bound).iter().position(|&d| d > 0)
}

/// Least `i` with `1 ≤ i ≤ bound` and `Ext^i(M, Λ) ≠ 0`.
pub fn reduced_grade(m: &Module, bound: usize) -> Option<usize> {
    ext_dims(m, bound).iter().enumerate().skip(1).find(|(_, &d)| d > 0).map(|(i, _)| i)
}

/// `M` is projective iff it has the dimension of the projective cover of its top.
pub fn is_projective(m: &Module) -> bool {
    let alg = m.alg();
    let f = alg.field();
    let jm = m.arrow_mats().iter().fold(Subspace::zero(f, m.dim()), |acc, a| acc.sum(&Subspace::column_space(a)));
    let mut cover_dim = 0;
    for v in 0..alg.num_vertices() {
        let ev = Subspace::column_space(m.idem(v));
        let top = ev.dim() - jm.image_under(m.idem(v)).dim();
        cover_dim += top * alg.proj_basis(v).dim();
    }
    cover_dim == m.dim()
}

/// Every invariant subspace, by trying all spanning tuples over GF(2).
pub fn brute_submodules(m: &Module) -> Vec<Subspace> {
    let f = m.alg().field();
    assert_eq!(f.p(), 2);
    let d = m.dim();
    let vecs: Vec<Vec<u32>> = (0..1u32 << d).map(|x| (0..d).map(|i| (x >> i) & 1).collect()).collect();
    let mut seen = HashSet::new();
    let total = vecs.len().pow(d as u32);
    for code in 0..total.max(1) {
        let mut c = code;
        let chosen: Vec<Vec<u32>> = (0..d)
            .map(|_| {
                let v = vecs[c % vecs.len()].clone();
                c /= vecs.len();
                v
            })
            .collect();
        let s = Subspace::from_vectors(f, d, &chosen);
        if m.is_submodule(&s) {
            seen.insert(s);
        }
    }
    let mut out: Vec<Subspace> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.dim(), s.basis().flatten()));
    out
}

/// Some nonzero submodule has strong grade at least 2: equivalently a simple
/// submodule (dimension one over a basic split algebra) has grade at least 2.
pub fn has_pseudo_null_submodule(m: &Module, bound: usize) -> bool {
    let f = m.alg().field();
    let soc: Vec<Vec<u32>> = {
        let ann = m
            .arrow_mats()
            .iter()
            .fold(Subspace::full(f, m.dim()), |acc, a| acc.intersect(&Subspace::from_rows(&kernel_basis(a))));
        ann.vectors()
    };
    // Simple submodules are spanned by socle vectors lying in a single vertex.
    let n = m.alg().num_vertices();
    (0..n).any(|v| {
        let ev = Subspace::column_space(m.idem(v));
        let socv = Subspace::from_vectors(f, m.dim(), &soc).intersect(&ev);
        socv.vectors().into_iter().next().is_some_and(|x| {
            let s = m.spin(&[x]);
            let (sm, _) = m.submodule(&s);
            grade(&sm, bound).is_none_or(|g| g >= 2)
        })
    })
}

pub fn label(alg: &Algebra) -> String {
    alg.digest()[..12].to_string()
}
