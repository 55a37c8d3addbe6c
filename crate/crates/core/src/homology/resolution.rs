use crate::algebra::Algebra;
use crate::extent::Extent;
use crate::linalg::{kernel_basis, Mat, Subspace};
use crate::modules::{is_isomorphic, IsoOptions, Module, Subquotient};

use super::projective::{projective_cover, ProjMap, ProjectiveSum};

/// A complex of projectives `... → P_1 → P_0` whose terms past the computed
/// range are either zero (`closed`) or unknown.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    pub alg: Algebra,
    pub terms: Vec<ProjectiveSum>,
    /// `diffs[i-1]` is `d_i: P_i → P_{i-1}`.
    pub diffs: Vec<ProjMap>,
    pub closed: bool,
}

impl ProjComplex {
    pub fn term(&self, i: usize) -> Option<ProjectiveSum> {
        match self.terms.get(i) {
            Some(t) => Some(t.clone()),
            None if self.closed => Some(ProjectiveSum::zero(&self.alg)),
            None => None,
        }
    }

    /// `d_i: P_i → P_{i-1}` for `i ≥ 1`.
    pub fn diff(&self, i: usize) -> Option<ProjMap> {
        assert!(i >= 1);
        if let Some(d) = self.diffs.get(i - 1) {
            return Some(d.clone());
        }
        Some(ProjMap::zero(&self.term(i)?, &self.term(i - 1)?))
    }

    /// `H^i` of the dualized complex `P_0* → P_1* → ...`, i.e. `Ext^i(M, Λ)` for a resolution of `M`.
    pub fn dual_cohomology(&self, i: usize) -> Option<ExtModule> {
        let pi = self.term(i)?;
        let dual = pi.dual();
        let pm = dual.module();
        let f = self.alg.field();
        let num = {
            let d = self.diff(i + 1)?.dual().matrix();
            if d.cols() == 0 {
                Subspace::zero(f, 0)
            } else {
                Subspace::from_rows(&kernel_basis(&d))
            }
        };
        let den =
            if i == 0 { Subspace::zero(f, pm.dim()) } else { Subspace::column_space(&self.diff(i)?.dual().matrix()) };
        let sq = pm.subquotient(&num, &den);
        Some(ExtModule { degree: i, value: sq.module.clone(), slice: sq })
    }
}

/// `Ext^i(M, Λ)` as a module over the opposite algebra.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub degree: usize,
    pub value: Module,
    /// `ker d_{i+1}* / im d_i*` inside `P_i*`.
    pub slice: Subquotient,
}

impl ExtModule {
    pub fn dim(&self) -> usize {
        self.value.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// A minimal projective resolution computed to a given depth.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    pub module: Module,
    pub complex: ProjComplex,
    /// `dim M x dim P_0`.
    pub augmentation: Mat,
    /// `Ω^{i+1} M` as a subspace of `P_i`.
    pub kernels: Vec<Subspace>,
    pub pd: Extent,
    /// `(a, b)` with `a < b` and `Ω^a M ≅ Ω^b M ≠ 0`.
    pub period: Option<(usize, usize)>,
}

/// Iterated projective covers `P_0, ..., P_depth`.
pub fn min_proj_resolution(m: &Module, depth: usize) -> ProjResolution {
    let alg = m.alg().clone();
    let f = alg.field();
    let first = projective_cover(m, &Subspace::full(f, m.dim()));
    let augmentation = first.matrix.clone();
    let mut terms = vec![first.proj.clone()];
    let mut diffs: Vec<ProjMap> = Vec::new();
    let mut kernels: Vec<Subspace> = Vec::new();
    let mut syzygy_modules: Vec<Module> = vec![m.clone()];
    let mut pd = Extent::AtLeast(depth + 1);
    let mut period = None;
    let mut closed = false;
    if m.is_zero() {
        return ProjResolution {
            module: m.clone(),
            complex: ProjComplex { alg, terms: vec![], diffs: vec![], closed: true },
            augmentation,
            kernels: vec![],
            pd: Extent::Exact(0),
            period: None,
        };
    }
    let mut current_matrix = first.matrix;
    for i in 0..=depth {
        let pi = terms[i].clone();
        let k = Subspace::from_rows(&kernel_basis(&current_matrix));
        kernels.push(k.clone());
        if k.is_zero() {
            pd = Extent::Exact(i);
            closed = true;
            break;
        }
        let pm = pi.module();
        if period.is_none() {
            let omega = pm.submodule(&k).0;
            for (a, earlier) in syzygy_modules.iter().enumerate() {
                if earlier.dim() == omega.dim()
                    && is_isomorphic(earlier, &omega, &IsoOptions::default()).expect("same algebra").is_yes()
                {
                    period = Some((a, i + 1));
                    pd = Extent::Infinite;
                    break;
                }
            }
            syzygy_modules.push(omega);
        }
        if i == depth {
            break;
        }
        let c = projective_cover(&pm, &k);
        let elems = c.gens.iter().map(|g| pi.split(g)).collect();
        diffs.push(ProjMap { source: c.proj.clone(), target: pi, elems });
        terms.push(c.proj);
        current_matrix = c.matrix;
    }
    ProjResolution {
        module: m.clone(),
        complex: ProjComplex { alg, terms, diffs, closed },
        augmentation,
        kernels,
        pd,
        period,
    }
}

impl ProjResolution {
    pub fn terms(&self) -> &[ProjectiveSum] {
        &self.complex.terms
    }

    pub fn ext(&self, i: usize) -> Option<ExtModule> {
        self.complex.dual_cohomology(i)
    }

    /// `Ω^k M` (with `Ω^0 M = M`), if computed.
    pub fn syzygy(&self, k: usize) -> Option<Module> {
        if k == 0 {
            return Some(self.module.clone());
        }
        if let Some(sub) = self.kernels.get(k - 1) {
            return Some(self.complex.terms[k - 1].module().submodule(sub).0);
        }
        if self.complex.closed {
            return Some(Module::zero(self.module.alg()));
        }
        None
    }

    /// A non-minimal resolution: `Q → Q` (identity) spliced in at degrees `at` and `at - 1`.
    pub fn padded(&self, at: usize, q: &ProjectiveSum) -> ProjComplex {
        assert!(at >= 1);
        let c = &self.complex;
        let len = c.terms.len().max(at + 1);
        let terms: Vec<ProjectiveSum> = (0..len)
            .map(|i| {
                let t = c.term(i).expect("padding inside computed range");
                if i == at || i + 1 == at {
                    t.direct_sum(q)
                } else {
                    t
                }
            })
            .collect();
        let mut diffs = Vec::new();
        for i in 1..len {
            let d = c.diff(i).expect("padding inside computed range");
            let zq = ProjectiveSum::zero(&c.alg);
            let d = if i == at {
                d.block_sum(&ProjMap::identity(q))
            } else if i == at + 1 {
                d.block_sum(&ProjMap::zero(&zq, q))
            } else if i + 1 == at {
                d.block_sum(&ProjMap::zero(q, &zq))
            } else {
                d
            };
            diffs.push(d);
        }
        ProjComplex { alg: c.alg.clone(), terms, diffs, closed: c.closed }
    }
}

/// `Tr M = Coker(P_0* → P_1*)` from the minimal presentation.
pub fn transpose(m: &Module) -> Module {
    transpose_from(&min_proj_resolution(m, 1))
}

pub fn transpose_from(r: &ProjResolution) -> Module {
    let p1 = r.complex.term(1).expect("depth at least 1");
    let d1 = r.complex.diff(1).expect("depth at least 1").dual();
    let p1d = p1.dual().module();
    p1d.quotient(&Subspace::column_space(&d1.matrix())).0
}
