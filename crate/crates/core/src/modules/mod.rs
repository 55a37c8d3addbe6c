//! Finitely generated left modules as matrix representations.
//!
//! A module stores one matrix per algebra generator (idempotents, then
//! arrows). The action of every basis element is derived on demand from the
//! word basis of the algebra. Right modules are left modules over the opposite
//! algebra.

mod enumerate;
mod hom;
mod iso;
mod lattice;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{kernel_basis, LinalgError, Mat, Subspace};

pub use enumerate::{enumerate_modules, random_module, Corpus};
pub use hom::{hom_space, HomSpace};
pub use iso::{invariant_key, is_isomorphic, IsoOptions, IsoVerdict, ModuleKey};
pub use lattice::{all_submodules, SubmoduleLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map does not intertwine the actions")]
    NotHomomorphism,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone)]
pub struct Module {
    alg: Algebra,
    dim: usize,
    gens: Arc<Vec<Mat>>,
    basis_action: Arc<OnceLock<Vec<Mat>>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, dims {:?}, {:?})", self.dim, self.dim_vector(), self.alg.orientation())
    }
}

impl Module {
    /// Build from generator matrices, validating the relations of the algebra.
    pub fn new(alg: &Algebra, dim: usize, gens: Vec<Mat>) -> Result<Module, ModuleError> {
        if gens.len() != alg.num_gens() {
            return Err(ModuleError::Shape(format!(
                "expected {} generator matrices, got {}",
                alg.num_gens(),
                gens.len()
            )));
        }
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim || g.field() != alg.field()) {
            return Err(ModuleError::Shape(format!(
                "generator matrices must be {dim}x{dim} over GF({})",
                alg.field().p()
            )));
        }
        let m = Self::from_gens_unchecked(alg, dim, gens);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_gens_unchecked(alg: &Algebra, dim: usize, gens: Vec<Mat>) -> Module {
        Module { alg: alg.clone(), dim, gens: Arc::new(gens), basis_action: Arc::new(OnceLock::new()) }
    }

    /// Representation given by vertex dimensions and one matrix per arrow
    /// (`dims[target] x dims[source]`). The basis is ordered by vertex.
    pub fn from_arrow_matrices(alg: &Algebra, dims: &[usize], arrows: &[Mat]) -> Result<Module, ModuleError> {
        let m = alg.num_vertices();
        if dims.len() != m || arrows.len() != alg.arrows().len() {
            return Err(ModuleError::Shape("dimension vector or arrow count mismatch".into()));
        }
        let gens = Self::block_gens(alg, dims, arrows)?;
        Self::new(alg, dims.iter().sum(), gens)
    }

    pub(crate) fn block_gens(alg: &Algebra, dims: &[usize], arrows: &[Mat]) -> Result<Vec<Mat>, ModuleError> {
        let f = alg.field();
        let d: usize = dims.iter().sum();
        let offs: Vec<usize> = dims
            .iter()
            .scan(0, |s, &x| {
                let o = *s;
                *s += x;
                Some(o)
            })
            .collect();
        let mut gens = Vec::with_capacity(alg.num_gens());
        for v in 0..dims.len() {
            let mut e = Mat::zeros(f, d, d);
            for i in 0..dims[v] {
                e.set(offs[v] + i, offs[v] + i, 1);
            }
            gens.push(e);
        }
        for (a, mat) in alg.arrows().iter().zip(arrows) {
            if mat.rows() != dims[a.target] || mat.cols() != dims[a.source] {
                return Err(ModuleError::Shape(format!(
                    "arrow `{}` needs a {}x{} matrix",
                    a.name, dims[a.target], dims[a.source]
                )));
            }
            let mut g = Mat::zeros(f, d, d);
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    g.set(offs[a.target] + r, offs[a.source] + c, mat.get(r, c));
                }
            }
            gens.push(g);
        }
        Ok(gens)
    }

    pub fn zero(alg: &Algebra) -> Module {
        let f = alg.field();
        Self::from_gens_unchecked(alg, 0, vec![Mat::zeros(f, 0, 0); alg.num_gens()])
    }

    /// Left regular module `_ΛΛ`.
    pub fn regular(alg: &Algebra) -> Module {
        let gens = (0..alg.num_gens()).map(|g| alg.left_mult_by(alg.gen_elem(g))).collect();
        Self::from_gens_unchecked(alg, alg.dim(), gens)
    }

    /// `P_v = Λe_v` in the basis of [`Algebra::proj_basis`].
    pub fn projective(alg: &Algebra, v: usize) -> Module {
        Self::from_gens_unchecked(alg, alg.proj_basis(v).dim(), alg.proj_action(v).to_vec())
    }

    /// `I_v = D(e_vΛ)`.
    pub fn injective(alg: &Algebra, v: usize) -> Module {
        Self::projective(&alg.op(), v).dual_k()
    }

    /// `S_v`, the top of `P_v`.
    pub fn simple(alg: &Algebra, v: usize) -> Module {
        let f = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let arrows: Vec<Mat> = alg.arrows().iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();
        let gens = Self::block_gens(alg, &dims, &arrows).expect("simple module shapes");
        Self::from_gens_unchecked(alg, 1, gens)
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }
    pub fn idem(&self, v: usize) -> &Mat {
        &self.gens[v]
    }
    /// Matrices of the arrows only.
    pub fn arrow_mats(&self) -> &[Mat] {
        &self.gens[self.alg.num_vertices()..]
    }

    /// Action of every basis element of the algebra.
    pub fn basis_action(&self) -> &[Mat] {
        self.basis_action.get_or_init(|| self.compute_basis_action())
    }

    fn compute_basis_action(&self) -> Vec<Mat> {
        let f = self.alg.field();
        let words = self.alg.words();
        let mut wm: Vec<Mat> = Vec::with_capacity(words.len());
        for w in words {
            let g = &self.gens[w.gen];
            wm.push(match w.parent {
                None => g.clone(),
                Some(p) => g.mul(&wm[p]),
            });
        }
        let bw = self.alg.basis_in_words();
        (0..self.alg.dim())
            .map(|j| {
                let mut acc = Mat::zeros(f, self.dim, self.dim);
                for (k, w) in wm.iter().enumerate() {
                    acc.add_scaled(bw.get(k, j), w);
                }
                acc
            })
            .collect()
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act(&self, x: &[u32]) -> Mat {
        let mut acc = Mat::zeros(self.alg.field(), self.dim, self.dim);
        for (i, b) in self.basis_action().iter().enumerate() {
            acc.add_scaled(x[i], b);
        }
        acc
    }

    /// Check `ρ(1) = 1` and `ρ(g)ρ(b_j) = ρ(g b_j)` for generators `g` and basis `b_j`,
    /// which together force a well-defined algebra homomorphism.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let alg = &self.alg;
        let ba = self.basis_action();
        if self.act(alg.unit()) != Mat::identity(alg.field(), self.dim) {
            return Err(ModuleError::InvalidAction("unit does not act as identity".into()));
        }
        for g in 0..alg.num_gens() {
            let ge = alg.gen_elem(g);
            for (j, bj) in ba.iter().enumerate() {
                let prod = alg.mul(ge, &alg.basis_vec(j));
                if self.gens[g].mul(bj) != self.act(&prod) {
                    return Err(ModuleError::InvalidAction(format!(
                        "relation fails for generator {g} and basis element `{}`",
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full check `ρ(b_i)ρ(b_j) = ρ(b_i b_j)` on all basis pairs.
    pub fn is_valid_full(&self) -> bool {
        let alg = &self.alg;
        let ba = self.basis_action();
        (0..alg.dim()).all(|i| {
            (0..alg.dim()).all(|j| ba[i].mul(&ba[j]) == self.act(&alg.mul(&alg.basis_vec(i), &alg.basis_vec(j))))
        })
    }

    /// Subspace `e_v M`.
    pub fn vertex_space(&self, v: usize) -> Subspace {
        Subspace::column_space(&self.gens[v])
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.alg.num_vertices()).map(|v| self.gens[v].rank()).collect()
    }

    /// Per-vertex dimensions of a submodule.
    pub fn dims_of(&self, u: &Subspace) -> Vec<usize> {
        (0..self.alg.num_vertices()).map(|v| u.image_under(&self.gens[v]).dim()).collect()
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<u32>]) -> Subspace {
        let f = self.alg.field();
        let mut span = Subspace::zero(f, self.dim);
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in vectors {
            if !span.contains(v) {
                span = span.sum(&Subspace::from_vectors(f, self.dim, std::slice::from_ref(v)));
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in self.gens.iter() {
                let w = g.mul_vec(&v);
                if !span.contains(&w) {
                    span = span.sum(&Subspace::from_vectors(f, self.dim, std::slice::from_ref(&w)));
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        u.vectors().iter().all(|x| self.gens.iter().all(|g| u.contains(&g.mul_vec(x))))
    }

    /// Submodule on `u` (must be invariant) with its inclusion.
    pub fn submodule(&self, u: &Subspace) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(u));
        let f = self.alg.field();
        let k = u.dim();
        let vs = u.vectors();
        let gens = self
            .gens
            .iter()
            .map(|g| Mat::from_cols(f, k, &vs.iter().map(|x| u.coords(&g.mul_vec(x))).collect::<Vec<_>>()))
            .collect();
        let sub = Module::from_gens_unchecked(&self.alg, k, gens);
        let incl = Mat::from_cols(f, self.dim, &vs);
        let map = ModuleMap::unchecked(sub.clone(), self.clone(), incl);
        (sub, map)
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, u: &Subspace) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(u));
        let f = self.alg.field();
        let free = u.free_columns();
        let q = free.len();
        let reduce_at_free = |v: &[u32]| -> Vec<u32> {
            let r = u.reduce(v);
            free.iter().map(|&c| r[c]).collect()
        };
        let gens = self
            .gens
            .iter()
            .map(|g| Mat::from_cols(f, q, &free.iter().map(|&c| reduce_at_free(&g.col(c))).collect::<Vec<_>>()))
            .collect();
        let quo = Module::from_gens_unchecked(&self.alg, q, gens);
        let mut proj = Mat::zeros(f, q, self.dim);
        for (j, &fc) in free.iter().enumerate() {
            proj.set(j, fc, 1);
            for (i, &pc) in u.pivots().iter().enumerate() {
                proj.set(j, pc, f.neg(u.basis().get(i, fc)));
            }
        }
        let map = ModuleMap::unchecked(self.clone(), quo.clone(), proj);
        (quo, map)
    }

    /// `num / den` for invariant subspaces `den ⊆ num`.
    pub fn subquotient(&self, num: &Subspace, den: &Subspace) -> Subquotient {
        debug_assert!(num.contains_space(den));
        let f = self.alg.field();
        let residues: Vec<Vec<u32>> = num.vectors().iter().map(|x| den.reduce(x)).collect();
        let complement = Subspace::from_vectors(f, self.dim, &residues);
        let k = complement.dim();
        let cv = complement.vectors();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Mat::from_cols(
                    f,
                    k,
                    &cv.iter().map(|x| complement.coords(&den.reduce(&g.mul_vec(x)))).collect::<Vec<_>>(),
                )
            })
            .collect();
        Subquotient {
            module: Module::from_gens_unchecked(&self.alg, k, gens),
            num: num.clone(),
            den: den.clone(),
            complement,
        }
    }

    pub fn direct_sum(parts: &[&Module]) -> Result<Module, ModuleError> {
        let first = parts.first().ok_or_else(|| ModuleError::Shape("empty direct sum".into()))?;
        let alg = first.alg.clone();
        if parts.iter().any(|m| !m.alg.same(&alg)) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let f = alg.field();
        let gens = (0..alg.num_gens())
            .map(|g| Mat::block_diag(f, &parts.iter().map(|m| &m.gens[g]).collect::<Vec<_>>()))
            .collect();
        Ok(Module::from_gens_unchecked(&alg, parts.iter().map(|m| m.dim).sum(), gens))
    }

    /// k-dual `D(M) = Hom_k(M, k)`, a module over the opposite algebra.
    pub fn dual_k(&self) -> Module {
        Module::from_gens_unchecked(&self.alg.op(), self.dim, self.gens.iter().map(|g| g.transpose()).collect())
    }

    /// `JM`.
    pub fn radical_space(&self) -> Subspace {
        let f = self.alg.field();
        let mut s = Subspace::zero(f, self.dim);
        for a in self.arrow_mats() {
            s = s.sum(&Subspace::column_space(a));
        }
        s
    }

    /// `{x : Jx = 0}`.
    pub fn socle_space(&self) -> Subspace {
        let f = self.alg.field();
        let arrows = self.arrow_mats();
        if arrows.is_empty() || self.dim == 0 {
            return Subspace::full(f, self.dim);
        }
        let mut stacked = arrows[0].clone();
        for a in &arrows[1..] {
            stacked = stacked.vstack(a);
        }
        Subspace::from_rows(&kernel_basis(&stacked))
    }

    pub fn radical(&self) -> (Module, ModuleMap) {
        self.submodule(&self.radical_space())
    }

    pub fn socle(&self) -> (Module, ModuleMap) {
        self.submodule(&self.socle_space())
    }

    pub fn top(&self) -> (Module, ModuleMap) {
        self.quotient(&self.radical_space())
    }

    /// `M ⊇ JM ⊇ J²M ⊇ ... ⊇ 0`, as invariant subspaces (starting with `M`).
    pub fn radical_series(&self) -> Vec<Subspace> {
        let f = self.alg.field();
        let mut out = vec![Subspace::full(f, self.dim)];
        loop {
            let cur = out.last().expect("nonempty");
            if cur.is_zero() {
                break;
            }
            let mut next = Subspace::zero(f, self.dim);
            for a in self.arrow_mats() {
                next = next.sum(&cur.image_under(a));
            }
            out.push(next);
        }
        out
    }

    /// `0 ⊆ soc M ⊆ soc² M ⊆ ... ⊆ M` (starting with `0`).
    pub fn socle_series(&self) -> Vec<Subspace> {
        let f = self.alg.field();
        let mut out = vec![Subspace::zero(f, self.dim)];
        loop {
            let cur = out.last().expect("nonempty");
            if cur.is_full() {
                break;
            }
            let ann = cur.annihilator().basis().clone();
            let mut rows: Option<Mat> = None;
            for a in self.arrow_mats() {
                let block = ann.mul(a);
                rows = Some(match rows {
                    None => block,
                    Some(r) => r.vstack(&block),
                });
            }
            let next = match rows {
                None => Subspace::full(f, self.dim),
                Some(r) => Subspace::from_rows(&kernel_basis(&r)),
            };
            out.push(next);
        }
        out
    }

    /// Whether every arrow acts by zero.
    pub fn is_semisimple(&self) -> bool {
        self.arrow_mats().iter().all(|a| a.is_zero())
    }

    /// Change of basis: the module transported along an invertible matrix `t`
    /// (new basis vectors are the columns of `t`).
    pub fn transport(&self, t: &Mat) -> Option<Module> {
        let inv = t.inverse()?;
        let gens = self.gens.iter().map(|g| inv.mul(g).mul(t)).collect();
        Some(Module::from_gens_unchecked(&self.alg, self.dim, gens))
    }
}

/// A subquotient `num/den` with the bookkeeping needed to move vectors in and out.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: Module,
    pub num: Subspace,
    pub den: Subspace,
    /// Canonical complement of `den` in `num`; its rows are the lifted basis.
    pub complement: Subspace,
}

impl Subquotient {
    /// Coordinates of the class of `v ∈ num`.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.complement.coords(&self.den.reduce(v))
    }

    /// A representative of the class with the given coordinates.
    pub fn lift(&self, c: &[u32]) -> Vec<u32> {
        self.complement.combine(c)
    }
}

/// A module homomorphism; `matrix` is `target.dim x source.dim`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Mat) -> Result<ModuleMap, ModuleError> {
        if !source.alg.same(&target.alg) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(ModuleError::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        let m = ModuleMap { source, target, matrix };
        if !m.is_homomorphism() {
            return Err(ModuleError::NotHomomorphism);
        }
        Ok(m)
    }

    pub(crate) fn unchecked(source: Module, target: Module, matrix: Mat) -> ModuleMap {
        ModuleMap { source, target, matrix }
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source.gens.iter().zip(self.target.gens.iter()).all(|(s, t)| self.matrix.mul(s) == t.mul(&self.matrix))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn kernel(&self) -> Subspace {
        Subspace::from_rows(&kernel_basis(&self.matrix))
    }
    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.matrix)
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }
    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn cokernel(&self) -> (Module, ModuleMap) {
        self.target.quotient(&self.image())
    }

    pub fn kernel_module(&self) -> (Module, ModuleMap) {
        self.source.submodule(&self.kernel())
    }
}

/// Simples, indecomposable projectives and indecomposable injectives, per vertex.
pub struct FundamentalModules {
    pub simples: Vec<Module>,
    pub projectives: Vec<Module>,
    pub injectives: Vec<Module>,
}

pub fn fundamental_modules(alg: &Algebra) -> FundamentalModules {
    let m = alg.num_vertices();
    FundamentalModules {
        simples: (0..m).map(|v| Module::simple(alg, v)).collect(),
        projectives: (0..m).map(|v| Module::projective(alg, v)).collect(),
        injectives: (0..m).map(|v| Module::injective(alg, v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Fp;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fundamental_dims() {
        let ss = fixtures::semisimple();
        let fm = fundamental_modules(&ss);
        for v in 0..2 {
            assert_eq!(fm.simples[v].dim(), 1);
            assert_eq!(fm.projectives[v].dim(), 1);
            assert_eq!(fm.injectives[v].dim(), 1);
        }
        let dims = |a: &Algebra| {
            let fm = fundamental_modules(a);
            let d = |v: &Vec<Module>| v.iter().map(|m| m.dim()).collect::<Vec<_>>();
            (d(&fm.simples), d(&fm.projectives), d(&fm.injectives))
        };
        assert_eq!(dims(&fixtures::a2()), (vec![1, 1], vec![2, 1], vec![1, 2]));
        assert_eq!(dims(&fixtures::branch_a3()), (vec![1, 1, 1], vec![3, 1, 1], vec![1, 2, 2]));
    }

    #[test]
    fn regular_module_splits_into_projectives() {
        for (_, a) in fixtures::all() {
            let reg = Module::regular(&a);
            assert!(reg.is_valid_full());
            let total: usize = (0..a.num_vertices()).map(|v| Module::projective(&a, v).dim()).sum();
            assert_eq!(reg.dim(), total);
            for v in 0..a.num_vertices() {
                let p = Module::projective(&a, v);
                assert!(p.is_valid_full());
                assert!(Module::injective(&a, v).is_valid_full());
                assert!(Module::simple(&a, v).is_valid_full());
                let s = Module::simple(&a, v);
                assert!(is_isomorphic(&p.top().0, &s, &IsoOptions::default()).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn structure_examples() {
        let a2 = fixtures::a2();
        let p1 = Module::projective(&a2, 0);
        assert_eq!(p1.radical_space().dim(), 1);
        assert_eq!(p1.radical().0.dim_vector(), vec![0, 1]);
        assert_eq!(p1.top().0.dim_vector(), vec![1, 0]);
        let dn = fixtures::dual_numbers();
        let reg = Module::regular(&dn);
        assert_eq!(reg.radical_space(), reg.socle_space());
        assert_eq!(reg.radical_space().dim(), 1);
        let ss = Module::regular(&fixtures::semisimple());
        assert!(ss.radical_space().is_zero());
        assert!(ss.socle_space().is_full());
    }

    #[test]
    fn sub_quotient_examples() {
        let a2 = fixtures::a2();
        let p1 = Module::projective(&a2, 0);
        let f = Fp::gf2();
        let (sub, incl) = p1.submodule(&p1.spin(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(sub.dim(), 2);
        assert!(incl.is_homomorphism());
        let (q, proj) = p1.quotient(&Subspace::zero(f, 2));
        assert_eq!(q.dim(), 2);
        assert!(proj.is_homomorphism());
        let soc = p1.socle_space();
        let (s, i) = p1.submodule(&soc);
        let (t, pr) = p1.quotient(&soc);
        assert!(i.is_homomorphism() && pr.is_homomorphism());
        assert!(is_isomorphic(&s, &Module::simple(&a2, 1), &IsoOptions::default()).unwrap().is_yes());
        assert!(is_isomorphic(&t, &Module::simple(&a2, 0), &IsoOptions::default()).unwrap().is_yes());
    }

    #[test]
    fn duality_examples() {
        let a2 = fixtures::a2();
        let s1 = Module::simple(&a2, 0);
        let ds = s1.dual_k();
        assert!(is_isomorphic(&ds, &Module::simple(&a2.op(), 0), &IsoOptions::default()).unwrap().is_yes());
        let p = Module::projective(&a2, 0);
        let ip = Module::injective(&a2.op(), 0);
        assert!(is_isomorphic(&p.dual_k(), &ip, &IsoOptions::default()).unwrap().is_yes());
    }

    #[test]
    fn invalid_module_rejected() {
        let dn = fixtures::dual_numbers();
        let f = dn.field();
        // x acting as identity violates x^2 = 0.
        let err = Module::from_arrow_matrices(&dn, &[1], &[Mat::identity(f, 1)]);
        assert!(matches!(err, Err(ModuleError::InvalidAction(_))));
        let gl = fixtures::gldim2();
        let one = Mat::identity(f, 1);
        let err = Module::from_arrow_matrices(&gl, &[1, 1, 1], &[one.clone(), one]);
        assert!(err.is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn random_modules_are_valid_and_double_dual_is_identity(seed in any::<u64>(), which in 0usize..5) {
            let (_, a) = fixtures::all().swap_remove(which);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&a, &mut rng, 6);
            prop_assert!(m.is_valid_full());
            let dd = m.dual_k().dual_k();
            prop_assert!(is_isomorphic(&dd, &m, &IsoOptions::default()).unwrap().is_yes());
            prop_assert_eq!(m.dual_k().dim(), m.dim());
        }

        #[test]
        fn duality_is_exact_on_submodule_sequences(seed in any::<u64>(), which in 0usize..5) {
            let (_, a) = fixtures::all().swap_remove(which);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&a, &mut rng, 6);
            let v: Vec<u32> = (0..m.dim()).map(|i| ((seed >> (i % 64)) & 1) as u32).collect();
            let u = m.spin(&[v]);
            let (_, incl) = m.submodule(&u);
            let (_, proj) = m.quotient(&u);
            // D reverses the sequence: D(proj) is injective, D(incl) surjective, composite zero.
            let dp = proj.matrix.transpose();
            let di = incl.matrix.transpose();
            prop_assert_eq!(dp.rank(), dp.cols());
            prop_assert_eq!(di.rank(), di.rows());
            prop_assert!(di.mul(&dp).is_zero());
            let dpm = ModuleMap::new(proj.target.dual_k(), m.dual_k(), dp);
            prop_assert!(dpm.is_ok());
            prop_assert!(ModuleMap::new(m.dual_k(), incl.source.dual_k(), di).is_ok());
        }
    }
}
