//! Finite-dimensional basic algebras over GF(p).
//!
//! Two input routes are supported: a bound-quiver presentation (paths modulo
//! relations, truncated at a nilpotency degree) and raw structure constants
//! together with a claimed complete set of primitive orthogonal idempotents.
//! Both end in the same validated [`Algebra`] handle.
//!
//! Path composition is right-to-left: the word `b*a` means "first `a`, then `b`".

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::linalg::{Fp, LinalgError, Mat, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("relation {0} is not admissible: every path must have length >= 2")]
    NotAdmissible(usize),
    #[error("relation {0} mixes paths with different endpoints")]
    NotParallel(usize),
    #[error("nilpotency degree {degree} is too small: path `{path}` survives the relations")]
    NilpotencyViolated { degree: usize, path: String },
    #[error("nilpotency degree must be positive")]
    ZeroNilpotency,
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("unit does not act as identity")]
    BadUnit,
    #[error("idempotents invalid: {0}")]
    BadIdempotents(String),
    #[error("idempotent {0} is not primitive (its corner ring is not local with residue field GF(p))")]
    NotPrimitive(usize),
    #[error("radical check failed: {0}")]
    BadRadical(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A named quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// `(name, source, target)` with endpoints given as vertex indices.
    pub arrows: Vec<(String, usize, usize)>,
}

impl QuiverSpec {
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.0 == name)
    }

    /// Parse a right-to-left word such as `c*b*a` (or `e1` for a trivial path).
    pub fn parse_word(&self, word: &str) -> Result<Path, AlgebraError> {
        let word = word.trim();
        if let Some(v) = word.strip_prefix('e').and_then(|r| self.vertex(r)) {
            if self.arrow(word).is_none() {
                return Ok(Path::trivial(v));
            }
        }
        let mut arrows = Vec::new();
        for name in word.split('*').rev() {
            let name = name.trim();
            let a = self.arrow(name).ok_or_else(|| AlgebraError::Malformed(format!("unknown arrow `{name}`")))?;
            arrows.push(a);
        }
        let start = self.arrows[arrows[0]].1;
        let p = Path { start, arrows };
        check_path(self, &p)?;
        Ok(p)
    }

    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, AlgebraError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| vs.iter().position(|v| v == n).ok_or_else(|| AlgebraError::UnknownVertex(n.into()));
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            out.push((name.to_string(), find(s)?, find(t)?));
        }
        let q = QuiverSpec { vertices: vs, arrows: out };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateName(v.clone()));
            }
        }
        for (name, s, t) in &self.arrows {
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
            for &e in [s, t] {
                if e >= self.vertices.len() {
                    return Err(AlgebraError::UnknownVertex(format!("#{e}")));
                }
            }
        }
        Ok(())
    }
}

/// A path as the sequence of arrows in traversal order, plus its start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &QuiverSpec) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].2)
    }

    /// Right-to-left word, e.g. `b*a`; trivial paths print as `e<vertex>`.
    pub fn label(&self, q: &QuiverSpec) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", q.vertices[self.start]);
        }
        let names: Vec<&str> = self.arrows.iter().rev().map(|&a| q.arrows[a].0.as_str()).collect();
        names.join("*")
    }

    fn sort_key(&self) -> (usize, Vec<usize>, usize) {
        (self.arrows.len(), self.arrows.clone(), self.start)
    }
}

/// Linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Fp,
    pub quiver: QuiverSpec,
    pub relations: Vec<Relation>,
    pub nilpotency: usize,
}

/// Raw structure-constant input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsSpec {
    pub field: Fp,
    pub labels: Vec<String>,
    /// `products[i][j]` = coordinates of `b_i * b_j`.
    pub products: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    pub idempotents: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Original,
    Opposite,
}

impl Orientation {
    fn flip(self) -> Self {
        match self {
            Orientation::Original => Orientation::Opposite,
            Orientation::Opposite => Orientation::Original,
        }
    }
    fn index(self) -> usize {
        self as usize
    }
}

/// A generator of the radical modulo its square, living in `e_target J e_source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub elem: Vec<u32>,
}

/// A monomial in the generators, built as `gen * parent` (or a bare idempotent).
#[derive(Clone, Debug)]
pub(crate) struct Word {
    pub gen: usize,
    pub parent: Option<usize>,
}

pub(crate) struct SideData {
    mult: Vec<Mat>,
    arrows: Vec<Arrow>,
    words: Vec<Word>,
    /// Column k = coordinates of basis element k in the word basis.
    basis_in_words: Mat,
    proj_basis: Vec<Subspace>,
    proj_action: Vec<Vec<Mat>>,
    digest: String,
    pub(crate) cache: SideCache,
}

/// Lazily computed per-side homological data (gen matrices only, so no reference cycles).
#[derive(Default)]
pub(crate) struct SideCache {
    pub(crate) pseudo_null_target: OnceLock<(usize, Vec<Mat>)>,
}

struct Inner {
    field: Fp,
    dim: usize,
    labels: Vec<String>,
    vertex_names: Vec<String>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    radical: Subspace,
    radical_powers: Vec<Subspace>,
    top_functional: Mat,
    path_labels: bool,
    sides: [SideData; 2],
}

/// Shared handle to a validated algebra, viewed either as itself or as its opposite.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<Inner>,
    orientation: Orientation,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(dim {}, {} vertices, GF({}), {:?}, {})",
            self.dim(),
            self.num_vertices(),
            self.field().p(),
            self.orientation,
            &self.digest()[..12]
        )
    }
}

impl Algebra {
    fn side(&self) -> &SideData {
        &self.inner.sides[self.orientation.index()]
    }
    fn other_side(&self) -> &SideData {
        &self.inner.sides[self.orientation.flip().index()]
    }
    pub(crate) fn cache(&self) -> &SideCache {
        &self.side().cache
    }

    pub fn field(&self) -> Fp {
        self.inner.field
    }
    pub fn dim(&self) -> usize {
        self.inner.dim
    }
    pub fn num_vertices(&self) -> usize {
        self.inner.idempotents.len()
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.inner.vertex_names[v]
    }
    pub fn vertex_names(&self) -> &[String] {
        &self.inner.vertex_names
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.inner.vertex_names.iter().position(|v| v == name)
    }
    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }
    /// True when the basis consists of quiver paths.
    pub fn has_path_basis(&self) -> bool {
        self.inner.path_labels
    }
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
    pub fn is_opposite(&self) -> bool {
        self.orientation == Orientation::Opposite
    }
    pub fn unit(&self) -> &[u32] {
        &self.inner.unit
    }
    pub fn idempotent(&self, v: usize) -> &[u32] {
        &self.inner.idempotents[v]
    }
    pub fn radical(&self) -> &Subspace {
        &self.inner.radical
    }
    /// `J, J^2, ...` up to the last nonzero power.
    pub fn radical_powers(&self) -> &[Subspace] {
        &self.inner.radical_powers
    }
    /// Least `L` with `J^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.inner.radical_powers.len() + 1
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.side().arrows
    }
    /// Generators: the idempotents followed by the arrows.
    pub fn num_gens(&self) -> usize {
        self.num_vertices() + self.arrows().len()
    }
    pub fn gen_elem(&self, g: usize) -> &[u32] {
        let m = self.num_vertices();
        if g < m {
            self.idempotent(g)
        } else {
            &self.arrows()[g - m].elem
        }
    }
    /// Left multiplication by basis element `i` in this orientation.
    pub fn left_mult(&self, i: usize) -> &Mat {
        &self.side().mult[i]
    }
    /// Right multiplication by basis element `i` in this orientation.
    pub fn right_mult(&self, i: usize) -> &Mat {
        &self.other_side().mult[i]
    }

    /// Matrix of `y -> x*y`.
    pub fn left_mult_by(&self, x: &[u32]) -> Mat {
        combine_mats(self.field(), &self.side().mult, x, self.dim())
    }

    /// Matrix of `y -> y*x`.
    pub fn right_mult_by(&self, x: &[u32]) -> Mat {
        combine_mats(self.field(), &self.other_side().mult, x, self.dim())
    }

    /// Product in this orientation.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let n = self.dim();
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let col = self.side().mult[i].mul_vec(y);
            for (o, c) in out.iter_mut().zip(col) {
                *o = f.add(*o, f.mul(xi, c));
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn op(&self) -> Algebra {
        Algebra { inner: self.inner.clone(), orientation: self.orientation.flip() }
    }

    /// Content hash of this orientation's structure constants.
    pub fn digest(&self) -> &str {
        &self.side().digest
    }

    /// Whether modules over `self` and `other` may be combined.
    pub fn same(&self, other: &Algebra) -> bool {
        (Arc::ptr_eq(&self.inner, &other.inner) && self.orientation == other.orientation)
            || self.digest() == other.digest()
    }

    /// Basis of the indecomposable projective `Λe_v` (rows are elements of Λ).
    pub fn proj_basis(&self, v: usize) -> &Subspace {
        &self.side().proj_basis[v]
    }

    /// Generator action on `Λe_v` in the basis [`Self::proj_basis`].
    pub fn proj_action(&self, v: usize) -> &[Mat] {
        &self.side().proj_action[v]
    }

    /// Coefficients `c_v` with `x ≡ Σ c_v e_v (mod J)`.
    pub fn top_coeffs(&self, x: &[u32]) -> Vec<u32> {
        self.inner.top_functional.mul_vec(x)
    }

    pub fn in_radical(&self, x: &[u32]) -> bool {
        self.inner.radical.contains(x)
    }

    pub(crate) fn words(&self) -> &[Word] {
        &self.side().words
    }
    pub(crate) fn basis_in_words(&self) -> &Mat {
        &self.side().basis_in_words
    }

    /// `Σ dim Λe_v`, `Σ dim e_vΛ`: both equal `dim Λ`.
    pub fn proj_dims(&self) -> Vec<usize> {
        (0..self.num_vertices()).map(|v| self.proj_basis(v).dim()).collect()
    }

    /// Structure constants `b_i * b_j` in this orientation.
    pub fn product_table(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.side().mult[i].col(j)).collect()).collect()
    }
}

fn combine_mats(f: Fp, mats: &[Mat], x: &[u32], n: usize) -> Mat {
    let mut out = Mat::zeros(f, n, n);
    for (i, &c) in x.iter().enumerate() {
        out.add_scaled(c, &mats[i]);
    }
    out
}

/// Build `kQ/(I + J^L)` from a presentation.
pub fn build_algebra(pres: &Presentation) -> Result<Algebra, AlgebraError> {
    let q = &pres.quiver;
    q.validate()?;
    let f = pres.field;
    let l = pres.nilpotency;
    if l == 0 {
        return Err(AlgebraError::ZeroNilpotency);
    }
    for (ri, r) in pres.relations.iter().enumerate() {
        let live: Vec<&(u32, Path)> = r.terms.iter().filter(|(c, _)| c % f.p() != 0).collect();
        if live.iter().any(|(_, p)| p.len() < 2) {
            return Err(AlgebraError::NotAdmissible(ri));
        }
        for (_, p) in &r.terms {
            check_path(q, p)?;
        }
        if let Some((_, p0)) = live.first() {
            let ends = (p0.start, p0.end(q));
            if live.iter().any(|(_, p)| (p.start, p.end(q)) != ends) {
                return Err(AlgebraError::NotParallel(ri));
            }
        }
    }

    // All paths of length <= L in canonical (length, arrows, start) order.
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier = paths.clone();
    for _ in 0..l {
        let mut next = Vec::new();
        for p in &frontier {
            let e = p.end(q);
            for (ai, (_, s, _)) in q.arrows.iter().enumerate() {
                if *s == e {
                    let mut a = p.arrows.clone();
                    a.push(ai);
                    next.push(Path { start: p.start, arrows: a });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    paths.sort_by_key(|p| p.sort_key());
    let np = paths.len();
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // Columns are ordered longest-first so elimination removes long paths.
    let col = |i: usize| np - 1 - i;

    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in &pres.relations {
        let live: Vec<(u32, &Path)> =
            r.terms.iter().filter(|(c, _)| c % f.p() != 0).map(|(c, p)| (c % f.p(), p)).collect();
        let Some((_, p0)) = live.first() else { continue };
        let (s, t) = (p0.start, p0.end(q));
        let min_len = live.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for v in paths.iter().filter(|v| v.end(q) == s) {
            for u in paths.iter().filter(|u| u.start == t) {
                if v.len() + u.len() + min_len > l {
                    continue;
                }
                let mut row = vec![0u32; np];
                for (c, p) in &live {
                    if v.len() + p.len() + u.len() > l {
                        continue;
                    }
                    let mut a = v.arrows.clone();
                    a.extend(&p.arrows);
                    a.extend(&u.arrows);
                    let k = index[&Path { start: v.start, arrows: a }];
                    row[col(k)] = f.add(row[col(k)], *c);
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let ideal = Subspace::from_vectors(f, np, &rows);
    for (i, p) in paths.iter().enumerate() {
        if p.len() == l {
            let mut e = vec![0u32; np];
            e[col(i)] = 1;
            if !ideal.contains(&e) {
                return Err(AlgebraError::NilpotencyViolated { degree: l, path: p.label(q) });
            }
        }
    }
    let mut basis_paths: Vec<usize> = ideal.free_columns().into_iter().map(|c| np - 1 - c).collect();
    basis_paths.sort_unstable();
    let n = basis_paths.len();
    let pos: HashMap<usize, usize> = basis_paths.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let reduce_path = |k: usize| -> Vec<u32> {
        let mut e = vec![0u32; np];
        e[col(k)] = 1;
        let r = ideal.reduce(&e);
        let mut out = vec![0u32; n];
        for (c, &x) in r.iter().enumerate() {
            if x != 0 {
                out[pos[&(np - 1 - c)]] = x;
            }
        }
        out
    };

    let mut products = vec![vec![vec![0u32; n]; n]; n];
    for i in 0..n {
        let pi = &paths[basis_paths[i]];
        for j in 0..n {
            let pj = &paths[basis_paths[j]];
            // b_i * b_j: first b_j, then b_i.
            if pj.end(q) != pi.start || pj.len() + pi.len() > l {
                continue;
            }
            let mut a = pj.arrows.clone();
            a.extend(&pi.arrows);
            let k = index[&Path { start: pj.start, arrows: a }];
            products[i][j] = reduce_path(k);
        }
    }
    let m = q.vertices.len();
    let idempotents: Vec<Vec<u32>> = (0..m)
        .map(|v| {
            let mut e = vec![0u32; n];
            e[pos[&index[&Path::trivial(v)]]] = 1;
            e
        })
        .collect();
    let mut unit = vec![0u32; n];
    for e in &idempotents {
        for (u, x) in unit.iter_mut().zip(e) {
            *u = f.add(*u, *x);
        }
    }
    let rad_rows: Vec<Vec<u32>> = (0..n)
        .filter(|&i| !paths[basis_paths[i]].is_empty())
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    let radical = Subspace::from_vectors(f, n, &rad_rows);
    let arrows: Vec<Arrow> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, (name, s, t))| {
            let k = index[&Path { start: *s, arrows: vec![ai] }];
            Arrow { name: name.clone(), source: *s, target: *t, elem: reduce_path(k) }
        })
        .collect();
    let labels = basis_paths.iter().map(|&k| paths[k].label(q)).collect();
    finish(f, labels, products, unit, idempotents, q.vertices.clone(), Some(radical), Some(arrows), true)
}

fn check_path(q: &QuiverSpec, p: &Path) -> Result<(), AlgebraError> {
    if p.start >= q.vertices.len() {
        return Err(AlgebraError::UnknownVertex(format!("#{}", p.start)));
    }
    let mut at = p.start;
    for &a in &p.arrows {
        let (name, s, t) = q.arrows.get(a).ok_or_else(|| AlgebraError::Malformed(format!("arrow #{a}")))?;
        if *s != at {
            return Err(AlgebraError::Malformed(format!("path is not composable at arrow `{name}`")));
        }
        at = *t;
    }
    Ok(())
}

/// Build an algebra from structure constants and claimed primitive idempotents.
pub fn build_from_constants(spec: &ConstantsSpec) -> Result<Algebra, AlgebraError> {
    let n = spec.labels.len();
    let f = spec.field;
    if spec.products.len() != n || spec.products.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
        return Err(AlgebraError::Malformed("product table must be dim x dim x dim".into()));
    }
    if spec.unit.len() != n || spec.idempotents.iter().any(|e| e.len() != n) {
        return Err(AlgebraError::Malformed("vector length differs from dimension".into()));
    }
    if spec.idempotents.is_empty() {
        return Err(AlgebraError::BadIdempotents("no idempotents supplied".into()));
    }
    let reduce = |v: &Vec<u32>| v.iter().map(|x| x % f.p()).collect::<Vec<u32>>();
    let products = spec.products.iter().map(|r| r.iter().map(reduce).collect()).collect();
    let names = (1..=spec.idempotents.len()).map(|i| i.to_string()).collect();
    finish(
        f,
        spec.labels.clone(),
        products,
        reduce(&spec.unit),
        spec.idempotents.iter().map(reduce).collect(),
        names,
        None,
        None,
        false,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish(
    f: Fp,
    labels: Vec<String>,
    products: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    vertex_names: Vec<String>,
    radical: Option<Subspace>,
    arrows: Option<Vec<Arrow>>,
    path_labels: bool,
) -> Result<Algebra, AlgebraError> {
    let n = labels.len();
    let m = idempotents.len();
    let left: Vec<Mat> = (0..n).map(|i| Mat::from_cols(f, n, &products[i])).collect();
    let right: Vec<Mat> =
        (0..n).map(|j| Mat::from_cols(f, n, &(0..n).map(|i| products[i][j].clone()).collect::<Vec<_>>())).collect();
    let lmul = |x: &[u32]| combine_mats(f, &left, x, n);
    let mul = |x: &[u32], y: &[u32]| lmul(x).mul_vec(y);

    // Associativity: L_i L_j = L_{b_i b_j}.
    for i in 0..n {
        for j in 0..n {
            let lhs = left[i].mul(&left[j]);
            let rhs = lmul(&products[i][j]);
            if lhs != rhs {
                let k = (0..n).find(|&k| lhs.col(k) != rhs.col(k)).unwrap_or(0);
                return Err(AlgebraError::Associativity(i, j, k));
            }
        }
    }
    let id = Mat::identity(f, n);
    if lmul(&unit) != id || combine_mats(f, &right, &unit, n) != id {
        return Err(AlgebraError::BadUnit);
    }
    let mut sum = vec![0u32; n];
    for (a, e) in idempotents.iter().enumerate() {
        for (b, e2) in idempotents.iter().enumerate() {
            let p = mul(e, e2);
            let want = if a == b { e.clone() } else { vec![0; n] };
            if p != want {
                return Err(AlgebraError::BadIdempotents(format!("e{} e{} has the wrong value", a + 1, b + 1)));
            }
        }
        if e.iter().all(|&x| x == 0) {
            return Err(AlgebraError::BadIdempotents(format!("e{} is zero", a + 1)));
        }
        for (s, x) in sum.iter_mut().zip(e) {
            *s = f.add(*s, *x);
        }
    }
    if sum != unit {
        return Err(AlgebraError::BadIdempotents("idempotents do not sum to the unit".into()));
    }

    let radical = match radical {
        Some(r) => r,
        None => compute_radical(f, n, &idempotents, &mul)?,
    };
    // Two-sided ideal.
    for r in radical.vectors() {
        for i in 0..n {
            let bi = unit_vec(n, i);
            if !radical.contains(&mul(&bi, &r)) || !radical.contains(&mul(&r, &bi)) {
                return Err(AlgebraError::BadRadical("not a two-sided ideal".into()));
            }
        }
    }
    if radical.dim() + m != n {
        return Err(AlgebraError::BadRadical(format!(
            "codimension {} differs from the number of idempotents {m} (algebra not basic or idempotents not primitive)",
            n - radical.dim()
        )));
    }
    let mut top = radical.clone();
    for e in &idempotents {
        top = top.sum(&Subspace::from_vectors(f, n, std::slice::from_ref(e)));
    }
    if !top.is_full() {
        return Err(AlgebraError::BadRadical("idempotents are dependent modulo the radical".into()));
    }
    // Powers J^k until zero.
    let mut powers = Vec::new();
    let mut cur = radical.clone();
    while !cur.is_zero() {
        if powers.len() > n {
            return Err(AlgebraError::BadRadical("radical is not nilpotent".into()));
        }
        powers.push(cur.clone());
        let mut prods = Vec::new();
        for x in radical.vectors() {
            for y in cur.vectors() {
                prods.push(mul(&x, &y));
            }
        }
        let next = Subspace::from_vectors(f, n, &prods);
        if next == cur {
            return Err(AlgebraError::BadRadical("radical is not nilpotent".into()));
        }
        cur = next;
    }
    // Top functional: solve [e_1..e_m | J] c = x.
    let mut cols: Vec<Vec<u32>> = idempotents.clone();
    cols.extend(radical.vectors());
    let basis = Mat::from_cols(f, n, &cols);
    let inv = basis.inverse().ok_or_else(|| AlgebraError::BadRadical("top basis singular".into()))?;
    let top_functional = inv.submatrix(&(0..m).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());

    let j2 = powers.get(1).cloned().unwrap_or_else(|| Subspace::zero(f, n));
    let arrows = match arrows {
        Some(a) => a,
        None => gabriel_arrows(f, n, &idempotents, &radical, &j2, &mul),
    };

    let sides = [Orientation::Original, Orientation::Opposite].map(|o| {
        let (own, other) = match o {
            Orientation::Original => (&left, &right),
            Orientation::Opposite => (&right, &left),
        };
        let arrows: Vec<Arrow> = match o {
            Orientation::Original => arrows.clone(),
            Orientation::Opposite => arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source, elem: a.elem.clone() })
                .collect(),
        };
        build_side(f, n, own, other, &idempotents, &unit, arrows, o)
    });
    let sides = match sides {
        [Ok(a), Ok(b)] => [a, b],
        [Err(e), _] | [_, Err(e)] => return Err(e),
    };

    Ok(Algebra {
        inner: Arc::new(Inner {
            field: f,
            dim: n,
            labels,
            vertex_names,
            unit,
            idempotents,
            radical,
            radical_powers: powers,
            top_functional,
            path_labels,
            sides,
        }),
        orientation: Orientation::Original,
    })
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

/// Multiplication of coordinate vectors.
type Mul<'a> = dyn Fn(&[u32], &[u32]) -> Vec<u32> + 'a;

/// Radical of a basic algebra from its corner rings `e_v Λ e_v`.
fn compute_radical(f: Fp, n: usize, idempotents: &[Vec<u32>], mul: &Mul<'_>) -> Result<Subspace, AlgebraError> {
    // Each row of `constraints` is a linear functional vanishing on J.
    let mut constraints: Vec<Vec<u32>> = Vec::new();
    for (v, e) in idempotents.iter().enumerate() {
        let corner_vecs: Vec<Vec<u32>> = (0..n).map(|i| mul(&mul(e, &unit_vec(n, i)), e)).collect();
        let corner = Subspace::from_vectors(f, n, &corner_vecs);
        // χ_v on the corner basis.
        let mut values = Vec::new();
        for y in corner.vectors() {
            values.push(residue(f, e, &y, mul).ok_or(AlgebraError::NotPrimitive(v))?);
        }
        // Functional x -> χ_v(e x e): for each basis b_i, coords of e b_i e in corner basis.
        let mut row = vec![0u32; n];
        for (i, cv) in corner_vecs.iter().enumerate() {
            let c = corner.coords(cv);
            let mut acc = 0u32;
            for (a, b) in c.iter().zip(&values) {
                acc = f.add(acc, f.mul(*a, *b));
            }
            row[i] = acc;
        }
        constraints.push(row);
    }
    let cm = Mat::from_rows(f, n, &constraints);
    Ok(Subspace::from_rows(&crate::linalg::kernel_basis(&cm)))
}

/// For `y` in the corner ring with unit `e`, find `λ` with `y - λe` nilpotent.
fn residue(f: Fp, e: &[u32], y: &[u32], mul: &Mul<'_>) -> Option<u32> {
    let n = e.len();
    // Minimal polynomial from powers e, y, y^2, ...
    let mut powers: Vec<Vec<u32>> = vec![e.to_vec()];
    let coeffs = loop {
        let k = powers.len();
        let next = mul(y, &powers[k - 1]);
        let a = Mat::from_cols(f, n, &powers);
        let b = Mat::from_cols(f, n, std::slice::from_ref(&next));
        if let Some(x) = crate::linalg::solve(&a, &b).ok()? {
            // next = Σ x_i y^i, so m(t) = t^k - Σ x_i t^i.
            break x.col(0);
        }
        powers.push(next);
        if powers.len() > n + 1 {
            return None;
        }
    };
    let s = coeffs.len();
    let p = f.p() as usize;
    let mut pa = 1usize;
    while s % (pa * p) == 0 {
        pa *= p;
    }
    let u = (s / pa) as u32 % f.p();
    // Coefficient of t^{s - p^a} in m(t) is -coeffs[s - pa].
    let c = f.neg(coeffs[s - pa]);
    let lambda = f.mul(f.neg(c), f.inv(u));
    // Check m(t) = (t - λ)^s.
    let mut poly = vec![1u32];
    for _ in 0..s {
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(lambda, c));
        }
        poly = next;
    }
    let expected: Vec<u32> = coeffs.iter().map(|&c| f.neg(c)).chain(std::iter::once(1)).collect();
    (poly == expected).then_some(lambda)
}

fn gabriel_arrows(
    f: Fp,
    n: usize,
    idempotents: &[Vec<u32>],
    radical: &Subspace,
    j2: &Subspace,
    mul: &Mul<'_>,
) -> Vec<Arrow> {
    let mut out = Vec::new();
    for (s, es) in idempotents.iter().enumerate() {
        for (t, et) in idempotents.iter().enumerate() {
            let block: Vec<Vec<u32>> = radical.vectors().iter().map(|x| mul(&mul(et, x), es)).collect();
            let block = Subspace::from_vectors(f, n, &block);
            let sq: Vec<Vec<u32>> = j2.vectors().iter().map(|x| mul(&mul(et, x), es)).collect();
            let mut acc = Subspace::from_vectors(f, n, &sq);
            let mut k = 0;
            for x in block.vectors() {
                if !acc.contains(&x) {
                    acc = acc.sum(&Subspace::from_vectors(f, n, std::slice::from_ref(&x)));
                    k += 1;
                    out.push(Arrow { name: format!("a{}_{}_{}", s + 1, t + 1, k), source: s, target: t, elem: x });
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn build_side(
    f: Fp,
    n: usize,
    own: &[Mat],
    other: &[Mat],
    idempotents: &[Vec<u32>],
    unit: &[u32],
    arrows: Vec<Arrow>,
    orientation: Orientation,
) -> Result<SideData, AlgebraError> {
    let m = idempotents.len();
    let lmul = |x: &[u32]| combine_mats(f, own, x, n);
    let rmul = |x: &[u32]| combine_mats(f, other, x, n);
    let gens: Vec<Vec<u32>> = idempotents.iter().cloned().chain(arrows.iter().map(|a| a.elem.clone())).collect();
    let gen_mats: Vec<Mat> = gens.iter().map(|g| lmul(g)).collect();

    // Spin the idempotents under left multiplication by arrows.
    let mut words: Vec<Word> = Vec::new();
    let mut elems: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(f, n);
    for (v, e) in idempotents.iter().enumerate() {
        words.push(Word { gen: v, parent: None });
        elems.push(e.clone());
        span = span.sum(&Subspace::from_vectors(f, n, std::slice::from_ref(e)));
    }
    let mut head = 0;
    while head < words.len() {
        for a in 0..arrows.len() {
            let x = gen_mats[m + a].mul_vec(&elems[head]);
            if !span.contains(&x) {
                span = span.sum(&Subspace::from_vectors(f, n, std::slice::from_ref(&x)));
                words.push(Word { gen: m + a, parent: Some(head) });
                elems.push(x);
            }
        }
        head += 1;
    }
    if words.len() != n {
        return Err(AlgebraError::BadRadical("arrows and idempotents do not generate the algebra".into()));
    }
    let words_mat = Mat::from_cols(f, n, &elems);
    let basis_in_words = words_mat.inverse().ok_or_else(|| AlgebraError::BadRadical("word basis singular".into()))?;

    let mut proj_basis = Vec::new();
    let mut proj_action = Vec::new();
    for e in idempotents {
        let pb = Subspace::column_space(&rmul(e));
        let act: Vec<Mat> = gen_mats
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u32>> = pb.vectors().iter().map(|x| pb.coords(&g.mul_vec(x))).collect();
                Mat::from_cols(f, pb.dim(), &cols)
            })
            .collect();
        proj_basis.push(pb);
        proj_action.push(act);
    }

    let mut h = Sha256::new();
    h.update(format!("p={};n={};", f.p(), n));
    for mat in own {
        for c in 0..n {
            h.update(format!("{:?};", mat.col(c)));
        }
    }
    h.update(format!("u={unit:?};"));
    for e in idempotents {
        h.update(format!("e={e:?};"));
    }
    let _ = orientation;
    let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();

    Ok(SideData {
        mult: own.to_vec(),
        arrows,
        words,
        basis_in_words,
        proj_basis,
        proj_action,
        digest,
        cache: SideCache::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_quiver() {
        let q = QuiverSpec::new(&["1"], &[]).unwrap();
        let a = build_algebra(&Presentation { field: Fp::gf2(), quiver: q, relations: vec![], nilpotency: 1 }).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.radical().is_zero());
    }

    #[test]
    fn a2_and_branch_dims() {
        let a2 = fixtures::a2();
        assert_eq!(a2.dim(), 3);
        assert_eq!(a2.labels(), &["e1", "e2", "a"]);
        assert_eq!(a2.proj_dims(), vec![2, 1]);
        assert_eq!(a2.op().proj_dims(), vec![1, 2]);
        let b = fixtures::branch_a3();
        assert_eq!(b.dim(), 5);
        assert_eq!(b.proj_dims(), vec![3, 1, 1]);
        assert_eq!(b.op().proj_dims(), vec![1, 2, 2]);
    }

    #[test]
    fn dual_numbers_from_constants() {
        let a = fixtures::dual_numbers_constants();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical().vectors(), vec![vec![0, 1]]);
        assert_eq!(a.product_table(), a.op().product_table());
    }

    #[test]
    fn product_of_fields() {
        let f = Fp::gf2();
        let products = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]];
        let ok = ConstantsSpec {
            field: f,
            labels: vec!["u".into(), "v".into()],
            products: products.clone(),
            unit: vec![1, 1],
            idempotents: vec![vec![1, 0], vec![0, 1]],
        };
        let a = build_from_constants(&ok).unwrap();
        assert!(a.radical().is_zero());
        let bad = ConstantsSpec { idempotents: vec![vec![1, 1]], ..ok };
        assert!(matches!(build_from_constants(&bad), Err(AlgebraError::NotPrimitive(0))));
    }

    #[test]
    fn opposite_of_a2_is_reversed_arrow() {
        let a2 = fixtures::a2();
        let rev = fixtures::quiver_algebra(2, &["1", "2"], &[("a", "2", "1")], &[], 2);
        // Same path labels in the same order, so constants can be compared directly.
        assert_eq!(a2.op().product_table(), rev.product_table());
        assert_eq!(a2.op().op().product_table(), a2.product_table());
        assert_eq!(a2.op().op().digest(), a2.digest());
    }

    #[test]
    fn too_small_nilpotency_is_rejected() {
        let q = QuiverSpec::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let err = build_algebra(&Presentation { field: Fp::gf2(), quiver: q, relations: vec![], nilpotency: 2 });
        assert!(matches!(err, Err(AlgebraError::NilpotencyViolated { .. })));
    }

    #[test]
    fn non_admissible_relation_is_rejected() {
        let q = QuiverSpec::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let rel = Relation { terms: vec![(1, Path { start: 0, arrows: vec![0] })] };
        let err = build_algebra(&Presentation { field: Fp::gf2(), quiver: q, relations: vec![rel], nilpotency: 2 });
        assert_eq!(err.unwrap_err(), AlgebraError::NotAdmissible(0));
    }

    #[test]
    fn invariants_on_fixtures() {
        for (_, a) in fixtures::all() {
            let n = a.dim();
            let one = a.unit().to_vec();
            for i in 0..n {
                let bi = a.basis_vec(i);
                assert_eq!(a.mul(&one, &bi), bi);
                assert_eq!(a.mul(&bi, &one), bi);
                for j in 0..n {
                    for k in 0..n {
                        let (bj, bk) = (a.basis_vec(j), a.basis_vec(k));
                        assert_eq!(a.mul(&a.mul(&bi, &bj), &bk), a.mul(&bi, &a.mul(&bj, &bk)));
                    }
                }
            }
            assert_eq!(a.radical(), a.op().radical());
            assert_eq!(a.proj_dims().iter().sum::<usize>(), n);
            assert_eq!(a.op().proj_dims().iter().sum::<usize>(), n);
        }
    }
}
