//! Exact dense linear algebra over a prime field GF(p).
//!
//! Every subspace produced here is kept in reduced row echelon form, so two
//! subspaces are equal exactly when their basis matrices are entry-wise equal.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..=(1u64 << 31) - 1).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn gf2() -> Self {
        Fp { p: 2 }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Fp,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF({}) [", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows * cols");
        let p = field.p;
        Mat { rows, cols, field, data: data.into_iter().map(|v| v % p).collect() }
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|v| v % field.p));
        }
        Mat { rows: rows.len(), cols, field, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        Self::from_rows(field, rows, cols).transpose()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Mat { rows: self.rows, cols: other.cols, field: f, data: out.into_iter().map(|v| v as u32).collect() }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        Mat { rows: self.rows, cols: self.cols, field: f, data: self.data.iter().map(|&a| f.mul(a, s)).collect() }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = Mat::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            m.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, field: self.field, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Fp, blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.data[(r0 + r) * cols + c0 + c] = b.get(r, c);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let (r, piv) = rref(&self.hstack(&Mat::identity(self.field, n)));
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.submatrix(&idx, &cols))
    }

    /// Flatten row-major into a vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }
}

/// Reduced row echelon form and the strictly increasing list of pivot columns.
pub fn rref(a: &Mat) -> (Mat, Vec<usize>) {
    let mut m = a.clone();
    let pivots = rref_in_place(&mut m);
    (m, pivots)
}

fn rref_in_place(m: &mut Mat) -> Vec<usize> {
    let f = m.field;
    let (rows, cols) = (m.rows, m.cols);
    if f.p == 2 {
        return rref_gf2(m);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                m.data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(m.data[r * cols + c]);
        for k in c..cols {
            m.data[r * cols + k] = f.mul(m.data[r * cols + k], inv);
        }
        let pivot_row: Vec<u32> = m.data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let s = m.data[i * cols + c];
            if s == 0 {
                continue;
            }
            let row = &mut m.data[i * cols..(i + 1) * cols];
            for k in c..cols {
                row[k] = f.sub(row[k], f.mul(s, pivot_row[k]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

// Bit-packed elimination; produces exactly the same reduced form as the
// generic path.
fn rref_gf2(m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64);
    let mut bits = vec![0u64; rows * words];
    for r in 0..rows {
        for c in 0..cols {
            if m.data[r * cols + c] != 0 {
                bits[r * words + c / 64] |= 1u64 << (c % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| bits[i * words + w] & b != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..words {
                bits.swap(pr * words + k, r * words + k);
            }
        }
        let pivot_row: Vec<u64> = bits[r * words..(r + 1) * words].to_vec();
        for i in 0..rows {
            if i != r && bits[i * words + w] & b != 0 {
                for k in w..words {
                    bits[i * words + k] ^= pivot_row[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for r in 0..rows {
        for c in 0..cols {
            m.data[r * cols + c] = ((bits[r * words + c / 64] >> (c % 64)) & 1) as u32;
        }
    }
    pivots
}

/// Canonical basis (rows, reduced echelon form) of the right null space of `a`.
pub fn kernel_basis(a: &Mat) -> Mat {
    let f = a.field;
    let (r, pivots) = rref(a);
    let n = a.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Mat::zeros(f, free.len(), n);
    for (i, &fc) in free.iter().enumerate() {
        basis.data[i * n + fc] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            basis.data[i * n + pc] = f.neg(r.get(pr, fc));
        }
    }
    // The free-variable basis is already in reduced echelon form only up to
    // ordering; reducing once more makes it canonical.
    Subspace::from_rows(&basis).basis
}

/// Solve `a · x = b`. Returns the particular solution with free variables set to zero.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    if a.rows != b.rows {
        return Err(LinalgError::DimensionMismatch(format!("solve: a has {} rows, b has {} rows", a.rows, b.rows)));
    }
    if a.field != b.field {
        return Err(LinalgError::FieldMismatch(a.field.p, b.field.p));
    }
    let n = a.cols;
    let aug = a.hstack(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.field, n, b.cols);
    for (pr, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.data[pc * b.cols + j] = r.get(pr, n + j);
        }
    }
    Ok(Some(x))
}

/// A subspace of GF(p)^n held as a canonical reduced-echelon basis (rows).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace { basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Mat) -> Self {
        let (r, pivots) = rref(m);
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..m.cols).collect();
        Subspace { basis: r.submatrix(&keep, &all), pivots }
    }

    pub fn from_vectors(field: Fp, ambient: usize, vs: &[Vec<u32>]) -> Self {
        Self::from_rows(&Mat::from_rows(field, ambient, vs))
    }

    /// Column space of `m`.
    pub fn column_space(m: &Mat) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols
    }
    pub fn field(&self) -> Fp {
        self.basis.field
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Residue of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let s = out[pc];
            if s == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.sub(*o, f.mul(s, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in this basis. Only meaningful when `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// `Σ cᵢ bᵢ`
    pub fn combine(&self, c: &[u32]) -> Vec<u32> {
        assert_eq!(c.len(), self.dim());
        let f = self.field();
        let mut out = vec![0u32; self.ambient()];
        for (i, &s) in c.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.add(*o, f.mul(s, b));
            }
        }
        out
    }

    /// Non-pivot coordinates; a canonical complement basis.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Vectors orthogonal to the subspace under the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient());
        }
        Subspace::from_rows(&kernel_basis(&self.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image under a linear map given by `m` acting on column vectors.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(self.field(), m.rows);
        }
        Subspace::column_space(&m.mul(&self.basis.transpose()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> Fp {
        Fp::gf2()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(gf2(), 2);
        let (r, piv) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);
        let z = Mat::zeros(gf2(), 3, 3);
        let (r, piv) = rref(&z);
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_all_ones() {
        let a = Mat::from_rows(gf2(), 2, &[vec![1, 1], vec![1, 1]]);
        let (r, piv) = rref(&a);
        assert_eq!(r, Mat::from_rows(gf2(), 2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Mat::identity(gf2(), 3)).rows(), 0);
        assert_eq!(kernel_basis(&Mat::zeros(gf2(), 2, 3)).rows(), 3);
        let k = kernel_basis(&Mat::from_rows(gf2(), 2, &[vec![1, 1]]));
        assert_eq!(k, Mat::from_rows(gf2(), 2, &[vec![1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_rows(gf2(), 2, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(solve(&Mat::identity(gf2(), 2), &b).unwrap().unwrap(), b);
        let z = Mat::zeros(gf2(), 2, 2);
        assert!(solve(&z, &Mat::from_rows(gf2(), 1, &[vec![1], vec![0]])).unwrap().is_none());
        let a = Mat::from_rows(gf2(), 2, &[vec![1, 1], vec![0, 0]]);
        let x = solve(&a, &Mat::from_rows(gf2(), 1, &[vec![1], vec![0]])).unwrap().unwrap();
        assert_eq!(x, Mat::from_rows(gf2(), 1, &[vec![1], vec![0]]));
        assert!(matches!(solve(&a, &Mat::zeros(gf2(), 3, 1)), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn prime_checks() {
        assert!(Fp::new(2).is_ok());
        assert!(Fp::new(2_147_483_647).is_ok());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(9).is_err());
        let f = Fp::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
    }

    #[test]
    fn subspace_intersection() {
        let f = Fp::new(3).unwrap();
        let u = Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(&w);
        assert_eq!(i.vectors(), vec![vec![0, 1, 0]]);
    }

    fn arb_mat() -> impl Strategy<Value = Mat> {
        (prop_oneof![Just(2u64), Just(3), Just(5), Just(7919)], 1usize..6, 1usize..7).prop_flat_map(|(p, r, c)| {
            proptest::collection::vec(0u32..(p as u32), r * c)
                .prop_map(move |d| Mat::from_vec(Fp::new(p).unwrap(), r, c, d))
        })
    }

    /// Reference elimination with no GF(2) specialisation.
    fn generic_rref(a: &Mat) -> (Mat, Vec<usize>) {
        let f = a.field();
        let mut m = a.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else { continue };
            for k in 0..cols {
                m.data.swap(pr * cols + k, r * cols + k);
            }
            let inv = f.inv(m.get(r, c));
            for k in 0..cols {
                let v = f.mul(m.get(r, k), inv);
                m.set(r, k, v);
            }
            for i in 0..rows {
                if i != r {
                    let s = m.get(i, c);
                    for k in 0..cols {
                        let v = f.sub(m.get(i, k), f.mul(s, m.get(r, k)));
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated(a in arb_mat()) {
            let k = kernel_basis(&a);
            prop_assert!(a.mul(&k.transpose()).is_zero());
            prop_assert_eq!(a.rank() + k.rows(), a.cols());
        }

        #[test]
        fn rref_idempotent(a in arb_mat()) {
            let (r, piv) = rref(&a);
            let (r2, piv2) = rref(&r);
            prop_assert_eq!(&r, &r2);
            prop_assert_eq!(piv, piv2);
        }

        #[test]
        fn gf2_fast_path_matches_generic(d in proptest::collection::vec(0u32..2, 30)) {
            let a = Mat::from_vec(Fp::gf2(), 5, 6, d);
            prop_assert_eq!(rref(&a), generic_rref(&a));
        }

        #[test]
        fn solve_roundtrip(a in arb_mat(), seed in any::<u64>()) {
            let f = a.field();
            let x0: Vec<u32> = (0..a.cols()).map(|i| ((seed >> (i % 60)) as u32) % f.p()).collect();
            let b = Mat::from_cols(f, a.rows(), &[a.mul_vec(&x0)]);
            let x = solve(&a, &b).unwrap().expect("consistent system");
            prop_assert_eq!(a.mul(&x), b);
        }
    }
}
