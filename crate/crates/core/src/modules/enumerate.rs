use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::Algebra;
use crate::linalg::Mat;

use super::{invariant_key, is_isomorphic, IsoOptions, IsoVerdict, Module, ModuleKey};

/// Nonzero modules up to a total dimension, one per isomorphism class found.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub modules: Vec<Module>,
    pub dim_cap: usize,
    /// False when some dimension vector exceeded the candidate budget.
    pub complete: bool,
    /// Dimension vectors skipped because of the budget.
    pub skipped: Vec<Vec<usize>>,
    /// Pairs the isomorphism test could not decide; both were kept.
    pub undecided: usize,
}

/// Enumerate every representation with total dimension in `1..=dim_cap`,
/// keeping one representative per isomorphism class.
pub fn enumerate_modules(alg: &Algebra, dim_cap: usize, max_candidates: u64) -> Corpus {
    let f = alg.field();
    let p = f.p() as u64;
    let nv = alg.num_vertices();
    let arrows = alg.arrows();
    let mut modules = Vec::new();
    let mut skipped = Vec::new();
    let mut undecided = 0;
    let opts = IsoOptions::default();
    for dims in dimension_vectors(nv, dim_cap) {
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let total = match p.checked_pow(entries as u32) {
            Some(t) if t <= max_candidates => t,
            _ => {
                skipped.push(dims);
                continue;
            }
        };
        let mut buckets: BTreeMap<ModuleKey, Vec<Module>> = BTreeMap::new();
        let mut found: Vec<Module> = Vec::new();
        let mut digits = vec![0u32; entries];
        for idx in 0..total {
            let mut x = idx;
            for d in digits.iter_mut() {
                *d = (x % p) as u32;
                x /= p;
            }
            let mut off = 0;
            let mats: Vec<Mat> = shapes
                .iter()
                .map(|&(r, c)| {
                    let m = Mat::from_vec(f, r, c, digits[off..off + r * c].to_vec());
                    off += r * c;
                    m
                })
                .collect();
            let Ok(m) = Module::from_arrow_matrices(alg, &dims, &mats) else { continue };
            let key = invariant_key(&m);
            let bucket = buckets.entry(key).or_default();
            let mut duplicate = false;
            for rep in bucket.iter() {
                match is_isomorphic(&m, rep, &opts).expect("same algebra") {
                    IsoVerdict::Isomorphic(_) => {
                        duplicate = true;
                        break;
                    }
                    IsoVerdict::Unknown => undecided += 1,
                    IsoVerdict::NotIsomorphic(_) => {}
                }
            }
            if !duplicate {
                bucket.push(m.clone());
                found.push(m);
            }
        }
        modules.extend(found);
    }
    Corpus { modules, dim_cap, complete: skipped.is_empty(), skipped, undecided }
}

/// Dimension vectors with total in `1..=cap`, ordered by total then lexicographically.
fn dimension_vectors(nv: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 1..=cap {
        let mut cur = vec![0usize; nv];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: usize, pos: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        return;
    }
    for k in (0..=rest).rev() {
        cur[pos] = k;
        compositions(rest - k, pos + 1, cur, out);
    }
}

/// A random module of dimension at most `max_dim`, built from projectives and
/// injectives by taking submodules, quotients and sums.
pub fn random_module<R: Rng>(alg: &Algebra, rng: &mut R, max_dim: usize) -> Module {
    let f = alg.field();
    let nv = alg.num_vertices();
    let pick = |rng: &mut R| -> Module {
        let v = rng.gen_range(0..nv);
        match rng.gen_range(0..3) {
            0 => Module::projective(alg, v),
            1 => Module::injective(alg, v),
            _ => Module::simple(alg, v),
        }
    };
    let mut m = pick(rng);
    for _ in 0..rng.gen_range(0..3) {
        let other = pick(rng);
        m = Module::direct_sum(&[&m, &other]).expect("same algebra");
    }
    let random_vec = |rng: &mut R, d: usize| -> Vec<u32> { (0..d).map(|_| rng.gen_range(0..f.p())).collect() };
    while m.dim() > max_dim {
        let d = m.dim();
        let mut v = random_vec(rng, d);
        if v.iter().all(|&x| x == 0) {
            v[rng.gen_range(0..d)] = 1;
        }
        let u = m.spin(&[v]);
        m = m.quotient(&u).0;
    }
    for _ in 0..rng.gen_range(0..3) {
        let d = m.dim();
        let u = m.spin(&[random_vec(rng, d)]);
        m = if rng.gen_bool(0.5) { m.submodule(&u).0 } else { m.quotient(&u).0 };
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dimension_vector_order() {
        assert_eq!(dimension_vectors(2, 2), vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(dimension_vectors(1, 3), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn a2_small_corpus() {
        // Modules of dim <= 2 over A2: S1, S2, P1, S1², S1⊕S2, S2².
        let c = enumerate_modules(&fixtures::a2(), 2, 1 << 20);
        assert!(c.complete);
        assert_eq!(c.modules.len(), 6);
        assert_eq!(c.undecided, 0);
    }

    #[test]
    fn dual_numbers_corpus_matches_jordan_types() {
        // Partitions of n into parts of size <= 2: 1, 2, 2, 3 for n = 1..4.
        let c = enumerate_modules(&fixtures::dual_numbers(), 4, 1 << 20);
        assert!(c.complete);
        assert_eq!(c.modules.len(), 1 + 2 + 2 + 3);
    }

    #[test]
    fn budget_marks_incomplete() {
        let c = enumerate_modules(&fixtures::dual_numbers(), 3, 1 << 4);
        assert!(!c.complete);
        assert_eq!(c.skipped, vec![vec![3]]);
    }

    #[test]
    fn random_modules_respect_cap() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (_, a) in fixtures::all() {
            for _ in 0..20 {
                let m = random_module(&a, &mut rng, 4);
                assert!(m.dim() <= 4);
                assert!(m.validate().is_ok());
            }
        }
    }
}
