use std::collections::HashSet;

use crate::linalg::Subspace;

use super::Module;

/// Submodules of a module, each given by its canonical basis.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    pub module: Module,
    /// Sorted by dimension, then by basis entries.
    pub subspaces: Vec<Subspace>,
    pub complete: bool,
    pub cap: usize,
}

impl SubmoduleLattice {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Nonzero submodules as modules.
    pub fn nonzero_modules(&self) -> impl Iterator<Item = (&Subspace, Module)> + '_ {
        self.subspaces.iter().filter(|s| !s.is_zero()).map(|s| (s, self.module.submodule(s).0))
    }
}

/// Enumerate submodules by walking up the lattice from `0`.
///
/// Every submodule `W ⊋ U` contains `U + kv` for some vertex-homogeneous `v`
/// whose class spans a simple submodule of `M/U`, so a breadth-first walk over
/// such one-step covers reaches every submodule. Stops once `cap` subspaces are
/// found, flagging the result as incomplete.
pub fn all_submodules(m: &Module, cap: usize) -> SubmoduleLattice {
    let f = m.alg().field();
    let d = m.dim();
    let zero = Subspace::zero(f, d);
    let mut seen: HashSet<Subspace> = HashSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    let mut complete = true;
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in frontier {
            if u.is_full() {
                continue;
            }
            let (q, _) = m.quotient(&u);
            let soc = q.socle_space();
            let free = u.free_columns();
            for v in 0..m.alg().num_vertices() {
                let piece = soc.image_under(q.idem(v));
                let k = piece.dim();
                if k == 0 {
                    continue;
                }
                for c in projective_points(f.p(), k) {
                    let qv = piece.combine(&c);
                    let mut lift = vec![0u32; d];
                    for (j, &fc) in free.iter().enumerate() {
                        lift[fc] = qv[j];
                    }
                    let w = u.sum(&Subspace::from_vectors(f, d, &[lift]));
                    if seen.insert(w.clone()) {
                        if seen.len() > cap {
                            seen.remove(&w);
                            complete = false;
                            break 'outer;
                        }
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut subspaces: Vec<Subspace> = seen.into_iter().collect();
    subspaces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis().data().cmp(b.basis().data())));
    SubmoduleLattice { module: m.clone(), subspaces, complete, cap }
}

/// Nonzero vectors of `GF(p)^k` whose first nonzero entry is 1.
pub(crate) fn projective_points(p: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let count = (p as u64).pow(tail as u32);
        for mut idx in 0..count {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            out.push(v);
        }
    }
    out
}
