use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::Mat;

use super::{hom_space, Module, ModuleError};

/// Isomorphism invariants that are cheap to compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleKey {
    pub dim_vector: Vec<usize>,
    /// Per-vertex dimensions of the layers of the radical series.
    pub radical_layers: Vec<Vec<usize>>,
    /// Per-vertex dimensions of the layers of the socle series.
    pub socle_layers: Vec<Vec<usize>>,
    pub arrow_ranks: Vec<usize>,
}

pub fn invariant_key(m: &Module) -> ModuleKey {
    let layer_dims =
        |series: &[crate::linalg::Subspace]| -> Vec<Vec<usize>> { series.iter().map(|s| m.dims_of(s)).collect() };
    ModuleKey {
        dim_vector: m.dim_vector(),
        radical_layers: layer_dims(&m.radical_series()),
        socle_layers: layer_dims(&m.socle_series()),
        arrow_ranks: m.arrow_mats().iter().map(|a| a.rank()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Certified by an invertible intertwiner `source -> target`.
    Isomorphic(Mat),
    NotIsomorphic(String),
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IsoOptions {
    pub seed: u64,
    pub samples: usize,
    /// Largest `|Hom(M, N)|` searched exhaustively.
    pub exhaustive_budget: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { seed: 0, samples: 64, exhaustive_budget: 1 << 16 }
    }
}

/// Decide `M ≅ N`. A positive answer carries a witness; a negative one comes
/// from a differing invariant or from an exhaustive search of `Hom(M, N)`.
pub fn is_isomorphic(m: &Module, n: &Module, opts: &IsoOptions) -> Result<IsoVerdict, ModuleError> {
    if !m.alg().same(n.alg()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let f = m.alg().field();
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::NotIsomorphic("dimensions differ".into()));
    }
    if m.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic(Mat::zeros(f, 0, 0)));
    }
    let (km, kn) = (invariant_key(m), invariant_key(n));
    if km.dim_vector != kn.dim_vector {
        return Ok(IsoVerdict::NotIsomorphic("dimension vectors differ".into()));
    }
    if km != kn {
        return Ok(IsoVerdict::NotIsomorphic("radical or socle layers differ".into()));
    }
    let h = hom_space(m, n)?;
    if h.dim() == 0 {
        return Ok(IsoVerdict::NotIsomorphic("no nonzero homomorphisms".into()));
    }
    let end = hom_space(m, m)?;
    if end.dim() != h.dim() {
        return Ok(IsoVerdict::NotIsomorphic("dim Hom(M, N) differs from dim End(M)".into()));
    }
    let back = hom_space(n, m)?;
    if back.dim() != h.dim() {
        return Ok(IsoVerdict::NotIsomorphic("dim Hom(N, M) differs from dim End(M)".into()));
    }
    for i in 0..h.dim() {
        let x = h.matrix(i);
        if x.is_invertible() {
            return Ok(IsoVerdict::Isomorphic(x));
        }
    }
    let p = f.p();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let c: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
        let x = h.combine(&c);
        if x.is_invertible() {
            return Ok(IsoVerdict::Isomorphic(x));
        }
    }
    let total = (p as u64).checked_pow(h.dim() as u32);
    match total {
        Some(t) if t <= opts.exhaustive_budget => {
            let mut c = vec![0u32; h.dim()];
            for mut idx in 0..t {
                for slot in c.iter_mut() {
                    *slot = (idx % p as u64) as u32;
                    idx /= p as u64;
                }
                let x = h.combine(&c);
                if x.is_invertible() {
                    return Ok(IsoVerdict::Isomorphic(x));
                }
            }
            Ok(IsoVerdict::NotIsomorphic("exhaustive search found no invertible homomorphism".into()))
        }
        _ => Ok(IsoVerdict::Unknown),
    }
}
