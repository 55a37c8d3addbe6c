use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::extent::Extent;
use crate::homology::{dominant_from, injective_pds, min_inj_resolution, sum_pd, InjResolution};
use crate::modules::Module;

/// Minimal injective resolution of one regular module and the levels read off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideProfile {
    /// Vertices of the indecomposable summands of each term.
    pub terms: Vec<Vec<usize>>,
    /// Flat (= projective) dimension of each term.
    pub fd: Vec<Extent>,
    /// Injective dimension of the regular module.
    pub id: Extent,
    /// Largest `k` with `fd` of term `i` at most `i` for all `i < k`.
    pub gorenstein_level: Extent,
    /// Largest `k` with `fd` of term `i` at most `i + 1` for all `i < k`.
    pub quasi_level: Extent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinProfile {
    pub algebra: String,
    pub cap: usize,
    /// Resolution of the left regular module `ΛΛ`.
    pub left: SideProfile,
    /// Resolution of the right regular module, computed over the opposite algebra.
    pub right: SideProfile,
    /// `k`-Gorenstein level (from the left side; the right side must agree).
    pub gorenstein_level: Extent,
    pub dominant_dimension: Extent,
    /// `None` when the caps cannot decide.
    pub auslander_gorenstein: Option<bool>,
    pub left_quasi_auslander_gorenstein: Option<bool>,
    pub right_quasi_auslander_gorenstein: Option<bool>,
    /// Both sides' Gorenstein levels are exact and differ.
    pub symmetry_violation: bool,
}

impl GorensteinProfile {
    pub fn is_k_gorenstein(&self, k: usize) -> Option<bool> {
        self.gorenstein_level.ge(k)
    }
    pub fn is_infinity_gorenstein(&self) -> bool {
        self.gorenstein_level == Extent::Infinite
    }
    pub fn left_quasi(&self, k: usize) -> Option<bool> {
        self.left.quasi_level.ge(k)
    }
    pub fn right_quasi(&self, k: usize) -> Option<bool> {
        self.right.quasi_level.ge(k)
    }
    /// Both quasi Auslander-Gorenstein flags hold.
    pub fn quasi_auslander_gorenstein(&self) -> Option<bool> {
        match (self.left_quasi_auslander_gorenstein, self.right_quasi_auslander_gorenstein) {
            (Some(true), Some(true)) => Some(true),
            (Some(false), _) | (_, Some(false)) => Some(false),
            _ => None,
        }
    }
}

/// Level of the condition `fd(term i) ≤ i + slack` for all `i < k`.
fn level(r: &InjResolution, fd: &[Extent], slack: usize) -> Extent {
    for (i, d) in fd.iter().enumerate() {
        match d.le(i + slack) {
            Some(true) => {}
            Some(false) => return Extent::Exact(i),
            None => return Extent::AtLeast(i),
        }
    }
    if r.id.is_exact() {
        // All later terms vanish.
        return Extent::Infinite;
    }
    if let Some((a, b)) = r.period {
        // Terms repeat from index `a` with period `b - a`; if their dimensions
        // are bounded by the number of checked terms, every later index passes.
        let n = fd.len();
        let bound = fd[a.min(n)..b.min(n)].iter().try_fold(0usize, |m, d| d.exact().map(|x| m.max(x)));
        if let Some(f) = bound {
            if b <= n && f < n + slack {
                return Extent::Infinite;
            }
        }
    }
    Extent::AtLeast(fd.len())
}

fn side(alg: &Algebra, cap: usize) -> (SideProfile, InjResolution, Vec<Extent>) {
    let r = min_inj_resolution(&Module::regular(alg), cap);
    let pds = injective_pds(alg, cap);
    let fd: Vec<Extent> = r.terms.iter().map(|t| sum_pd(t, &pds)).collect();
    let s = SideProfile {
        terms: r.terms.clone(),
        gorenstein_level: level(&r, &fd, 0),
        quasi_level: level(&r, &fd, 1),
        fd,
        id: r.id,
    };
    (s, r, pds)
}

fn quasi_ag(quasi: Extent, ids: [Extent; 2]) -> Option<bool> {
    match quasi {
        Extent::Exact(_) => Some(false),
        Extent::Infinite => {
            if ids.iter().all(|d| d.is_exact()) {
                Some(true)
            } else if ids.contains(&Extent::Infinite) {
                Some(false)
            } else {
                None
            }
        }
        Extent::AtLeast(_) => None,
    }
}

/// Injective resolutions of both regular modules up to `cap` terms, with the
/// Gorenstein, quasi-Gorenstein and dominant-dimension levels they determine.
pub fn gorenstein_profile(alg: &Algebra, cap: usize) -> GorensteinProfile {
    let (left, lr, pds) = side(alg, cap);
    let (right, _, _) = side(&alg.op(), cap);
    let ids = [left.id, right.id];
    let symmetry_violation = match (left.gorenstein_level, right.gorenstein_level) {
        (Extent::Exact(a), Extent::Exact(b)) => a != b,
        (Extent::Exact(_), Extent::Infinite) | (Extent::Infinite, Extent::Exact(_)) => true,
        _ => false,
    };
    GorensteinProfile {
        algebra: alg.digest().to_string(),
        cap,
        gorenstein_level: left.gorenstein_level,
        dominant_dimension: dominant_from(&lr, &pds),
        auslander_gorenstein: quasi_ag(left.gorenstein_level, ids),
        left_quasi_auslander_gorenstein: quasi_ag(left.quasi_level, ids),
        right_quasi_auslander_gorenstein: quasi_ag(right.quasi_level, ids),
        symmetry_violation,
        left,
        right,
    }
}
