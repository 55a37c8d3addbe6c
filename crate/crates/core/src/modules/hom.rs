use crate::linalg::{kernel_basis, Mat, Subspace};

use super::{Module, ModuleError, ModuleMap};

/// `Hom_Λ(M, N)` as a subspace of flattened `dim N x dim M` matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self, i: usize) -> Mat {
        self.unflatten(self.space.basis().row(i).to_vec())
    }

    /// Basis maps in canonical (reduced echelon) order.
    pub fn basis(&self) -> Vec<ModuleMap> {
        (0..self.dim())
            .map(|i| ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix(i)))
            .collect()
    }

    pub fn combine(&self, c: &[u32]) -> Mat {
        self.unflatten(self.space.combine(c))
    }

    /// Coordinates of a homomorphism in the canonical basis.
    pub fn coords(&self, m: &Mat) -> Vec<u32> {
        self.space.coords(&m.flatten())
    }

    fn unflatten(&self, v: Vec<u32>) -> Mat {
        Mat::from_vec(self.source.alg().field(), self.target.dim(), self.source.dim(), v)
    }
}

/// Solve `X ρ_M(g) = ρ_N(g) X` for every generator `g`.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace, ModuleError> {
    if !m.alg().same(n.alg()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let f = m.alg().field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomSpace { source: m.clone(), target: n.clone(), space: Subspace::zero(f, 0) });
    }
    // Idempotent equations force X into vertex blocks; solve those first to shrink the system.
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for (a, b) in m.gens().iter().zip(n.gens()) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u32; unknowns];
                for k in 0..dm {
                    let v = a.get(k, c);
                    if v != 0 {
                        row[r * dm + k] = f.add(row[r * dm + k], v);
                    }
                }
                for k in 0..dn {
                    let v = b.get(r, k);
                    if v != 0 {
                        row[k * dm + c] = f.sub(row[k * dm + c], v);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let space = if eqs.is_empty() {
        Subspace::full(f, unknowns)
    } else {
        Subspace::from_rows(&kernel_basis(&Mat::from_rows(f, unknowns, &eqs)))
    };
    Ok(HomSpace { source: m.clone(), target: n.clone(), space })
}
