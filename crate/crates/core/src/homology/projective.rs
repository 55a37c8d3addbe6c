use crate::algebra::Algebra;
use crate::linalg::{Mat, Subspace};
use crate::modules::Module;

/// `⊕ Λe_v` over a list of vertices (with repetition).
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    alg: Algebra,
    vertices: Vec<usize>,
}

impl ProjectiveSum {
    pub fn new(alg: &Algebra, vertices: Vec<usize>) -> Self {
        ProjectiveSum { alg: alg.clone(), vertices }
    }
    pub fn zero(alg: &Algebra) -> Self {
        Self::new(alg, vec![])
    }
    pub fn alg(&self) -> &Algebra {
        &self.alg
    }
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
    pub fn is_zero(&self) -> bool {
        self.vertices.is_empty()
    }
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.alg.num_vertices()];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }
    pub fn offsets(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .scan(0, |s, &v| {
                let o = *s;
                *s += self.alg.proj_basis(v).dim();
                Some(o)
            })
            .collect()
    }
    pub fn dim(&self) -> usize {
        self.vertices.iter().map(|&v| self.alg.proj_basis(v).dim()).sum()
    }

    pub fn module(&self) -> Module {
        if self.vertices.is_empty() {
            return Module::zero(&self.alg);
        }
        let parts: Vec<Module> = self.vertices.iter().map(|&v| Module::projective(&self.alg, v)).collect();
        Module::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same algebra")
    }

    /// `P* = ⊕ e_vΛ`, a sum of projectives over the opposite algebra.
    pub fn dual(&self) -> ProjectiveSum {
        ProjectiveSum::new(&self.alg.op(), self.vertices.clone())
    }

    pub fn direct_sum(&self, other: &ProjectiveSum) -> ProjectiveSum {
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        ProjectiveSum::new(&self.alg, v)
    }

    /// Algebra element of the `k`-th summand from its coordinates in `Λe_v`.
    fn element(&self, k: usize, coords: &[u32]) -> Vec<u32> {
        self.alg.proj_basis(self.vertices[k]).combine(coords)
    }

    /// Split a vector of the sum into algebra elements, one per summand.
    pub fn split(&self, v: &[u32]) -> Vec<Vec<u32>> {
        let offs = self.offsets();
        (0..self.vertices.len())
            .map(|k| {
                let d = self.alg.proj_basis(self.vertices[k]).dim();
                self.element(k, &v[offs[k]..offs[k] + d])
            })
            .collect()
    }
}

/// A map `⊕_k Λe_{u_k} → ⊕_l Λe_{w_l}` sending the generator `e_{u_k}` to
/// `(a_{kl})_l` with `a_{kl} ∈ e_{u_k} Λ e_{w_l}`; so `x ↦ (x a_{kl})_l`.
#[derive(Clone, Debug)]
pub struct ProjMap {
    pub source: ProjectiveSum,
    pub target: ProjectiveSum,
    pub elems: Vec<Vec<Vec<u32>>>,
}

impl ProjMap {
    pub fn zero(source: &ProjectiveSum, target: &ProjectiveSum) -> Self {
        let n = source.alg.dim();
        ProjMap {
            source: source.clone(),
            target: target.clone(),
            elems: vec![vec![vec![0; n]; target.vertices.len()]; source.vertices.len()],
        }
    }

    pub fn identity(p: &ProjectiveSum) -> Self {
        let mut m = Self::zero(p, p);
        for (k, &v) in p.vertices.iter().enumerate() {
            m.elems[k][k] = p.alg.idempotent(v).to_vec();
        }
        m
    }

    /// `target.dim x source.dim` matrix.
    pub fn matrix(&self) -> Mat {
        let alg = &self.source.alg;
        let f = alg.field();
        let mut out = Mat::zeros(f, self.target.dim(), self.source.dim());
        let so = self.source.offsets();
        let to = self.target.offsets();
        for (k, &u) in self.source.vertices.iter().enumerate() {
            let pb = alg.proj_basis(u);
            for b in 0..pb.dim() {
                let x = pb.basis().row(b);
                for (l, &w) in self.target.vertices.iter().enumerate() {
                    let a = &self.elems[k][l];
                    if a.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let y = alg.mul(x, a);
                    for (c, val) in alg.proj_basis(w).coords(&y).into_iter().enumerate() {
                        out.set(to[l] + c, so[k] + b, val);
                    }
                }
            }
        }
        out
    }

    /// `Hom(−, Λ)` of the map: the same elements, transposed, over the opposite algebra.
    pub fn dual(&self) -> ProjMap {
        let elems = (0..self.target.vertices.len())
            .map(|l| (0..self.source.vertices.len()).map(|k| self.elems[k][l].clone()).collect())
            .collect();
        ProjMap { source: self.target.dual(), target: self.source.dual(), elems }
    }

    /// Whether every component lies in the radical.
    pub fn is_radical(&self) -> bool {
        self.elems.iter().flatten().all(|a| self.source.alg.in_radical(a))
    }

    pub fn block_sum(&self, other: &ProjMap) -> ProjMap {
        let n = self.source.alg.dim();
        let mut out = ProjMap::zero(&self.source.direct_sum(&other.source), &self.target.direct_sum(&other.target));
        let (ks, ls) = (self.source.vertices.len(), self.target.vertices.len());
        for k in 0..ks {
            for l in 0..ls {
                out.elems[k][l] = self.elems[k][l].clone();
            }
        }
        for k in 0..other.source.vertices.len() {
            for l in 0..other.target.vertices.len() {
                out.elems[ks + k][ls + l] = other.elems[k][l].clone();
            }
        }
        debug_assert!(out.elems.iter().flatten().all(|a| a.len() == n));
        out
    }
}

/// A projective cover of a submodule `K` of some module `M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub proj: ProjectiveSum,
    /// Images of the generators `e_v`, as vectors of `M`.
    pub gens: Vec<Vec<u32>>,
    /// `dim M x dim P`.
    pub matrix: Mat,
}

/// Lift a basis of `e_v(K/JK)` for each vertex and map `⊕ Λe_v` onto `K`.
pub fn projective_cover(m: &Module, k: &Subspace) -> Cover {
    let alg = m.alg();
    let f = alg.field();
    let mut jk = Subspace::zero(f, m.dim());
    for a in m.arrow_mats() {
        jk = jk.sum(&k.image_under(a));
    }
    let mut vertices = Vec::new();
    let mut gens = Vec::new();
    for v in 0..alg.num_vertices() {
        let ev = m.idem(v);
        let mut span = jk.image_under(ev);
        for x in k.image_under(ev).vectors() {
            if !span.contains(&x) {
                span = span.sum(&Subspace::from_vectors(f, m.dim(), std::slice::from_ref(&x)));
                vertices.push(v);
                gens.push(x);
            }
        }
    }
    let proj = ProjectiveSum::new(alg, vertices);
    let mut cols = Vec::with_capacity(proj.dim());
    for (g, &v) in gens.iter().zip(proj.vertices()) {
        for x in alg.proj_basis(v).vectors() {
            cols.push(m.act(&x).mul_vec(g));
        }
    }
    let matrix = if cols.is_empty() { Mat::zeros(f, m.dim(), 0) } else { Mat::from_cols(f, m.dim(), &cols) };
    Cover { proj, gens, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modules::ModuleMap;

    #[test]
    fn cover_of_simple_is_projective() {
        let a2 = fixtures::a2();
        let s1 = Module::simple(&a2, 0);
        let c = projective_cover(&s1, &Subspace::full(a2.field(), 1));
        assert_eq!(c.proj.vertices(), &[0]);
        assert_eq!(c.matrix.rank(), 1);
        assert!(ModuleMap::new(c.proj.module(), s1, c.matrix).is_ok());
    }

    #[test]
    fn projmap_matrices_intertwine() {
        for (_, a) in fixtures::all() {
            let p = ProjectiveSum::new(&a, (0..a.num_vertices()).collect());
            let id = ProjMap::identity(&p);
            assert_eq!(id.matrix(), Mat::identity(a.field(), p.dim()));
            let reg = Module::regular(&a);
            let c = projective_cover(&reg, &Subspace::full(a.field(), a.dim()));
            assert_eq!(c.proj.dim(), a.dim());
            assert!(c.matrix.is_invertible());
            assert!(ModuleMap::new(c.proj.module(), reg, c.matrix).is_ok());
        }
    }

    #[test]
    fn arrow_map_and_dual() {
        let a2 = fixtures::a2();
        // P2 -> P1, e2 ↦ a.
        let src = ProjectiveSum::new(&a2, vec![1]);
        let tgt = ProjectiveSum::new(&a2, vec![0]);
        let a = a2.arrows()[0].elem.clone();
        let f = ProjMap { source: src.clone(), target: tgt.clone(), elems: vec![vec![a]] };
        assert!(f.is_radical());
        let m = f.matrix();
        assert_eq!(m.rank(), 1);
        assert!(ModuleMap::new(src.module(), tgt.module(), m).is_ok());
        let d = f.dual();
        assert!(d.source.alg().is_opposite());
        let dm = d.matrix();
        assert_eq!(dm.rank(), 1);
        assert!(ModuleMap::new(d.source.module(), d.target.module(), dm).is_ok());
    }
}
