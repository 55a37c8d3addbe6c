use rand::Rng;

use crate::algebra::Algebra;
use crate::extent::Extent;
use crate::homology::{
    dual_map, dual_module, ext_lambda, grade, is_k_torsionfree, min_inj_resolution, purity_classify, strong_grade,
};
use crate::linalg::Subspace;
use crate::modules::{hom_space, is_isomorphic, random_module, IsoOptions, IsoVerdict, Module, ModuleMap};

use super::verdict::{Tally, TheoremVerdict};
use super::Context;

/// `I'_0, ..., I'_{cap}` of the regular module over `alg`.
pub(crate) fn injective_terms(alg: &Algebra, cap: usize) -> Vec<Module> {
    min_inj_resolution(&Module::regular(alg), cap).term_modules
}

/// `Hom(M, I'_0 ⊕ ... ⊕ I'_n) = 0`.
pub(crate) fn in_c_class(m: &Module, terms: &[Module], n: usize) -> bool {
    terms.iter().take(n + 1).all(|t| hom_space(m, t).expect("same algebra").dim() == 0)
}

fn opposite_of(ctx: &Context, m: &Module) -> bool {
    !m.alg().same(&ctx.alg)
}

/// Is `m ≅ n`, with the returned isomorphism re-checked as a module map.
pub(crate) fn iso_checked(m: &Module, n: &Module, seed: u64) -> Option<bool> {
    let opts = IsoOptions { seed, ..IsoOptions::default() };
    match is_isomorphic(m, n, &opts).expect("same algebra") {
        IsoVerdict::Isomorphic(t) => Some(ModuleMap::new(m.clone(), n.clone(), t).map(|f| f.is_iso()).unwrap_or(false)),
        IsoVerdict::NotIsomorphic(_) => Some(false),
        IsoVerdict::Unknown => None,
    }
}

/// `s.grade Ext^i(M, Λ) ≥ i` for `1 ≤ i ≤ k`, on both sides, for a `k`-Gorenstein algebra.
///
/// When the algebra is not `k`-Gorenstein the sweep still runs and records
/// whether a module violating the condition was found.
pub fn auslander_crosscheck(ctx: &Context, k: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("auslander-strong-grade", &ctx.alg);
    t.input("k", k).input("dim_cap", caps.dim_cap).input("lattice_cap", caps.lattice_cap);
    let hyp = ctx.profile().is_k_gorenstein(k);
    t.hypothesis(hyp == Some(true));
    if hyp.is_none() {
        t.undecided(|| format!("k-Gorenstein level undecided within cap {}", caps.cap), &[]);
    }
    let mut failures = 0;
    let mut incomplete = 0;
    let mut swept = 0;
    for opposite in [false, true] {
        for m in ctx.sweep(opposite) {
            swept += 1;
            for i in 1..=k {
                let e = ext_lambda(&m, i).value;
                if e.is_zero() {
                    if t.hypothesis_met() {
                        t.check(true, String::new, &[]);
                    }
                    continue;
                }
                let sg = strong_grade(&e, caps.cap.max(k), caps.lattice_cap);
                let v = match sg.value.ge(i) {
                    Some(true) if !sg.complete => None,
                    other => other,
                };
                if !sg.complete {
                    incomplete += 1;
                }
                if v == Some(false) {
                    failures += 1;
                }
                if t.hypothesis_met() {
                    t.decide(v, || format!("s.grade Ext^{i}(M, Λ) = {} < {i}", sg.value), &[&m]);
                }
            }
        }
    }
    t.evidence("modules", swept).evidence("violations", failures).evidence("incomplete_lattices", incomplete);
    if !t.hypothesis_met() {
        t.note(format!("converse direction: {failures} violating pairs found"));
    }
    t.finish()
}

/// Quasi version: a left quasi `k`-Gorenstein algebra has `grade Ext^i(M, Λ) ≥ i`
/// for left `M` and `s.grade Ext^{i+1}(N, Λ) ≥ i` for right `N`; dually on the right.
pub fn quasi_grade_crosscheck(ctx: &Context, k: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("quasi-gorenstein-grade", &ctx.alg);
    t.input("k", k).input("dim_cap", caps.dim_cap);
    let p = ctx.profile();
    let sides = [(false, p.left_quasi(k)), (true, p.right_quasi(k))];
    t.hypothesis(sides.iter().any(|(_, h)| *h == Some(true)));
    for (opposite, hyp) in sides {
        if hyp != Some(true) {
            continue;
        }
        // Modules on the quasi side: plain grade. Other side: strong grade one degree up.
        for m in ctx.sweep(opposite) {
            for i in 1..=k {
                let g = grade(&ext_lambda(&m, i).value, caps.cap.max(k));
                t.decide(g.ge(i), || format!("grade Ext^{i}(M, Λ) = {g} < {i}"), &[&m]);
            }
        }
        for n in ctx.sweep(!opposite) {
            for i in 1..=k {
                let e = ext_lambda(&n, i + 1).value;
                if e.is_zero() {
                    t.check(true, String::new, &[]);
                    continue;
                }
                let sg = strong_grade(&e, caps.cap.max(k), caps.lattice_cap);
                let v = match sg.value.ge(i) {
                    Some(true) if !sg.complete => None,
                    other => other,
                };
                t.decide(v, || format!("s.grade Ext^{}(N, Λ) = {} < {i}", i + 1, sg.value), &[&n]);
            }
        }
    }
    t.finish()
}

/// `Ext^i(Ext^i(Ext^g(M, Λ), Λ), Λ)` vanishes exactly for `i ≠ g = grade M`;
/// also `grade Ext^g(M, Λ) = g`, and `M ≅ Ext^g(Ext^g(M, Λ), Λ)` when the
/// other side's self-injective dimension is `g`.
pub fn verify_triple_ext(ctx: &Context, modules: &[Module], report_bound: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let p = ctx.profile();
    let mut t = Tally::new("triple-ext", &ctx.alg);
    t.input("report_bound", report_bound).input("modules", modules.len());
    let mut hyp_any = false;
    let (mut iso_checks, mut infinite) = (0, 0);
    for m in modules {
        let opposite = opposite_of(ctx, m);
        let (quasi, other_id) =
            if opposite { (p.right.quasi_level, p.left.id) } else { (p.left.quasi_level, p.right.id) };
        if quasi != Extent::Infinite || m.is_zero() {
            continue;
        }
        hyp_any = true;
        let g = match grade(m, caps.cap) {
            Extent::Exact(g) => g,
            Extent::Infinite => {
                infinite += 1;
                continue;
            }
            e => {
                t.undecided(|| format!("grade {e} not decided"), &[m]);
                continue;
            }
        };
        let e = ext_lambda(m, g).value;
        for i in 0..=report_bound {
            let x = ext_lambda(&ext_lambda(&e, i).value, i).value;
            t.check(
                x.is_zero() == (i != g),
                || format!("grade {g}: triple Ext in degree {i} has dim {}", x.dim()),
                &[m],
            );
        }
        let ge = grade(&e, caps.cap);
        t.decide(ge.decided_eq(Extent::Exact(g)), || format!("grade Ext^{g}(M, Λ) = {ge}, expected {g}"), &[m]);
        if other_id == Extent::Exact(g) {
            iso_checks += 1;
            let back = ext_lambda(&e, g).value;
            t.decide(
                iso_checked(m, &back, caps.seed),
                || format!("M not isomorphic to Ext^{g}(Ext^{g}(M, Λ), Λ)"),
                &[m, &back],
            );
        }
    }
    t.hypothesis(hyp_any);
    t.evidence("double_dual_iso_checks", iso_checks).evidence("infinite_grade_skipped", infinite);
    t.finish()
}

/// `Ext^t(−, Λ)` exchanges the modules of grade `t` on the two sides when both
/// quasi Auslander-Gorenstein conditions hold and both self-injective dimensions are `t`.
pub fn verify_duality_grade_t(ctx: &Context) -> TheoremVerdict {
    let caps = ctx.caps;
    let p = ctx.profile();
    let mut t = Tally::new("grade-duality", &ctx.alg);
    t.input("dim_cap", caps.dim_cap);
    let tval = match (p.left.id, p.right.id) {
        (Extent::Exact(a), Extent::Exact(b)) if a == b => Some(a),
        _ => None,
    };
    let hyp = p.quasi_auslander_gorenstein() == Some(true) && tval.is_some();
    t.hypothesis(hyp);
    let Some(tv) = tval.filter(|_| hyp) else {
        return t.finish();
    };
    t.input("t", tv);
    let mut members = [0usize; 2];
    for opposite in [false, true] {
        for m in ctx.sweep(opposite) {
            if grade(&m, caps.cap) != Extent::Exact(tv) {
                continue;
            }
            members[opposite as usize] += 1;
            let e = ext_lambda(&m, tv).value;
            let ge = grade(&e, caps.cap);
            t.decide(ge.decided_eq(Extent::Exact(tv)), || format!("Ext^{tv}(M, Λ) has grade {ge}"), &[&m]);
            let back = ext_lambda(&e, tv).value;
            t.decide(
                iso_checked(&m, &back, caps.seed),
                || "double application not isomorphic to M".into(),
                &[&m, &back],
            );
        }
    }
    t.evidence("left_members", members[0]).evidence("right_members", members[1]);
    if members == [0, 0] {
        t.note("no module of this grade within the dimension cap");
    }
    t.finish()
}

/// `0 → M1 → M2 → M3 → 0` given by a submodule.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub m1: Module,
    pub m2: Module,
    pub m3: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

impl ShortExact {
    pub fn from_submodule(m2: &Module, sub: &Subspace) -> Self {
        let (m1, inclusion) = m2.submodule(sub);
        let (m3, projection) = m2.quotient(sub);
        ShortExact { m1, m2: m2.clone(), m3, inclusion, projection }
    }

    pub fn is_exact(&self) -> bool {
        self.inclusion.is_homomorphism()
            && self.projection.is_homomorphism()
            && self.inclusion.is_injective()
            && self.projection.is_surjective()
            && self.projection.kernel() == self.inclusion.image()
    }
}

/// A random module with a random submodule generated by up to two vectors.
pub fn random_short_exact<R: Rng>(alg: &Algebra, rng: &mut R, max_dim: usize) -> ShortExact {
    let m2 = random_module(alg, rng, max_dim);
    let p = alg.field().p();
    let vecs: Vec<Vec<u32>> =
        (0..rng.gen_range(1..=2)).map(|_| (0..m2.dim()).map(|_| rng.gen_range(0..p)).collect()).collect();
    let sub = m2.spin(&vecs);
    ShortExact::from_submodule(&m2, &sub)
}

/// `j`-torsionfree, with every module 0-torsionfree.
fn tf(m: &Module, j: usize) -> bool {
    j == 0 || is_k_torsionfree(m, j).holds
}

/// Grades along short exact sequences: `grade M2 ≥ min(grade M1, grade M3)` always,
/// with equality over an ∞-Gorenstein algebra; and closure of the `k`-torsionfree
/// classes whenever `grade Coker(M2* → M1*) ≥ k`, for `k ≤ kmax`.
pub fn verify_grade_exact_seq(ctx: &Context, seqs: &[ShortExact], kmax: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("grade-min", &ctx.alg);
    t.input("sequences", seqs.len()).input("kmax", kmax);
    let inf_g = ctx.profile().is_infinity_gorenstein();
    t.evidence("infinity_gorenstein", inf_g);
    let (mut min_checks, mut closure_checks) = (0, 0);
    for s in seqs {
        let mods = [&s.m1, &s.m2, &s.m3];
        if !t.check(s.is_exact(), || "sequence is not exact".into(), &mods) {
            continue;
        }
        let (g1, g2, g3) = (grade(&s.m1, caps.cap), grade(&s.m2, caps.cap), grade(&s.m3, caps.cap));
        let lo = g1.min(g3);
        // grade M2 ≥ min: compare lower bounds only where both sides are decided.
        let ge = match (g2, lo) {
            (_, Extent::Infinite) => g2.decided_eq(Extent::Infinite),
            (_, Extent::Exact(n)) => g2.ge(n),
            (_, Extent::AtLeast(n)) => g2.ge(n).filter(|b| *b),
        };
        t.decide(ge, || format!("grades ({g1}, {g2}, {g3}) break the general inequality"), &mods);
        if inf_g {
            min_checks += 1;
            t.decide(g2.decided_eq(lo), || format!("grades ({g1}, {g2}, {g3}): middle is not the minimum"), &mods);
        }
        let d1 = dual_module(&s.m1);
        let d2 = dual_module(&s.m2);
        let (c, _) = dual_map(&s.inclusion, &d1, &d2).cokernel();
        let gc = grade(&c, caps.cap.max(kmax));
        for k in 1..=kmax {
            if gc.ge(k) != Some(true) {
                continue;
            }
            closure_checks += 1;
            let (a1, a2, a3) = (tf(&s.m1, k), tf(&s.m2, k), tf(&s.m3, k));
            if tf(&s.m2, k + 1) && a3 {
                t.check(tf(&s.m1, k + 1), || format!("k = {k}: M1 not (k+1)-torsionfree"), &mods);
            }
            if a1 && a3 {
                t.check(a2, || format!("k = {k}: extension of k-torsionfree modules is not"), &mods);
            }
            if a1 && tf(&s.m2, k - 1) {
                t.check(tf(&s.m3, k - 1), || format!("k = {k}: M3 not (k-1)-torsionfree"), &mods);
            }
        }
    }
    t.evidence("min_formula_checks", min_checks).evidence("closure_checks", closure_checks);
    t.finish()
}

/// Over an Auslander-Gorenstein algebra, `Ext^{grade M}(M, Λ)` is pure.
pub fn verify_ext_purity(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("ext-purity", &ctx.alg);
    t.input("modules", modules.len()).input("lattice_cap", caps.lattice_cap);
    t.hypothesis(ctx.profile().auslander_gorenstein == Some(true));
    if !t.hypothesis_met() {
        return t.finish();
    }
    for m in modules.iter().filter(|m| !m.is_zero()) {
        let Extent::Exact(g) = grade(m, caps.cap) else {
            t.undecided(|| "grade not decided".into(), &[m]);
            continue;
        };
        let e = ext_lambda(m, g).value;
        let r = purity_classify(&e, caps.cap, caps.lattice_cap);
        t.decide(r.pure, || format!("Ext^{g}(M, Λ) is not pure"), &[m, &e]);
    }
    t.finish()
}

/// For `M` of grade `k ≥ 1` over an Auslander-Gorenstein algebra: `M` pure, `M`
/// killed by `Hom(−, I'_0 ⊕ .. ⊕ I'_{k-1})` but not by `Hom(−, I'_0 ⊕ .. ⊕ I'_k)`,
/// and `Ext^i(Ext^i(M, Λ), Λ) = 0` for all `i ≠ k` are equivalent.
pub fn pure_criteria(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("pure-criteria", &ctx.alg);
    t.input("modules", modules.len());
    t.hypothesis(ctx.profile().auslander_gorenstein == Some(true));
    if !t.hypothesis_met() {
        return t.finish();
    }
    let mut terms = [None, None];
    for m in modules.iter().filter(|m| !m.is_zero()) {
        let Extent::Exact(k) = grade(m, caps.cap) else { continue };
        if k == 0 {
            continue;
        }
        let side = opposite_of(ctx, m) as usize;
        let terms = terms[side].get_or_insert_with(|| injective_terms(m.alg(), caps.cap));
        let pure = purity_classify(m, caps.cap, caps.lattice_cap).pure;
        let layered = in_c_class(m, terms, k - 1) && !in_c_class(m, terms, k);
        let ext_cond = (0..=caps.cap).filter(|&i| i != k).all(|i| ext_lambda(&ext_lambda(m, i).value, i).is_zero());
        match pure {
            Some(p) => {
                t.check(
                    p == layered && p == ext_cond,
                    || format!("grade {k}: pure {p}, layer {layered}, Ext {ext_cond}"),
                    &[m],
                );
            }
            None => t.undecided(|| "purity undecided".into(), &[m]),
        }
    }
    t.finish()
}

/// `Hom(M, I'_0 ⊕ .. ⊕ I'_n) = 0` exactly when `s.grade M ≥ n + 1`, for `n ≤ nmax`.
pub fn pseudo_null_crosscheck(ctx: &Context, modules: &[Module], nmax: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("pseudo-null-strong-grade", &ctx.alg);
    t.input("modules", modules.len()).input("nmax", nmax);
    let mut terms = [None, None];
    for m in modules {
        let side = opposite_of(ctx, m) as usize;
        let terms = terms[side].get_or_insert_with(|| injective_terms(m.alg(), caps.cap.max(nmax)));
        let sg = strong_grade(m, caps.cap.max(nmax + 1), caps.lattice_cap);
        for n in 0..=nmax {
            let c = in_c_class(m, terms, n);
            match sg.value.ge(n + 1) {
                Some(true) if !sg.complete => t.undecided(|| "lattice incomplete".into(), &[m]),
                Some(b) => {
                    t.check(b == c, || format!("n = {n}: Hom test {c}, s.grade {}", sg.value), &[m]);
                }
                None => t.undecided(|| "strong grade undecided".into(), &[m]),
            }
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::super::{Caps, Status};
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(a: &Algebra, dim_cap: usize) -> Context {
        Context::new(a, Caps { dim_cap, ..Caps::default() })
    }

    #[test]
    fn auslander_on_small_fixtures() {
        for a in [fixtures::semisimple(), fixtures::dual_numbers(), fixtures::a2()] {
            let v = auslander_crosscheck(&ctx(&a, 3), 3);
            assert_eq!(v.status, Status::Verified, "{v:?}");
            assert!(v.hypothesis_met);
        }
        let b = fixtures::branch_a3();
        let v = auslander_crosscheck(&ctx(&b, 3), 1);
        assert!(!v.hypothesis_met);
        assert_ne!(v.evidence["violations"], "0");
    }

    #[test]
    fn quasi_grade_on_branch() {
        let b = fixtures::branch_a3();
        let v = quasi_grade_crosscheck(&ctx(&b, 3), 3);
        assert_eq!(v.status, Status::Verified, "{v:?}");
    }

    #[test]
    fn triple_ext_simple_of_a2() {
        let a = fixtures::a2();
        let c = ctx(&a, 3);
        let v = verify_triple_ext(&c, &[Module::simple(&a, 0)], 4);
        assert_eq!(v.status, Status::Verified, "{v:?}");
        assert_eq!(v.evidence["double_dual_iso_checks"], "1");
        let dn = fixtures::dual_numbers();
        let v = verify_triple_ext(&ctx(&dn, 3), &[Module::simple(&dn, 0)], 4);
        assert_eq!(v.status, Status::Verified, "{v:?}");
    }

    #[test]
    fn duality_on_branch_and_semisimple() {
        for a in [fixtures::branch_a3(), fixtures::semisimple(), fixtures::a2()] {
            let v = verify_duality_grade_t(&ctx(&a, 3));
            assert!(v.hypothesis_met);
            assert_eq!(v.status, Status::Verified, "{v:?}");
        }
    }

    #[test]
    fn grade_min_on_a2_sequences() {
        let a = fixtures::a2();
        let c = ctx(&a, 3);
        // 0 → S2 → P1 → S1 → 0
        let p1 = Module::projective(&a, 0);
        let soc = p1.socle_space();
        let s = ShortExact::from_submodule(&p1, &soc);
        assert_eq!((grade(&s.m1, 4), grade(&s.m3, 4)), (Extent::Exact(0), Extent::Exact(1)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seqs = vec![s];
        seqs.extend((0..20).map(|_| random_short_exact(&a, &mut rng, 5)));
        let v = verify_grade_exact_seq(&c, &seqs, 2);
        assert_eq!(v.status, Status::Verified, "{v:?}");
    }

    #[test]
    fn purity_and_layers() {
        let a = fixtures::a2();
        let c = ctx(&a, 3);
        let mods = c.left().modules.clone();
        assert_eq!(verify_ext_purity(&c, &mods).status, Status::Verified);
        assert_eq!(pure_criteria(&c, &mods).status, Status::Verified);
        for (_, a) in fixtures::all() {
            let c = ctx(&a, 3);
            let v = pseudo_null_crosscheck(&c, &c.left().modules, 2);
            assert_eq!(v.status, Status::Verified, "{v:?}");
        }
    }
}
