use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extent::Extent;
use crate::homology::{
    d_class_chain, dual_map, eval_report, evaluation_map, is_k_torsionfree, is_pseudo_null, min_proj_resolution,
    pseudo_null_part, reduced_grade, syzygy, transpose, HomologyError,
};
use crate::linalg::{Mat, Subspace};
use crate::modules::{all_submodules, hom_space, Module, ModuleMap};

use super::verdict::{Tally, TheoremVerdict};
use super::Context;

pub(crate) fn is_projective(m: &Module) -> bool {
    min_proj_resolution(m, 0).pd == Extent::Exact(0)
}

/// `A → Λ^h`, `a ↦ (φ_1(a), ..., φ_h(a))` for a basis `φ_j` of `Hom(A, Λ)`.
/// Every map `A → Λ` factors through it; it is injective iff `A` is torsionless.
pub fn free_embedding(a: &Module) -> ModuleMap {
    let alg = a.alg();
    let hom = hom_space(a, &Module::regular(alg)).expect("same algebra");
    let h = hom.dim();
    free_map(a, &(0..h).map(|j| hom.matrix(j)).collect::<Vec<_>>())
}

/// `A → Λ^n` with the given components `A → Λ`.
fn free_map(a: &Module, comps: &[Mat]) -> ModuleMap {
    let alg = a.alg();
    let f = alg.field();
    let reg = Module::regular(alg);
    let target = if comps.is_empty() {
        Module::zero(alg)
    } else {
        Module::direct_sum(&vec![&reg; comps.len()]).expect("same algebra")
    };
    let matrix = comps.iter().fold(Mat::zeros(f, 0, a.dim()), |acc, c| acc.vstack(c));
    ModuleMap::unchecked(a.clone(), target, matrix)
}

/// A random embedding `A ↪ Λ^h` built from random combinations of a basis of
/// `Hom(A, Λ)`; falls back to [`free_embedding`].
fn random_free_embedding(a: &Module, seed: u64) -> ModuleMap {
    let alg = a.alg();
    let f = alg.field();
    let hom = hom_space(a, &Module::regular(alg)).expect("same algebra");
    let h = hom.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let comps: Vec<Mat> =
            (0..h).map(|_| hom.combine(&(0..h).map(|_| rng.gen_range(0..f.p())).collect::<Vec<_>>())).collect();
        let m = free_map(a, &comps);
        if m.is_injective() {
            return m;
        }
    }
    free_embedding(a)
}

/// The two evaluation sequences: `ker σ_M ≅ Ext^1(Tr M, Λ)`, `coker σ_M ≅ Ext^2(Tr M, Λ)`,
/// and the same for `Tr M` against `Ext^{1,2}(M, Λ)`, compared by dimension.
pub fn evaluation_sequences(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let mut t = Tally::new("evaluation-sequences", &ctx.alg);
    t.input("modules", modules.len());
    for m in modules {
        let e = match eval_report(m) {
            Ok(e) => e,
            Err(err) => {
                t.check(false, || err.to_string(), &[m]);
                continue;
            }
        };
        t.check(e.ker_dim == e.ext1_tr_dim && e.coker_dim == e.ext2_tr_dim, || "first sequence".into(), &[m]);
        let tr = transpose(m);
        match eval_report(&tr) {
            Ok(et) => {
                let r = min_proj_resolution(m, 3);
                let (x1, x2) = (r.ext(1).expect("depth").dim(), r.ext(2).expect("depth").dim());
                t.check(
                    et.ker_dim == x1 && et.coker_dim == x2,
                    || format!("ker/coker of σ_Tr M = {}/{}, Ext^1/Ext^2(M, Λ) = {x1}/{x2}", et.ker_dim, et.coker_dim),
                    &[m],
                );
            }
            Err(err) => {
                t.check(false, || format!("transpose: {err}"), &[m]);
            }
        }
        t.check(is_k_torsionfree(m, 1).holds == e.torsionless, || "torsionless vs 1-torsionfree".into(), &[m]);
        t.check(is_k_torsionfree(m, 2).holds == e.reflexive, || "reflexive vs 2-torsionfree".into(), &[m]);
    }
    t.finish()
}

/// `M` is projective iff `Tr M` is.
pub fn transpose_projective(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let mut t = Tally::new("transpose-projective", &ctx.alg);
    t.input("modules", modules.len());
    let mut projective = 0;
    for m in modules {
        let p = is_projective(m);
        projective += p as usize;
        t.check(p == is_projective(&transpose(m)), || format!("M projective = {p}, Tr M disagrees"), &[m]);
    }
    t.evidence("projective", projective);
    t.finish()
}

/// `r.grade M ≥ k + 1` and `pd M ≤ k` force `M` projective.
pub fn reduced_grade_projective(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("reduced-grade-projective", &ctx.alg);
    t.input("modules", modules.len()).input("cap", caps.cap);
    for m in modules {
        let Extent::Exact(n) = min_proj_resolution(m, caps.cap).pd else { continue };
        if n == 0 {
            continue;
        }
        let rg = reduced_grade(m, n);
        t.check(rg.le(n) == Some(true), || format!("pd {n} but r.grade {rg}"), &[m]);
    }
    t.finish()
}

/// For a quasi `k`-Gorenstein side: the other side's self-injective dimension is
/// at most `k` iff every module with reduced grade at least `k + 1` is reflexive,
/// iff every such module is torsionless. Run for `1 ≤ k ≤ kmax` on both sides.
pub fn reduced_grade_reflexive(ctx: &Context, kmax: usize) -> TheoremVerdict {
    let p = ctx.profile();
    let mut t = Tally::new("reduced-grade-reflexive", &ctx.alg);
    t.input("kmax", kmax).input("dim_cap", ctx.caps.dim_cap);
    let mut any = false;
    for opposite in [false, true] {
        // Left modules need the right quasi condition and `id` of the right regular module.
        let (quasi, id) = if opposite { (p.left.quasi_level, p.left.id) } else { (p.right.quasi_level, p.right.id) };
        let sweep = ctx.sweep(opposite);
        let reports: Vec<_> = sweep.iter().map(|m| eval_report(m).map_err(|e| (m, e))).collect();
        for k in 1..=kmax {
            if quasi.ge(k) != Some(true) {
                continue;
            }
            any = true;
            let mut class = 0;
            let mut bad: Option<&Module> = None;
            for (m, r) in sweep.iter().zip(&reports) {
                if reduced_grade(m, k).ge(k + 1) != Some(true) {
                    continue;
                }
                class += 1;
                match r {
                    Err((_, e)) => {
                        t.check(false, || e.to_string(), &[m]);
                    }
                    Ok(r) => {
                        if id.le(k) == Some(true) {
                            t.check(r.reflexive, || format!("k = {k}: id <= k but not reflexive"), &[m]);
                        }
                        if !r.torsionless && bad.is_none() {
                            bad = Some(m);
                        }
                    }
                }
            }
            let side = if opposite { "right" } else { "left" };
            t.evidence(&format!("{side}_k{k}_class_size"), class);
            match id.le(k) {
                Some(true) => {}
                Some(false) => match bad {
                    Some(m) => {
                        t.check(true, String::new, &[m]);
                        t.evidence(&format!("{side}_k{k}_non_torsionless"), "found");
                    }
                    None => t.undecided(
                        || format!("k = {k}: id > k but no non-torsionless module of reduced grade > k within the dimension cap"),
                        &[],
                    ),
                },
                None => t.undecided(|| format!("id {id} undecided against k = {k}"), &[]),
            }
        }
    }
    t.hypothesis(any);
    t.finish()
}

/// Chains `T_1, ..., T_j` grown from every torsionless module of the sweep: over a
/// right quasi `i`-Gorenstein algebra stage `i` has reduced grade at least `i`,
/// and when `id` of the right regular module is at most `i` stage `i` is reflexive.
pub fn verify_dclass(ctx: &Context, kmax: usize) -> TheoremVerdict {
    let p = ctx.profile();
    let mut t = Tally::new("dclass-reduced-grade", &ctx.alg);
    t.input("kmax", kmax);
    let mut stages_seen = vec![0usize; kmax + 1];
    let mut hyp = false;
    for m in ctx.sweep(false) {
        let chain = match d_class_chain(&m, kmax) {
            Ok(c) => c,
            Err(HomologyError::NotTorsionless { stage }) if stage > 1 => {
                d_class_chain(&m, stage - 1).expect("shorter chain is torsionless")
            }
            Err(HomologyError::NotTorsionless { .. }) => continue,
            Err(e) => {
                t.check(false, || e.to_string(), &[&m]);
                continue;
            }
        };
        for (idx, s) in chain.stages.iter().enumerate() {
            let i = idx + 1;
            stages_seen[i] += 1;
            if p.right_quasi(i) == Some(true) {
                hyp = true;
                let rg = reduced_grade(s, i);
                t.decide(rg.ge(i), || format!("stage {i} has reduced grade {rg}"), &[&m, s]);
            }
            if p.right.id.le(i) == Some(true) {
                hyp = true;
                let refl = eval_report(s).map(|e| e.reflexive).unwrap_or(false);
                t.check(refl, || format!("stage {i} is not reflexive"), &[&m, s]);
            }
        }
    }
    t.hypothesis(hyp);
    t.evidence("stages", format!("{:?}", &stages_seen[1..]));
    t.finish()
}

/// `Ω^t M` is `t`-torsionfree over a right quasi `k`-Gorenstein algebra (`t ≤ k`);
/// and for any `t`-torsionfree `A` the cokernel of `A → Λ^h` is `(t-1)`-torsionfree.
pub fn syzygy_torsionfree(ctx: &Context, kmax: usize) -> TheoremVerdict {
    let p = ctx.profile();
    let mut t = Tally::new("syzygy-torsionfree", &ctx.alg);
    t.input("kmax", kmax);
    for m in ctx.sweep(false) {
        for k in 1..=kmax {
            if p.right_quasi(k) == Some(true) {
                let s = syzygy(&m, k);
                t.check(is_k_torsionfree(&s, k).holds, || format!("Ω^{k} M is not {k}-torsionfree"), &[&m]);
            }
            if k >= 2 && is_k_torsionfree(&m, k).holds {
                let (c, _) = free_embedding(&m).cokernel();
                t.check(
                    is_k_torsionfree(&c, k - 1).holds,
                    || format!("cokernel of the approximation is not {}-torsionfree", k - 1),
                    &[&m],
                );
            }
        }
    }
    t.finish()
}

/// The push-out row `0 → F → T → C → 0` built from `0 → A → G → C → 0` and
/// `0 → A → F → K → 0`.
#[derive(Clone, Debug)]
pub struct CokernelFamily {
    pub t: usize,
    pub into_g: ModuleMap,
    pub c: Module,
    pub into_f: ModuleMap,
    pub k: Module,
    pub pushout: Module,
    pub f_to_t: ModuleMap,
    pub t_to_c: ModuleMap,
}

fn pushout_row(into_f: &ModuleMap, into_g: &ModuleMap) -> (Module, ModuleMap, ModuleMap, Module) {
    let a = &into_f.source;
    let alg = a.alg();
    let fld = alg.field();
    let (fm, gm) = (&into_f.target, &into_g.target);
    let (c, pc) = into_g.cokernel();
    let s = Module::direct_sum(&[fm, gm]).expect("same algebra");
    let neg = Mat::zeros(fld, gm.dim(), a.dim()).sub(&into_g.matrix);
    let anti = into_f.matrix.vstack(&neg);
    let u = Subspace::column_space(&anti);
    let (tm, q) = s.quotient(&u);
    let incl_f = Mat::identity(fld, fm.dim()).vstack(&Mat::zeros(fld, gm.dim(), fm.dim()));
    let f_to_t = ModuleMap::unchecked(fm.clone(), tm.clone(), q.matrix.mul(&incl_f));
    // (f, g) ↦ π_C(g), evaluated on the free columns that lift the quotient basis.
    let on_s = Mat::zeros(fld, c.dim(), fm.dim()).hstack(&pc.matrix);
    let free = u.free_columns();
    let cols: Vec<Vec<u32>> = free.iter().map(|&j| on_s.col(j)).collect();
    let tc = if cols.is_empty() { Mat::zeros(fld, c.dim(), 0) } else { Mat::from_cols(fld, c.dim(), &cols) };
    let t_to_c = ModuleMap::unchecked(tm.clone(), c.clone(), tc);
    (tm, f_to_t, t_to_c, c)
}

/// For `t`-torsionfree `A` (`1 ≤ t ≤ k`) over a right quasi `k`-Gorenstein algebra,
/// and `C ∈ 𝓔_A` from an embedding `A ↪ G` (random unless given), build
/// `0 → F → T → C → 0` with `F` free and check `T` is `(t-1)`-torsionfree.
pub fn verify_cokernel_family(
    ctx: &Context,
    a: &Module,
    into_g: Option<&ModuleMap>,
    k: usize,
) -> (TheoremVerdict, Option<CokernelFamily>) {
    let mut tl = Tally::new("cokernel-family", &ctx.alg);
    tl.input("k", k).input("module_dim", a.dim());
    let tval = (1..=k).rev().find(|&t| is_k_torsionfree(a, t).holds);
    tl.hypothesis(ctx.profile().right_quasi(k) == Some(true) && tval.is_some() && !a.is_zero());
    if !tl.hypothesis_met() {
        return (tl.finish(), None);
    }
    let t = tval.expect("checked");
    tl.input("t", t);
    let into_f = free_embedding(a);
    let into_g = into_g.cloned().unwrap_or_else(|| random_free_embedding(a, ctx.caps.seed));
    tl.check(
        into_g.is_homomorphism() && into_g.is_injective(),
        || "embedding into G is not a monomorphism".into(),
        &[a],
    );
    let (k_mod, _) = into_f.cokernel();
    let (tm, f_to_t, t_to_c, c) = pushout_row(&into_f, &into_g);
    if c.is_zero() {
        tl.note("A is free, so C = 0 lies outside the family; only the construction is checked");
    }
    let exact = f_to_t.is_homomorphism()
        && t_to_c.is_homomorphism()
        && f_to_t.is_injective()
        && t_to_c.is_surjective()
        && t_to_c.kernel() == f_to_t.image();
    tl.check(exact, || "push-out row is not exact".into(), &[a]);
    if t >= 2 {
        tl.check(is_k_torsionfree(&k_mod, t - 1).holds, || format!("K is not {}-torsionfree", t - 1), &[a]);
        tl.check(is_k_torsionfree(&tm, t - 1).holds, || format!("T is not {}-torsionfree", t - 1), &[a, &tm]);
    } else {
        tl.note("t = 1: no torsionfree claim on T");
    }
    let fam = CokernelFamily { t, into_g, c, into_f, k: k_mod, pushout: tm, f_to_t, t_to_c };
    (tl.finish(), Some(fam))
}

/// `ι**: A** → G**` for `ι: A → G`, in the bases used by `evaluation_map`.
fn double_dual_of(iota: &ModuleMap) -> ModuleMap {
    let (_, a1, a2) = evaluation_map(&iota.source);
    let (_, g1, g2) = evaluation_map(&iota.target);
    let star = dual_map(iota, &a1, &g1);
    dual_map(&star, &g2, &a2)
}

/// Torsionless `A` with `0 → A → G → C → 0`: `coker σ_A` pseudo-null, `A**`
/// embedded in `G` by `ι**`, and `A` reflexive iff `C` has no nonzero pseudo-null
/// submodule. Over a 2-Gorenstein algebra.
fn reflexivity_checks(t: &mut Tally, a: &Module, iota: &ModuleMap, c: &Module) -> bool {
    let (sigma, _, _) = evaluation_map(a);
    let refl = sigma.is_iso();
    let (cs, _) = sigma.cokernel();
    t.check(is_pseudo_null(&cs), || "coker σ_A is not pseudo-null".into(), &[a]);
    t.check(double_dual_of(iota).is_injective(), || "A** does not embed in G".into(), &[a]);
    let pn = pseudo_null_part(c);
    t.check(refl == pn.is_zero(), || format!("reflexive {refl}, pseudo-null part of dim {}", pn.dim()), &[a, c]);
    refl
}

/// Reflexivity criterion over a 2-Gorenstein algebra, run on torsionless modules
/// with `C` the cokernel of both the canonical and a random embedding into a free module.
pub fn reflexive_criterion(ctx: &Context, modules: &[Module]) -> TheoremVerdict {
    let mut t = Tally::new("reflexive-criterion", &ctx.alg);
    t.input("modules", modules.len());
    t.hypothesis(ctx.profile().is_k_gorenstein(2) == Some(true));
    if !t.hypothesis_met() {
        return t.finish();
    }
    let (mut torsionless, mut reflexive) = (0, 0);
    for a in modules {
        let Ok(e) = eval_report(a) else {
            t.check(false, || "evaluation report inconsistent".into(), &[a]);
            continue;
        };
        if !e.torsionless || a.is_zero() {
            continue;
        }
        torsionless += 1;
        for iota in [free_embedding(a), random_free_embedding(a, ctx.caps.seed)] {
            let (c, _) = iota.cokernel();
            if c.is_zero() {
                continue;
            }
            if reflexivity_checks(&mut t, a, &iota, &c) {
                reflexive += 1;
            }
        }
    }
    t.evidence("torsionless", torsionless).evidence("reflexive_checks", reflexive);
    t.finish()
}

/// Every nonzero proper left ideal `I`: `I` reflexive iff `Λ/I` has no nonzero
/// pseudo-null submodule; `coker σ_I` pseudo-null and `I** ↪ Λ`. Over a 2-Gorenstein algebra.
pub fn ideal_reflexivity_report(ctx: &Context) -> TheoremVerdict {
    let mut t = Tally::new("ideal-reflexivity", &ctx.alg);
    t.input("lattice_cap", ctx.caps.lattice_cap);
    t.hypothesis(ctx.profile().is_k_gorenstein(2) == Some(true));
    if !t.hypothesis_met() {
        return t.finish();
    }
    let reg = Module::regular(&ctx.alg);
    let lattice = all_submodules(&reg, ctx.caps.lattice_cap);
    if !lattice.complete {
        t.undecided(|| "ideal lattice over the cap".into(), &[]);
    }
    let (mut ideals, mut reflexive) = (0, 0);
    for s in lattice.subspaces.iter().filter(|s| !s.is_zero() && !s.is_full()) {
        ideals += 1;
        let (i, incl) = reg.submodule(s);
        let (q, _) = reg.quotient(s);
        if reflexivity_checks(&mut t, &i, &incl, &q) {
            reflexive += 1;
        }
    }
    t.evidence("ideals", ideals).evidence("reflexive", reflexive);
    t.finish()
}

/// Global dimension as the largest `pd` of a simple module.
pub(crate) fn global_dimension(alg: &crate::algebra::Algebra, cap: usize) -> Extent {
    (0..alg.num_vertices())
        .fold(Extent::Exact(0), |acc, v| acc.max(min_proj_resolution(&Module::simple(alg, v), cap).pd))
}

/// `gl.dim ≤ k` makes every `k`-torsionfree module projective. Also: nonprojective
/// `k`-torsionfree left modules and nonprojective right modules of reduced grade
/// at least `k + 1` correspond under `Tr`, and for hereditary algebras every module of
/// reduced grade at least 2 is projective.
pub fn reflexive_implies_projective_scan(ctx: &Context, k: usize) -> TheoremVerdict {
    let caps = ctx.caps;
    let mut t = Tally::new("torsionfree-projective", &ctx.alg);
    t.input("k", k).input("dim_cap", caps.dim_cap);
    let gl = global_dimension(&ctx.alg, caps.cap);
    t.evidence("global_dimension", gl);
    let small = gl.le(k) == Some(true);
    let (mut left_bad, mut right_bad) = (0, 0);
    for m in ctx.sweep(false) {
        if !is_k_torsionfree(&m, k).holds || is_projective(&m) {
            continue;
        }
        left_bad += 1;
        t.check(!small, || format!("gl.dim {gl} <= {k} but a {k}-torsionfree module is not projective"), &[&m]);
        let tr = transpose(&m);
        t.check(
            reduced_grade(&tr, k).ge(k + 1) == Some(true) && !is_projective(&tr),
            || {
                "transpose of a nonprojective k-torsionfree module is not a nonprojective module of large reduced grade"
                    .into()
            },
            &[&m],
        );
    }
    for n in ctx.sweep(true) {
        if reduced_grade(&n, k).ge(k + 1) != Some(true) || is_projective(&n) {
            continue;
        }
        right_bad += 1;
        t.check(
            !small,
            || format!("gl.dim {gl} <= {k} but a right module of reduced grade > {k} is not projective"),
            &[&n],
        );
        let tr = transpose(&n);
        t.check(
            is_k_torsionfree(&tr, k).holds && !is_projective(&tr),
            || "transpose does not transfer the counterexample".into(),
            &[&n],
        );
    }
    t.evidence("nonprojective_torsionfree_left", left_bad).evidence("nonprojective_large_rgrade_right", right_bad);
    if gl.le(1) == Some(true) {
        for opposite in [false, true] {
            for m in ctx.sweep(opposite) {
                if reduced_grade(&m, 1).ge(2) == Some(true) {
                    t.check(
                        is_projective(&m),
                        || "hereditary but a module of reduced grade >= 2 is not projective".into(),
                        &[&m],
                    );
                }
            }
        }
    }
    t.finish()
}
