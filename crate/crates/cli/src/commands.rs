use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use homdual::algebra::Algebra;
use homdual::extent::Extent;
use homdual::gorenstein::{
    explore_purity_question, gorenstein_profile, ideal_reflexivity_report, nakayama_report, run_verifier, verifier_ids,
    verify_finitistic, Context, ModuleRecord, TheoremVerdict,
};
use homdual::homology::{
    d_class_chain, dims, dominant_dimension, eval_report, ext_lambda, grade, grade_report, min_inj_resolution,
    min_proj_resolution, pseudo_null_part, purity_classify, transpose, HomologyError,
};
use homdual::modules::{all_submodules, Module};
use serde_json::json;

use crate::report::{side, Findings, Outcome};

fn names(a: &Algebra, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| a.vertex_name(v).to_string()).collect()
}

fn names_all(a: &Algebra, terms: &[Vec<usize>]) -> Vec<Vec<String>> {
    terms.iter().map(|t| names(a, t)).collect()
}

fn module_json(m: &Module) -> serde_json::Value {
    json!({
        "side": side(m),
        "dim": m.dim(),
        "dim_vector": m.dim_vector(),
        "record": ModuleRecord::of(m),
    })
}

pub fn profile(ctx: &Context, out: &mut Findings) {
    let p = gorenstein_profile(&ctx.alg, ctx.caps.cap);
    let a = &ctx.alg;
    let fd0 = |fd: &[Extent]| fd.first().copied();
    let summary = json!({
        "id_left": p.left.id.to_string(),
        "id_right": p.right.id.to_string(),
        "fd_first_term_left": fd0(&p.left.fd).map(|e| e.to_string()),
        "fd_first_term_right": fd0(&p.right.fd).map(|e| e.to_string()),
        "left_terms": names_all(a, &p.left.terms),
        "right_terms": names_all(a, &p.right.terms),
        "gorenstein_level": p.gorenstein_level.to_string(),
        "one_gorenstein": p.is_k_gorenstein(1),
        "dominant_dimension": p.dominant_dimension.to_string(),
        "auslander_gorenstein": p.auslander_gorenstein,
        "left_quasi_auslander_gorenstein": p.left_quasi_auslander_gorenstein,
        "right_quasi_auslander_gorenstein": p.right_quasi_auslander_gorenstein,
        "symmetry_violation": p.symmetry_violation,
    });
    out.push(summary);
    let decided = p.left.id.is_exact()
        && p.right.id.is_exact()
        && p.auslander_gorenstein.is_some()
        && p.left_quasi_auslander_gorenstein.is_some()
        && p.right_quasi_auslander_gorenstein.is_some();
    out.outcome(if p.symmetry_violation { Outcome::Refuted } else { Outcome::decided(decided) });
    out.push(p);
}

pub fn dims_cmd(ctx: &Context, m: &Module, out: &mut Findings) {
    let d = dims(m, ctx.caps.cap);
    out.outcome(Outcome::decided(d.pd.is_exact() || d.pd == Extent::Infinite));
    out.outcome(Outcome::decided(d.id.is_exact() || d.id == Extent::Infinite));
    out.push(json!({
        "pd": d.pd.to_string(),
        "id": d.id.to_string(),
        "fd": d.fd.to_string(),
        "periodic": d.periodic,
    }));
}

fn settled(e: Extent) -> bool {
    !matches!(e, Extent::AtLeast(_))
}

pub fn grade_cmd(ctx: &Context, m: &Module, out: &mut Findings) {
    let r = grade_report(m, ctx.caps.cap, ctx.caps.lattice_cap);
    out.outcome(Outcome::decided(
        settled(r.grade) && settled(r.reduced_grade) && settled(r.strong_grade) && r.strong_grade_complete,
    ));
    out.push(json!({
        "grade": r.grade.to_string(),
        "reduced_grade": r.reduced_grade.to_string(),
        "strong_grade": r.strong_grade.to_string(),
        "strong_grade_complete": r.strong_grade_complete,
        "bound": r.bound,
    }));
}

pub fn transpose_cmd(m: &Module, out: &mut Findings) {
    let t = transpose(m);
    out.push(json!({ "transpose": module_json(&t) }));
}

pub fn eval_cmd(m: &Module, out: &mut Findings) -> Result<(), HomologyError> {
    let r = eval_report(m)?;
    out.push(r);
    Ok(())
}

pub fn inj_res(ctx: &Context, m: &Module, out: &mut Findings) {
    let r = min_inj_resolution(m, ctx.caps.cap);
    let a = m.alg();
    out.outcome(Outcome::decided(settled(r.id)));
    out.push(json!({
        "terms": names_all(a, &r.terms),
        "term_dims": r.term_modules.iter().map(Module::dim).collect::<Vec<_>>(),
        "id": r.id.to_string(),
        "period": r.period,
    }));
}

pub fn proj_res(ctx: &Context, m: &Module, out: &mut Findings) {
    let r = min_proj_resolution(m, ctx.caps.cap);
    let a = m.alg();
    let terms: Vec<Vec<String>> = r.complex.terms.iter().map(|t| names(a, t.vertices())).collect();
    out.outcome(Outcome::decided(settled(r.pd)));
    out.push(json!({
        "terms": terms,
        "term_dims": r.complex.terms.iter().map(|t| t.dim()).collect::<Vec<_>>(),
        "pd": r.pd.to_string(),
        "period": r.period,
    }));
}

pub fn dominant(ctx: &Context, out: &mut Findings) {
    let d = dominant_dimension(&ctx.alg, ctx.caps.cap);
    out.outcome(Outcome::decided(settled(d)));
    out.push(json!({ "dominant_dimension": d.to_string() }));
}

/// Classify `M` and, when its grade is finite, `Ext^{grade M}(M, Λ)`.
pub fn purity(ctx: &Context, m: &Module, out: &mut Findings) {
    let caps = ctx.caps;
    let own = purity_classify(m, caps.cap, caps.lattice_cap);
    let mut entry = json!({ "module": own });
    if let Some(g) = grade(m, caps.cap).exact() {
        let e = ext_lambda(m, g).value;
        let r = purity_classify(&e, caps.cap, caps.lattice_cap);
        out.outcome(Outcome::decided(r.pure.is_some()));
        entry["top_ext"] = json!({ "degree": g, "ext": module_json(&e), "classification": r });
    }
    out.outcome(Outcome::decided(own.pure.is_some() || m.is_zero()));
    out.push(entry);
}

pub fn dclass(m: &Module, k: usize, out: &mut Findings) -> Result<(), HomologyError> {
    match d_class_chain(m, k.max(1)) {
        Ok(c) => {
            let steps: Vec<_> = c
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "cover_vertices": names(s.projection.source.alg(), &s.cover_vertices),
                        "middle_dim": s.projection.source.dim(),
                    })
                })
                .collect();
            out.push(json!({
                "k": c.k,
                "canonical_chain": true,
                "stage_dims": c.stages.iter().map(Module::dim).collect::<Vec<_>>(),
                "steps": steps,
            }));
            Ok(())
        }
        Err(HomologyError::NotTorsionless { stage }) => {
            out.push(json!({
                "k": k,
                "canonical_chain": false,
                "note": format!("not via canonical chain: stage {stage} is not torsionless"),
            }));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Run verifiers on a worker pool; results come back in the order of `ids`.
pub fn run_verifiers(ctx: &Context, ids: &[&str], jobs: usize) -> Vec<TheoremVerdict> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<TheoremVerdict>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, ids.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(id) = ids.get(i) else { break };
                let v = run_verifier(ctx, id).expect("known verifier id");
                *slots[i].lock().expect("slot lock") = Some(v);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot filled")).collect()
}

pub fn verify(ctx: &Context, target: &str, jobs: usize, out: &mut Findings) -> Result<(), String> {
    let ids: Vec<&str> = if target == "all" {
        verifier_ids().to_vec()
    } else if verifier_ids().contains(&target) {
        vec![target]
    } else {
        return Err(format!("unknown verifier `{target}`; known: all, {}", verifier_ids().join(", ")));
    };
    for v in run_verifiers(ctx, &ids, jobs) {
        out.outcome(Outcome::of_status(v.status));
        out.push(v);
    }
    Ok(())
}

/// Exploratory: impure modules found here answer a question, they refute nothing.
pub fn explore(ctx: &Context, out: &mut Findings) {
    let e = explore_purity_question(ctx);
    out.outcome(Outcome::decided(e.quasi_auslander_gorenstein.is_some()));
    out.push(e);
}

pub fn findim(ctx: &Context, out: &mut Findings) {
    let (v, bounds) = verify_finitistic(ctx);
    out.outcome(Outcome::of_status(v.status));
    for b in bounds {
        out.outcome(Outcome::decided(b.exact));
        out.push(b);
    }
    out.push(v);
}

pub fn nakayama(ctx: &Context, out: &mut Findings) {
    let v = nakayama_report(ctx);
    out.outcome(Outcome::of_status(v.status));
    out.push(v);
}

/// Every proper nonzero left ideal with its reflexivity data, then the gated verdict.
pub fn ideals(ctx: &Context, out: &mut Findings) -> Result<(), HomologyError> {
    let reg = Module::regular(&ctx.alg);
    let lattice = all_submodules(&reg, ctx.caps.lattice_cap);
    out.outcome(Outcome::decided(lattice.complete));
    let mut rows = Vec::new();
    for s in lattice.subspaces.iter().filter(|s| !s.is_zero() && !s.is_full()) {
        let (i, _) = reg.submodule(s);
        let (q, _) = reg.quotient(s);
        let e = eval_report(&i)?;
        rows.push(json!({
            "dim": i.dim(),
            "dim_vector": i.dim_vector(),
            "torsionless": e.torsionless,
            "reflexive": e.reflexive,
            "quotient_pseudo_null_dim": pseudo_null_part(&q).dim(),
        }));
    }
    out.push(json!({ "lattice_complete": lattice.complete, "ideals": rows }));
    let v = ideal_reflexivity_report(ctx);
    out.outcome(Outcome::of_status(v.status));
    out.push(v);
    Ok(())
}
