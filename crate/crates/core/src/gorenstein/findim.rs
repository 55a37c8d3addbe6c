use serde::{Deserialize, Serialize};

use crate::extent::Extent;
use crate::homology::{eval_report, grade, min_proj_resolution};
use crate::linalg::{Mat, Subspace};
use crate::modules::{all_submodules, hom_space, Module};

use super::reflexive::is_projective;
use super::verdict::{Tally, TheoremVerdict};
use super::Context;

/// Bracket for the small finitistic dimension of one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinDimBounds {
    pub algebra: String,
    pub opposite: bool,
    /// Largest finite `pd` among the swept modules.
    pub lower: usize,
    /// Self-injective dimension of the regular module on this side.
    pub upper: Extent,
    pub exact: bool,
    pub swept: usize,
    pub finite_pd: usize,
}

/// Lower bound from the sweep, upper bound from `id` of the regular module.
pub fn findim_bounds(ctx: &Context, opposite: bool) -> FinDimBounds {
    let p = ctx.profile();
    let upper = if opposite { p.right.id } else { p.left.id };
    let sweep = ctx.sweep(opposite);
    let pds: Vec<usize> = sweep.iter().filter_map(|m| min_proj_resolution(m, ctx.caps.cap).pd.exact()).collect();
    let lower = pds.iter().copied().max().unwrap_or(0);
    FinDimBounds {
        algebra: ctx.alg.digest().to_string(),
        opposite,
        lower,
        upper,
        exact: upper == Extent::Exact(lower),
        swept: sweep.len(),
        finite_pd: pds.len(),
    }
}

/// `fin.dim ≤ id` on both sides; when the algebra is `n`-Gorenstein with
/// `id = n`, also `fin.dim = n`; over an ∞-Gorenstein algebra all four numbers agree.
pub fn verify_finitistic(ctx: &Context) -> (TheoremVerdict, [FinDimBounds; 2]) {
    let p = ctx.profile();
    let mut t = Tally::new("finitistic", &ctx.alg);
    t.input("dim_cap", ctx.caps.dim_cap).input("cap", ctx.caps.cap);
    let b = [findim_bounds(ctx, false), findim_bounds(ctx, true)];
    for (side, fb) in ["left", "right"].iter().zip(&b) {
        t.evidence(&format!("{side}_lower"), fb.lower).evidence(&format!("{side}_upper"), fb.upper);
        if let Some(u) = fb.upper.exact() {
            t.check(fb.lower <= u, || format!("{side}: finite pd {} above id {u}", fb.lower), &[]);
            if p.gorenstein_level.ge(u) == Some(true) {
                t.decide(
                    if fb.lower == u { Some(true) } else { None },
                    || format!("{side}: no module of pd {u} within the dimension cap (largest {})", fb.lower),
                    &[],
                );
            }
        }
    }
    if p.is_infinity_gorenstein() {
        t.check(p.left.id == p.right.id, || "∞-Gorenstein but the two self-injective dimensions differ".into(), &[]);
    }
    (t.finish(), b)
}

/// `{x : Ix = 0}` for a left ideal `I`.
fn right_annihilator_dim(ctx: &Context, ideal: &Subspace) -> usize {
    let n = ctx.alg.dim();
    let f = ctx.alg.field();
    let stacked = ideal.vectors().iter().fold(Mat::zeros(f, 0, n), |acc, a| acc.vstack(&ctx.alg.left_mult_by(a)));
    n - stacked.rank()
}

/// Self-injectivity against reflexivity/torsionlessness of all right modules and
/// finitistic dimension zero; under infinite dominant dimension, the equivalence
/// of self-injectivity with annihilator and finite-grade conditions.
pub fn nakayama_report(ctx: &Context) -> TheoremVerdict {
    let caps = ctx.caps;
    let p = ctx.profile();
    let mut t = Tally::new("nakayama", &ctx.alg);
    t.input("dim_cap", caps.dim_cap).input("cap", caps.cap);
    let self_inj = p.left.id == Extent::Exact(0);
    let lower = findim_bounds(ctx, false).lower;
    let right = ctx.sweep(true);
    let mut non_torsionless: Option<Module> = None;
    let mut dual_projective_witness: Option<Module> = None;
    for n in &right {
        let Ok(e) = eval_report(n) else {
            t.check(false, || "evaluation report inconsistent".into(), &[n]);
            continue;
        };
        if self_inj {
            t.check(e.reflexive, || "self-injective but a right module is not reflexive".into(), &[n]);
        }
        if !e.torsionless && non_torsionless.is_none() {
            non_torsionless = Some(n.clone());
        }
        if dual_projective_witness.is_none() && !is_projective(n) {
            let dual = crate::homology::dual_module(n).module;
            if is_projective(&dual) {
                dual_projective_witness = Some(n.clone());
            }
        }
    }
    t.evidence("self_injective", self_inj).evidence("findim_lower", lower);
    if self_inj {
        t.check(lower == 0, || format!("self-injective but a module has pd {lower}"), &[]);
        t.check(dual_projective_witness.is_none(), || "nonprojective right module with projective dual".into(), &[]);
    } else {
        t.check(non_torsionless.is_some(), || "not self-injective, yet every right module is torsionless".into(), &[]);
        if p.is_k_gorenstein(1) == Some(true) {
            t.decide(
                if lower >= 1 { Some(true) } else { None },
                || "no module of positive finite pd found".into(),
                &[],
            );
            t.decide(
                dual_projective_witness.as_ref().map(|_| true),
                || "no nonprojective right module with projective dual found".into(),
                &[],
            );
        }
    }

    // Annihilators of left ideals against duals of the quotients.
    let reg = Module::regular(&ctx.alg);
    let lattice = all_submodules(&reg, caps.lattice_cap);
    let n = ctx.alg.dim();
    let mut all_proper = true;
    let mut maximal = true;
    for s in lattice.subspaces.iter().filter(|s| !s.is_full()) {
        let ann = right_annihilator_dim(ctx, s);
        let (q, _) = reg.quotient(s);
        let qd = hom_space(&q, &reg).expect("same algebra").dim();
        t.check(ann == qd, || format!("right annihilator of dim {ann}, dual of the quotient of dim {qd}"), &[&q]);
        all_proper &= ann > 0;
        if s.dim() + 1 == n {
            maximal &= ann > 0;
        }
    }
    let finite_grade = |m: &Module| grade(m, caps.cap).is_finite();
    let all_graded = ctx.sweep(false).iter().all(finite_grade);
    let simples_graded = (0..ctx.alg.num_vertices()).all(|v| finite_grade(&Module::simple(&ctx.alg, v)));
    let conds = [self_inj, lower == 0, all_proper, maximal, all_graded, simples_graded];
    t.evidence("conditions", format!("{conds:?}"));
    let infinite_dom = p.dominant_dimension == Extent::Infinite;
    t.evidence("dominant_dimension", p.dominant_dimension);
    if infinite_dom {
        t.check(conds.iter().all(|&c| c == conds[0]), || format!("conditions disagree: {conds:?}"), &[]);
    } else {
        t.note("dominant dimension is finite; the six-way equivalence is not required");
    }
    t.finish()
}
