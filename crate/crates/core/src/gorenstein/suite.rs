use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::extent::Extent;
use crate::homology::{ext_lambda, grade, is_k_torsionfree, purity_classify};
use crate::modules::{all_submodules, Module};

use super::verdict::{merge, ModuleRecord, Tally, TheoremVerdict};
use super::*;

const K: usize = 3;
const RANDOM_SEQUENCES: usize = 100;

const IDS: [&str; 21] = [
    "gorenstein-symmetry",
    "auslander-strong-grade",
    "quasi-gorenstein-grade",
    "evaluation-sequences",
    "transpose-projective",
    "reduced-grade-projective",
    "reduced-grade-reflexive",
    "dclass-reduced-grade",
    "syzygy-torsionfree",
    "finitistic",
    "nakayama",
    "triple-ext",
    "grade-duality",
    "grade-min",
    "ext-purity",
    "pure-criteria",
    "pseudo-null-strong-grade",
    "cokernel-family",
    "reflexive-criterion",
    "ideal-reflexivity",
    "torsionfree-projective",
];

pub fn verifier_ids() -> &'static [&'static str] {
    &IDS
}

fn both_sides(ctx: &Context) -> Vec<Module> {
    let mut v = ctx.sweep(false);
    v.extend(ctx.sweep(true));
    v
}

/// Left and right Gorenstein levels agree; `id Λ ≤ k ⇔ id Λ^op ≤ k` over a
/// `(k-1)`-Gorenstein algebra; `id_op = k` with `fd(I_0 ⊕ ... ⊕ I_{k-2}) < ∞` forces
/// `id = k`; both ids agree when ∞-Gorenstein.
fn gorenstein_symmetry(ctx: &Context) -> TheoremVerdict {
    let p = ctx.profile();
    let mut t = Tally::new("gorenstein-symmetry", &ctx.alg);
    t.input("cap", ctx.caps.cap);
    t.evidence("left_level", p.left.gorenstein_level).evidence("right_level", p.right.gorenstein_level);
    t.evidence("left_id", p.left.id).evidence("right_id", p.right.id);
    let agree = match (p.left.gorenstein_level, p.right.gorenstein_level) {
        (Extent::Exact(a), Extent::Exact(b)) => Some(a == b),
        (Extent::Exact(a), Extent::AtLeast(b)) | (Extent::AtLeast(b), Extent::Exact(a)) => (a < b).then_some(false),
        (Extent::Exact(_), Extent::Infinite) | (Extent::Infinite, Extent::Exact(_)) => Some(false),
        (Extent::Infinite, Extent::Infinite) => Some(true),
        _ => None,
    };
    t.decide(agree, || "left and right Gorenstein levels differ".into(), &[]);
    for k in 1..=ctx.caps.cap {
        if p.is_k_gorenstein(k - 1) != Some(true) {
            break;
        }
        if let (Some(l), Some(r)) = (p.left.id.le(k), p.right.id.le(k)) {
            t.check(l == r, || format!("(k-1)-Gorenstein with k = {k}, but only one id is at most k"), &[]);
        }
    }
    for (name, this, other) in [("left", &p.left, &p.right), ("right", &p.right, &p.left)] {
        let Some(k) = other.id.exact() else { continue };
        let head = other.fd.get(..k.saturating_sub(1));
        if let Some(fds) = head {
            if k >= 1 && fds.iter().all(|d| d.is_exact()) {
                t.decide(
                    this.id.decided_eq(Extent::Exact(k)),
                    || format!("{name} id differs from the other side's id {k} despite finite fd of the leading terms"),
                    &[],
                );
            }
        }
    }
    if p.is_infinity_gorenstein() {
        t.decide(
            p.left.id.decided_eq(p.right.id),
            || "∞-Gorenstein but the self-injective dimensions differ".into(),
            &[],
        );
    }
    t.finish()
}

/// Sequences from every submodule of every left module in the corpus, plus random ones.
fn sequences(ctx: &Context) -> Vec<ShortExact> {
    let mut out = Vec::new();
    for m in &ctx.left().modules {
        let lat = all_submodules(m, ctx.caps.lattice_cap);
        for s in &lat.subspaces {
            if !s.is_zero() && !s.is_full() {
                out.push(ShortExact::from_submodule(m, s));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.caps.seed.wrapping_add(100));
    for _ in 0..RANDOM_SEQUENCES {
        out.push(random_short_exact(&ctx.alg, &mut rng, ctx.caps.dim_cap.max(1)));
    }
    out
}

fn cokernel_sweep(ctx: &Context) -> TheoremVerdict {
    let parts: Vec<TheoremVerdict> = ctx
        .sweep(false)
        .iter()
        .filter(|m| !m.is_zero() && is_k_torsionfree(m, 1).holds)
        .map(|m| verify_cokernel_family(ctx, m, None, K).0)
        .collect();
    merge("cokernel-family", &ctx.alg, parts)
}

fn projective_scan(ctx: &Context) -> TheoremVerdict {
    let parts = (1..=K).map(|k| reflexive_implies_projective_scan(ctx, k)).collect();
    merge("torsionfree-projective", &ctx.alg, parts)
}

/// Run one verifier by id; `None` for an unknown id.
pub fn run_verifier(ctx: &Context, id: &str) -> Option<TheoremVerdict> {
    let v = match id {
        "gorenstein-symmetry" => gorenstein_symmetry(ctx),
        "auslander-strong-grade" => auslander_crosscheck(ctx, K),
        "quasi-gorenstein-grade" => quasi_grade_crosscheck(ctx, K),
        "evaluation-sequences" => evaluation_sequences(ctx, &both_sides(ctx)),
        "transpose-projective" => transpose_projective(ctx, &both_sides(ctx)),
        "reduced-grade-projective" => reduced_grade_projective(ctx, &both_sides(ctx)),
        "reduced-grade-reflexive" => reduced_grade_reflexive(ctx, K),
        "dclass-reduced-grade" => verify_dclass(ctx, K),
        "syzygy-torsionfree" => syzygy_torsionfree(ctx, K),
        "finitistic" => verify_finitistic(ctx).0,
        "nakayama" => nakayama_report(ctx),
        "triple-ext" => verify_triple_ext(ctx, &both_sides(ctx), ctx.caps.cap.min(4)),
        "grade-duality" => verify_duality_grade_t(ctx),
        "grade-min" => verify_grade_exact_seq(ctx, &sequences(ctx), K),
        "ext-purity" => verify_ext_purity(ctx, &both_sides(ctx)),
        "pure-criteria" => pure_criteria(ctx, &both_sides(ctx)),
        "pseudo-null-strong-grade" => pseudo_null_crosscheck(ctx, &both_sides(ctx), 2),
        "cokernel-family" => cokernel_sweep(ctx),
        "reflexive-criterion" => reflexive_criterion(ctx, &ctx.sweep(false)),
        "ideal-reflexivity" => ideal_reflexivity_report(ctx),
        "torsionfree-projective" => projective_scan(ctx),
        _ => return None,
    };
    Some(v)
}

/// Every verifier, in the order of [`verifier_ids`].
pub fn verify_all(ctx: &Context) -> Vec<TheoremVerdict> {
    IDS.iter().map(|id| run_verifier(ctx, id).expect("known id")).collect()
}

/// Search for a module whose top Ext against `Λ` is not pure, over an algebra
/// that is quasi Auslander-Gorenstein on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityExploration {
    pub algebra: String,
    pub quasi_auslander_gorenstein: Option<bool>,
    pub auslander_gorenstein: Option<bool>,
    pub checked: usize,
    pub undecided: usize,
    pub infinite_grade: usize,
    pub counterexamples: Vec<ModuleRecord>,
    pub summary: String,
}

pub fn explore_purity_question(ctx: &Context) -> PurityExploration {
    let p = ctx.profile();
    let qag = p.quasi_auslander_gorenstein();
    let mut out = PurityExploration {
        algebra: ctx.alg.digest().to_string(),
        quasi_auslander_gorenstein: qag,
        auslander_gorenstein: p.auslander_gorenstein,
        checked: 0,
        undecided: 0,
        infinite_grade: 0,
        counterexamples: Vec::new(),
        summary: String::new(),
    };
    for m in both_sides(ctx) {
        let g = match grade(&m, ctx.caps.cap) {
            Extent::Exact(g) => g,
            _ => {
                out.infinite_grade += 1;
                continue;
            }
        };
        let e = ext_lambda(&m, g).value;
        match purity_classify(&e, ctx.caps.cap, ctx.caps.lattice_cap).pure {
            Some(true) => out.checked += 1,
            Some(false) => {
                out.checked += 1;
                out.counterexamples.push(ModuleRecord::of(&m));
            }
            None => out.undecided += 1,
        }
    }
    let scope = match qag {
        Some(true) => "quasi Auslander-Gorenstein",
        Some(false) => "not quasi Auslander-Gorenstein, so the answer does not bear on the question",
        None => "quasi Auslander-Gorenstein status undecided within the cap",
    };
    out.summary = if out.counterexamples.is_empty() {
        format!("{scope}; no impure top Ext among {} decided modules", out.checked)
    } else {
        format!("{scope}; {} modules have impure top Ext", out.counterexamples.len())
    };
    out
}
