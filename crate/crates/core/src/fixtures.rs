//! Small algebras used throughout the test suites and bundled with the CLI.

use crate::algebra::{build_algebra, build_from_constants, Algebra, ConstantsSpec, Presentation, QuiverSpec, Relation};
use crate::linalg::Fp;

/// Build a bound-quiver algebra from names; each relation is a list of `(coefficient, word)`.
pub fn quiver_algebra(
    p: u64,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(u32, &str)]],
    nilpotency: usize,
) -> Algebra {
    let quiver = QuiverSpec::new(vertices, arrows).expect("fixture quiver");
    let relations = relations
        .iter()
        .map(|r| Relation { terms: r.iter().map(|(c, w)| (*c, quiver.parse_word(w).expect("fixture word"))).collect() })
        .collect();
    build_algebra(&Presentation { field: Fp::new(p).expect("prime"), quiver, relations, nilpotency })
        .expect("fixture algebra")
}

/// `GF(2) x GF(2)`.
pub fn semisimple() -> Algebra {
    quiver_algebra(2, &["1", "2"], &[], &[], 1)
}

/// `GF(2)[x]/(x^2)` as a one-loop quiver.
pub fn dual_numbers() -> Algebra {
    quiver_algebra(2, &["1"], &[("x", "1", "1")], &[&[(1, "x*x")]], 2)
}

/// `GF(2)[x]/(x^2)` entered through structure constants.
pub fn dual_numbers_constants() -> Algebra {
    build_from_constants(&ConstantsSpec {
        field: Fp::gf2(),
        labels: vec!["1".into(), "x".into()],
        products: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        unit: vec![1, 0],
        idempotents: vec![vec![1, 0]],
    })
    .expect("dual numbers")
}

/// Path algebra of `1 -> 2`.
pub fn a2() -> Algebra {
    quiver_algebra(2, &["1", "2"], &[("a", "1", "2")], &[], 2)
}

/// Path algebra of `2 <- 1 -> 3`: quasi Auslander-Gorenstein on both sides, not Auslander-Gorenstein.
pub fn branch_a3() -> Algebra {
    quiver_algebra(2, &["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "3")], &[], 2)
}

/// `1 -> 2 -> 3` with the composite killed; global dimension 2.
pub fn gldim2() -> Algebra {
    quiver_algebra(2, &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[&[(1, "b*a")]], 2)
}

pub fn all() -> Vec<(&'static str, Algebra)> {
    vec![
        ("semisimple", semisimple()),
        ("dual_numbers", dual_numbers()),
        ("a2", a2()),
        ("branch_a3", branch_a3()),
        ("gldim2", gldim2()),
    ]
}
