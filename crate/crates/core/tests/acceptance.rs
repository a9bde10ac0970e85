//! Acceptance gate: one test per criterion, every check exact (rational
//! arithmetic, zero tolerance). Run with `-- --nocapture` to see one
//! pass/fail line per criterion.

use morita::algebra::Algebra;
use morita::bicategory::is_equivalence;
use morita::corpus::Corpus;
use morita::kv;
use morita::report::{CheckStatus, Mutation};
use morita::suite::{run, run_suite, SuiteCtx};
use std::sync::Arc;
use std::time::Instant;

fn ctx() -> SuiteCtx {
    SuiteCtx::new(7, 8)
}

fn criterion(n: usize, name: &str, ok: bool) {
    println!("criterion {n} ({name}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed");
}

#[test]
fn c1_bicategory_coherence() {
    let corpus = Corpus::default_corpus();
    let started = Instant::now();
    let suite = run_suite("bicategory", &corpus, &ctx()).unwrap();
    let elapsed = started.elapsed();
    let pentagons =
        suite.checks.iter().filter(|c| c.id.starts_with("pentagon[")).count();
    let triangles =
        suite.checks.iter().filter(|c| c.id.starts_with("triangle[")).count();
    let ok = suite.failed == 0
        && pentagons >= 50
        && triangles >= 50
        && elapsed.as_secs() < 60;
    println!(
        "  bicategory: {} checks, {} pentagons, {} triangles in {elapsed:?}",
        suite.checks.len(),
        pentagons,
        triangles
    );
    criterion(1, "pentagon and triangle coherence on >=50 chains, under 60s", ok);
}

#[test]
fn c2_canonical_module_isomorphisms() {
    let corpus = Corpus::default_corpus();
    let suite = run_suite("appendixA", &corpus, &ctx()).unwrap();
    let count = |prefix: &str| {
        suite
            .checks
            .iter()
            .filter(|c| c.id.starts_with(prefix) && c.status == CheckStatus::Pass)
            .count()
    };
    let skipped_gate = suite.checks.iter().any(|c| {
        c.status == CheckStatus::Skip
            && c.id.contains("Q[x]/(x^2)")
            && c.reason.as_deref() == Some("NotSemisimple")
    });
    let ok = suite.failed == 0
        && count("braiding[") >= 100
        && count("adjunction-iso[") >= 100
        && count("double-dual[") >= 100
        && count("tensor-hom[") >= 100
        && skipped_gate;
    criterion(2, "four canonical isomorphisms invertible+natural on >=100 instances, non-semisimple entry skipped", ok);
}

#[test]
fn c3_duality_involution() {
    let corpus = Corpus::default_corpus();
    let suite = run_suite("duality", &corpus, &ctx()).unwrap();
    // the compatibility equality must pass for every semisimple algebra
    let expected = ["Q", "QxQ", "M2(Q)", "M2(Q)xM1(Q)", "Q[C2^1]"];
    let compat_passes = expected.iter().all(|label| {
        suite.checks.iter().any(|c| {
            c.id.starts_with("bidual-compat[")
                && c.instance == *label
                && c.status == CheckStatus::Pass
        })
    });
    let ok = suite.failed == 0 && compat_passes;
    criterion(3, "duality involution laws incl. the bidual compatibility equality", ok);
}

#[test]
fn c4_duality_pseudofunctor() {
    let corpus = Corpus::default_corpus();
    let suite = run_suite("rep", &corpus, &ctx()).unwrap();
    // one compatibility check per (semisimple algebra, simple): 1+2+1+2+2
    let functor_checks = suite
        .checks
        .iter()
        .filter(|c| c.id.starts_with("duality-functor["))
        .collect::<Vec<_>>();
    let ok = suite.failed == 0
        && functor_checks.len() == 8
        && functor_checks.iter().all(|c| c.status == CheckStatus::Pass);
    criterion(4, "representation functor compatible with dualization on every simple", ok);
}

#[test]
fn c5_morita_detection() {
    let mut ok = true;
    for d in [2usize, 3] {
        let md = Arc::new(Algebra::matrix_algebra(d));
        let rows = kv::simple_cells(&md).unwrap().remove(0);
        let (eq, _) = is_equivalence(&rows).unwrap();
        let perm = kv::rep_1(&rows).unwrap().functor.is_permutation();
        ok &= eq && perm;
    }
    let qq = Arc::new(Algebra::product(&Algebra::matrix_algebra(1), &Algebra::matrix_algebra(1)));
    let q = Arc::new(Algebra::rational());
    let proj = morita::Bimodule {
        left: q,
        right: qq,
        dim: 1,
        left_act: vec![morita::Mat::identity(1)],
        right_act: vec![morita::Mat::identity(1), morita::Mat::zeros(1, 1)],
        label: "first-projection".to_string(),
    };
    let (eq, _) = is_equivalence(&proj).unwrap();
    ok &= !eq;
    // plus the suite-level sweep over random bimodules
    let corpus = Corpus::default_corpus();
    let suite = run_suite("morita", &corpus, &ctx()).unwrap();
    ok &= suite.failed == 0;
    criterion(5, "equivalence detection on named instances with permutation images", ok);
}

#[test]
fn c6_dual_objects() {
    let corpus = Corpus::default_corpus();
    let suite = run_suite("dualobjects", &corpus, &ctx()).unwrap();
    let all_algebras = suite
        .checks
        .iter()
        .filter(|c| c.id.starts_with("zigzag["))
        .count()
        == corpus.algebras.len();
    let ok = suite.failed == 0 && all_algebras;
    criterion(6, "zig-zag identities certified for every corpus algebra", ok);
}

#[test]
fn c7_skeleton_involution_strict() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    for _ in 0..1000 {
        let f = kv::random_kv_nat(&mut rng);
        ok &= kv::kv_dual_nat(&kv::kv_dual_nat(&f)) == f;
        ok &= kv::kv_dual_functor(&kv::kv_dual_functor(&f.source)) == f.source;
    }
    criterion(7, "skeleton involution bitwise identity on 1000 random cells", ok);
}

#[test]
fn c8_determinism() {
    let corpus = Corpus::default_corpus();
    let r1 = run("all", &corpus, &ctx()).unwrap();
    let r2 = run("all", &corpus, &ctx()).unwrap();
    let ok = r1.digest == r2.digest
        && r1.corpus_digest == r2.corpus_digest
        && r1.failures == 0
        && r2.failures == 0;
    println!("  report digest {}", r1.digest);
    criterion(8, "identical corpus and seed give identical report digests", ok);
}

#[test]
fn c9_mutation_sensitivity() {
    let corpus = Corpus::default_corpus();
    let targets = [
        ("bicategory", "associator"),
        ("appendixA", "braid"),
        ("morita", "unit"),
        ("dualobjects", "zigzag-witness"),
        ("duality", "comp-cell"),
        ("rep", "theta"),
    ];
    let mut ok = true;
    // Full-run isolation for one representative target: exactly the
    // mutated suite fails, every other suite stays green.
    {
        let mut mctx = ctx();
        mctx.mutation =
            Some(Mutation { suite: "rep".into(), cell: "theta".into(), entry: (0, 0) });
        let report = run("all", &corpus, &mctx).unwrap();
        for s in &report.suites {
            if s.name == "rep" {
                ok &= s.failed > 0;
            } else {
                ok &= s.failed == 0;
            }
        }
        println!("  rep/theta mutation: only the rep suite fails = {ok}");
    }
    // Sensitivity of the remaining targets within their own suite.
    for (suite, cell) in targets.iter().filter(|(s, _)| *s != "rep") {
        let mut mctx = ctx();
        mctx.mutation =
            Some(Mutation { suite: suite.to_string(), cell: cell.to_string(), entry: (0, 0) });
        let mutated = run_suite(suite, &corpus, &mctx).unwrap();
        let clean = mutated.failed > 0;
        println!("  {suite}/{cell} mutation: suite fails = {clean}");
        ok &= clean;
    }
    criterion(9, "corrupting one coherence-cell entry fails exactly the matching suite", ok);
}
