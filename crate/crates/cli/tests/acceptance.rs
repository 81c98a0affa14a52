//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The criteria pin the fixture corpus (b2, d3, d3min, s2), the derived
//! free-algebra sizes, the exhaustive oracle cross-checks, and the runtime
//! budgets. Run with `cargo test -p freealg-cli --test acceptance --
//! --nocapture` to see the per-criterion lines.

use std::time::{Duration, Instant};

use freealg::{
    build_free_algebra, check_compiler_biconditional, embedding_check, fixtures,
    preorder::{antisymmetry_counterexample, is_atomic_view, verify_preorder_view},
    AlgebraOps, Assignment, CoverCertificate, CoverEngine, FreeAlgebra, PreorderSpec,
    RelationView, SubAlgebra, VariableSet, VarietyPresentation,
};

const FREE_CAP: usize = 20_000;
const SUBALGEBRA_CAP: usize = 12;
const CONGRUENCE_CAP: usize = 8;

// Criteria carry runtime budgets; serialize them so one test's wall clock is
// not inflated by another running on a sibling core.
static GATE: std::sync::Mutex<()> = std::sync::Mutex::new(());

fn gate() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn pass(criterion: usize, name: &str) {
    println!("ACCEPTANCE {criterion} ({name}): PASS");
}

fn assert_runtime(criterion: usize, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
}

/// The fixture configurations the certificate criteria sweep.
fn configurations() -> Vec<(VarietyPresentation, usize, PreorderSpec, &'static str)> {
    vec![
        (
            fixtures::b2_presentation(),
            1,
            fixtures::bool_order_spec(),
            "b2 m=1 boolean order",
        ),
        (
            fixtures::b2_presentation(),
            2,
            fixtures::bool_order_spec(),
            "b2 m=2 boolean order",
        ),
        (
            fixtures::d3min_presentation(),
            1,
            fixtures::d3min_linear_spec(),
            "d3min m=1 linear order",
        ),
        (
            fixtures::d3min_presentation(),
            1,
            fixtures::d3min_collapsed_spec(),
            "d3min m=1 collapsed pre-order",
        ),
    ]
}

/// Fixture pre-orders for the SI-member atomicity ingredient (criterion 6).
fn fixture_preorders() -> Vec<(VarietyPresentation, Vec<PreorderSpec>, &'static str)> {
    vec![
        (
            fixtures::b2_presentation(),
            vec![fixtures::bool_order_spec()],
            "b2",
        ),
        (
            fixtures::d3_presentation(),
            vec![fixtures::equality_spec(fixtures::d3().signature())],
            "d3",
        ),
        (
            fixtures::d3min_presentation(),
            vec![fixtures::d3min_linear_spec(), fixtures::d3min_collapsed_spec()],
            "d3min",
        ),
        (
            fixtures::s2_presentation(),
            vec![fixtures::equality_spec(fixtures::s2().signature())],
            "s2",
        ),
    ]
}

fn all_assignments(n: usize, m: usize) -> Vec<Assignment> {
    let total = n.pow(m as u32);
    (0..total)
        .map(|mut row| {
            let mut asg = vec![0usize; m];
            for i in (0..m).rev() {
                asg[i] = row % n;
                row /= n;
            }
            asg
        })
        .collect()
}

#[test]
fn criterion_1_switching_term_verification() {
    let started = Instant::now();
    for (alg, switch, vars) in [
        fixtures::b2_switch(),
        fixtures::d3_switch(),
        fixtures::d3min_switch(),
        fixtures::s2_switch(),
    ] {
        let report = freealg::verify_switching_term(&alg, &switch, &vars).unwrap();
        assert!(report.ok, "{} rejected its switching term", alg.name());
    }
    // a deliberately broken candidate (the projection onto u) is rejected
    // with a counterexample tuple
    let (alg, _, vars) = fixtures::b2_switch();
    let report = freealg::verify_switching_term(&alg, &freealg::Term::Var(2), &vars).unwrap();
    assert!(!report.ok);
    let ([x, y, _, _], got, expected) = report.counterexample.unwrap();
    assert_ne!(x, y);
    assert_ne!(got, expected);
    assert_runtime(1, started.elapsed(), Duration::from_millis(100));
    pass(1, "switching-term verification");
}

#[test]
fn criterion_2_free_algebra_sizes() {
    let vp = fixtures::b2_presentation();
    let started = Instant::now();
    let fa1 = build_free_algebra(&vp, 1, FREE_CAP).unwrap();
    assert_runtime(2, started.elapsed(), Duration::from_secs(1));
    assert_eq!(fa1.len(), 4);

    let started = Instant::now();
    let fa2 = build_free_algebra(&vp, 2, FREE_CAP).unwrap();
    assert_runtime(2, started.elapsed(), Duration::from_secs(1));
    assert_eq!(fa2.len(), 16);

    let vp = fixtures::d3min_presentation();
    let started = Instant::now();
    let fa3 = build_free_algebra(&vp, 1, FREE_CAP).unwrap();
    assert!(fa3.len() <= 27);
    assert!(fa3.verify_closed(), "closure is not a fixed point");
    assert_runtime(2, started.elapsed(), Duration::from_secs(1));
    pass(2, "free-algebra sizes");
}

#[test]
fn criterion_3_simplicity_oracle() {
    let started = Instant::now();
    for (vp, _, name) in fixture_preorders() {
        for member in vp.si_inventory(SUBALGEBRA_CAP, false).unwrap() {
            if member.size() < 2 {
                continue;
            }
            let congruences =
                freealg::enumerate_congruences(&member.algebra, CONGRUENCE_CAP).unwrap();
            assert_eq!(
                congruences.len(),
                2,
                "SI member {:?} of {name} is not simple",
                member.carrier
            );
        }
    }
    assert_runtime(3, started.elapsed(), Duration::from_secs(1));
    pass(3, "simplicity oracle");
}

#[test]
fn criterion_4_preorder_suite() {
    let started = Instant::now();
    // Boolean natural order on (b2, m=2): reflexive, transitive,
    // antisymmetric, by 16^2 / 16^3 enumeration
    let vp = fixtures::b2_presentation();
    let fa = build_free_algebra(&vp, 2, FREE_CAP).unwrap();
    let view = RelationView::build(&fixtures::bool_order_spec(), &fa);
    let report = verify_preorder_view(&view);
    assert!(report.reflexive && report.transitive);
    assert!(antisymmetry_counterexample(&view).is_none());

    // the d3min collapsed relation is a pre-order but not antisymmetric
    let vp = fixtures::d3min_presentation();
    let fa = build_free_algebra(&vp, 1, FREE_CAP).unwrap();
    let view = RelationView::build(&fixtures::d3min_collapsed_spec(), &fa);
    assert!(verify_preorder_view(&view).is_preorder());
    assert!(antisymmetry_counterexample(&view).is_some());
    assert_runtime(4, started.elapsed(), Duration::from_secs(1));
    pass(4, "pre-order suite");
}

struct SweepOutcome {
    fa: FreeAlgebra,
    si: Vec<SubAlgebra>,
    certificates: Vec<CoverCertificate>,
}

fn certificate_sweep(
    vp: &VarietyPresentation,
    m: usize,
    spec: &PreorderSpec,
    label: &str,
) -> SweepOutcome {
    let fa = build_free_algebra(vp, m, FREE_CAP).unwrap();
    let engine = CoverEngine::new(&fa, spec);
    assert!(verify_preorder_view(engine.f_view()).is_preorder());
    let strict = engine.f_view().strict_pairs();
    let mut certificates = Vec::with_capacity(strict.len());
    for (alpha, beta) in strict {
        let cert = engine
            .synthesize_cover(alpha, beta)
            .unwrap_or_else(|e| panic!("{label}: synthesis failed for ({alpha}, {beta}): {e}"));
        assert!(
            cert.checks.alpha_le_gamma && cert.checks.gamma_le_beta,
            "{label}: stage (i) failed for ({alpha}, {beta})"
        );
        assert!(
            cert.checks.gamma_not_le_alpha,
            "{label}: stage (ii) failed for ({alpha}, {beta})"
        );
        assert!(
            cert.checks.dichotomy,
            "{label}: stage (iii) failed for ({alpha}, {beta}), witness {:?}",
            cert.checks.dichotomy_witness
        );
        // gamma's class lies in the oracle cover set restricted to (alpha, beta]
        let covers = engine.f_view().cover_set(alpha);
        assert!(
            covers.contains(&cert.gamma) && engine.f_view().holds(cert.gamma, beta),
            "{label}: gamma not in the oracle cover set for ({alpha}, {beta})"
        );
        certificates.push(cert);
    }
    let si = vp.si_inventory(SUBALGEBRA_CAP, false).unwrap();
    SweepOutcome {
        fa,
        si,
        certificates,
    }
}

#[test]
fn criterion_5_theorem_end_to_end() {
    let started = Instant::now();
    let mut total = 0usize;
    for (vp, m, spec, label) in configurations() {
        let outcome = certificate_sweep(&vp, m, &spec, label);
        assert!(
            !outcome.certificates.is_empty() || label.contains("equality"),
            "{label}: expected strict pairs"
        );
        total += outcome.certificates.len();
    }
    assert_eq!(total, 5 + 65 + 189 + 218);
    assert_runtime(5, started.elapsed(), Duration::from_secs(30));
    pass(5, "theorem end-to-end certificate sweep");
}

#[test]
fn criterion_6_oracle_equivalence() {
    // synthesis and enumeration agree on every fixture configuration
    for (vp, m, spec, label) in configurations() {
        let fa = build_free_algebra(&vp, m, FREE_CAP).unwrap();
        let engine = CoverEngine::new(&fa, &spec);
        let oracle = is_atomic_view(engine.f_view());
        let certs = engine.synthesize_all().unwrap();
        let synthesis_atomic = certs.iter().all(|c| c.checks.all_passed());
        assert!(oracle.atomic, "{label}: oracle says non-atomic");
        assert!(synthesis_atomic, "{label}: synthesis says non-atomic");
    }
    // the equality configuration is vacuously atomic on both paths
    let vp = fixtures::s2_presentation();
    let fa = build_free_algebra(&vp, 2, FREE_CAP).unwrap();
    let spec = fixtures::equality_spec(vp.signature());
    let engine = CoverEngine::new(&fa, &spec);
    assert!(engine.f_view().strict_pairs().is_empty());
    assert!(is_atomic_view(engine.f_view()).atomic);

    // the finite-pre-order atomicity ingredient on every SI member, for
    // every fixture pre-order
    for (vp, specs, name) in fixture_preorders() {
        for member in vp.si_inventory(SUBALGEBRA_CAP, false).unwrap() {
            for spec in &specs {
                let view = RelationView::build(spec, &member.algebra);
                assert!(
                    verify_preorder_view(&view).is_preorder(),
                    "{name} {:?}: relation is not a pre-order",
                    member.carrier
                );
                assert!(
                    is_atomic_view(&view).atomic,
                    "{name} {:?}: finite pre-order is not atomic",
                    member.carrier
                );
            }
        }
    }
    pass(6, "oracle equivalence and the finite-atomicity ingredient");
}

/// The direct diagram construction on s2's free algebra at a surjective
/// coordinate; s2 has no constants, so the compiler must fall back to the
/// designated pair and the degenerate escape becomes reachable.
fn s2_direct_diagram() -> (
    FreeAlgebra,
    VarietyPresentation,
    SubAlgebra,
    Vec<(usize, freealg::Term)>,
    freealg::DiagramFormula,
    freealg::EquationPair,
) {
    let vp = fixtures::s2_presentation();
    let fa = build_free_algebra(&vp, 2, FREE_CAP).unwrap();
    let coordinate = fa
        .coordinates()
        .iter()
        .position(|c| c.assignment == vec![0, 1])
        .unwrap();
    let rho = freealg::build_representatives(&fa, coordinate).unwrap();
    let carrier: Vec<usize> = rho.iter().map(|(a, _)| *a).collect();
    let sub = freealg::restrict_to_subuniverse(vp.generator(0), 0, &carrier).unwrap();
    let coord = fa.coordinates()[coordinate].clone();
    let eta = freealg::build_diagram(&sub, &vp, &rho, 2, &coord.assignment);
    let (u, w, strategy) = freealg::choose_designated_pair(&vp, &sub, &rho);
    assert_eq!(strategy, freealg::PairStrategy::DesignatedPair);
    let pair = freealg::compile_to_equation(&eta, &vp, &u, &w, strategy).unwrap();
    (fa, vp, sub, rho, eta, pair)
}

#[test]
fn criterion_7_compiler_biconditional_with_escape() {
    // every certificate from the sweep satisfies the biconditional over the
    // whole SI inventory; zero violations tolerated
    for (vp, m, spec, label) in configurations() {
        let outcome = certificate_sweep(&vp, m, &spec, label);
        for cert in &outcome.certificates {
            let report = check_compiler_biconditional(
                &outcome.fa,
                &outcome.si,
                &cert.eta,
                &cert.pair,
                &cert.rho,
            )
            .unwrap();
            assert!(
                report.ok(),
                "{label}: biconditional violations {:?}",
                report.violations
            );
        }
    }
    // on s2 the degenerate escape must genuinely fire: all variables into a
    // singleton subuniverse satisfies delta = epsilon with the diagram false
    let (fa, vp, _, rho, eta, pair) = s2_direct_diagram();
    let si = vp.si_inventory(SUBALGEBRA_CAP, false).unwrap();
    let report = check_compiler_biconditional(&fa, &si, &eta, &pair, &rho).unwrap();
    assert!(report.ok(), "violations: {:?}", report.violations);
    assert!(
        report.escapes >= 2,
        "expected the degenerate escape to fire on the singleton subuniverses, got {}",
        report.escapes
    );
    pass(7, "compiler biconditional with degenerate escape");
}

#[test]
fn criterion_8_embedding_property() {
    // wherever the diagram holds, the induced map is an injective
    // homomorphism — exhaustive over SI members and assignments
    for (vp, m, spec, label) in configurations() {
        let outcome = certificate_sweep(&vp, m, &spec, label);
        for cert in &outcome.certificates {
            for b in &outcome.si {
                for asg in all_assignments(b.size(), m) {
                    let report =
                        embedding_check(&cert.eta, &cert.subalgebra, &vp, &cert.rho, b, &asg)
                            .unwrap();
                    if report.eta_holds {
                        assert!(
                            report.injective && report.preserves_operations,
                            "{label}: diagram held but the map failed to embed"
                        );
                    }
                }
            }
        }
    }
    // also on the s2 direct construction, where singleton members force
    // non-embedding evaluations
    let (fa, vp, sub, rho, eta, _) = s2_direct_diagram();
    let si = vp.si_inventory(SUBALGEBRA_CAP, false).unwrap();
    let mut embeddings = 0;
    for b in &si {
        for asg in all_assignments(b.size(), fa.generator_count()) {
            let report = embedding_check(&eta, &sub, &vp, &rho, b, &asg).unwrap();
            if report.eta_holds {
                assert!(report.injective && report.preserves_operations);
                embeddings += 1;
            }
        }
    }
    assert!(embeddings >= 2, "identity and swap embeddings expected on s2");
    pass(8, "property (1) embedding");
}

#[test]
fn criterion_9_determinism() {
    use std::process::Command;
    let root: std::path::PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"]
        .iter()
        .collect();
    let b2 = root.join("b2.alg").display().to_string();
    let d3min = root.join("d3min.alg").display().to_string();
    let b2_switch = "(or (and u (or (and x y) (and (not x) (not y)))) \
                     (and v (not (or (and x y) (and (not x) (not y))))))";
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "atomic-check", &b2, "--switch", b2_switch, "--generators", "2",
            "--le-lhs", "(and x y)", "--le-rhs", "x", "--output", "structured",
        ],
        vec![
            "atomic-check", &d3min, "--switch", "(s x y u v)", "--generators", "1",
            "--le-lhs", "(min x y)", "--le-rhs", "x", "--output", "structured",
        ],
        vec![
            "find-cover", &b2, "--switch", b2_switch, "--generators", "1",
            "--le-lhs", "(and x y)", "--le-rhs", "x",
            "--alpha", "(zero)", "--beta", "(one)", "--output", "structured",
        ],
        vec![
            "find-cover", &d3min, "--switch", "(s x y u v)", "--generators", "1",
            "--le-lhs", "(min x y)", "--le-rhs", "x",
            "--alpha", "c0", "--beta", "c2", "--output", "structured",
        ],
    ];
    for args in runs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_freealg"))
                .args(&args)
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(
            first.stdout, second.stdout,
            "structured output not byte-identical for {args:?}"
        );
    }
    pass(9, "byte-identical structured output");
}

#[test]
fn s2_free_algebra_shape() {
    // context for criteria 6-8: s2's free algebra on two generators has just
    // the two generator classes, and carries no strict definable pairs
    let vp = fixtures::s2_presentation();
    let fa = build_free_algebra(&vp, 2, FREE_CAP).unwrap();
    assert_eq!(fa.len(), 2);
    let vars = VariableSet::generators(2, vp.signature()).unwrap();
    assert_eq!(vars.names(), ["x", "y"]);
}
