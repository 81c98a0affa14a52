//! End-to-end sweep: for every strict pair of every fixture configuration,
//! the synthesized certificate passes all verification stages and lands in
//! the oracle-computed cover set.

use freealg::{
    build_free_algebra, check_compiler_biconditional, embedding_check, fixtures, CoverEngine,
    PreorderSpec, RelationView, VarietyPresentation,
};

fn sweep(vp: &VarietyPresentation, m: usize, spec: &PreorderSpec) -> usize {
    let fa = build_free_algebra(vp, m, 20_000).unwrap();
    let engine = CoverEngine::new(&fa, spec);
    let report = freealg::preorder::verify_preorder_view(engine.f_view());
    assert!(report.is_preorder());
    let certs = engine.synthesize_all().unwrap();
    let si = vp.si_inventory(12, false).unwrap();
    for cert in &certs {
        assert!(
            cert.checks.all_passed(),
            "({}, {}) failed {:?}",
            cert.alpha,
            cert.beta,
            cert.checks
        );
        // oracle equivalence: gamma lies in the cover set restricted to the interval
        let covers = engine.f_view().cover_set(cert.alpha);
        assert!(covers.contains(&cert.gamma));
        assert!(engine.f_view().holds(cert.gamma, cert.beta));
        // compiler biconditional over the whole SI inventory
        let bic = check_compiler_biconditional(&fa, &si, &cert.eta, &cert.pair, &cert.rho).unwrap();
        assert!(bic.ok(), "biconditional violations: {:?}", bic.violations);
        // property (1): wherever the diagram holds, the induced map embeds A
        for b in &si {
            let n = b.size();
            let total = n.pow(m as u32);
            for mut row in 0..total {
                let mut asg = vec![0usize; m];
                for i in (0..m).rev() {
                    asg[i] = row % n;
                    row /= n;
                }
                let emb = embedding_check(&cert.eta, &cert.subalgebra, vp, &cert.rho, b, &asg)
                    .unwrap();
                if emb.eta_holds {
                    assert!(emb.injective && emb.preserves_operations);
                }
            }
        }
    }
    // synthesis and enumeration agree on atomicity
    let oracle = freealg::preorder::is_atomic_view(engine.f_view());
    assert!(oracle.atomic);
    certs.len()
}

#[test]
fn boolean_one_generator() {
    let vp = fixtures::b2_presentation();
    let n = sweep(&vp, 1, &fixtures::bool_order_spec());
    assert_eq!(n, 5); // 0 < x, 0 < not x, 0 < 1, x < 1, not x < 1
}

#[test]
fn boolean_two_generators() {
    let vp = fixtures::b2_presentation();
    // 3^4 comparable pairs minus 16 reflexive ones
    let n = sweep(&vp, 2, &fixtures::bool_order_spec());
    assert_eq!(n, 65);
}

#[test]
fn d3min_linear_order() {
    let vp = fixtures::d3min_presentation();
    // pointwise chain order on 27 elements: 6^3 comparable pairs minus 27
    let n = sweep(&vp, 1, &fixtures::d3min_linear_spec());
    assert_eq!(n, 189);
}

#[test]
fn d3min_collapsed_preorder() {
    let vp = fixtures::d3min_presentation();
    // 7 pairs per coordinate, of which 5 are two-sided: 7^3 - 5^3
    let n = sweep(&vp, 1, &fixtures::d3min_collapsed_spec());
    assert_eq!(n, 218);
}

#[test]
fn s2_equality_preorder_has_no_strict_pairs() {
    let vp = fixtures::s2_presentation();
    let fa = build_free_algebra(&vp, 2, 20_000).unwrap();
    let spec = fixtures::equality_spec(vp.signature());
    let view = RelationView::build(&spec, &fa);
    assert_eq!(fa.len(), 2);
    assert!(view.strict_pairs().is_empty());
    assert!(freealg::preorder::is_atomic_view(&view).atomic);
}
