//! Independent oracles for the free-algebra construction: brute-force term
//! enumeration checks witness minimality, and the identity oracle must agree
//! with element equality.

use freealg::{
    build_free_algebra, fixtures, validate_identity, AlgebraOps, Signature, Term, VariableSet,
    VarietyPresentation,
};

/// All terms of each exact node count up to `max_size`, built directly from
/// the grammar — independent of the witness search.
fn terms_by_size(sig: &Signature, num_vars: usize, max_size: usize) -> Vec<Vec<Term>> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for v in 0..num_vars {
        by_size[1].push(Term::Var(v));
    }
    for sym in sig.constants() {
        by_size[1].push(Term::constant(sym));
    }
    for size in 2..=max_size {
        let mut new_terms = Vec::new();
        for sym in 0..sig.len() {
            let k = sig.arity(sym);
            if k == 0 || k > size - 1 {
                continue;
            }
            let mut args: Vec<Term> = Vec::new();
            build_apps(sig, &by_size, sym, k, size - 1, &mut args, &mut new_terms);
        }
        by_size[size] = new_terms;
    }
    by_size
}

fn build_apps(
    sig: &Signature,
    by_size: &[Vec<Term>],
    sym: usize,
    slots: usize,
    budget: usize,
    args: &mut Vec<Term>,
    out: &mut Vec<Term>,
) {
    if slots == 0 {
        if budget == 0 {
            out.push(Term::App(sym, args.clone()));
        }
        return;
    }
    for size in 1..=budget.saturating_sub(slots - 1) {
        for t in &by_size[size] {
            args.push(t.clone());
            build_apps(sig, by_size, sym, slots - 1, budget - size, args, out);
            args.pop();
        }
    }
}

fn value_vector(fa: &freealg::FreeAlgebra, t: &Term) -> Vec<u8> {
    fa.coordinates()
        .iter()
        .map(|c| {
            freealg::evaluate(t, fa.presentation().generator(c.generator), &c.assignment).unwrap()
                as u8
        })
        .collect()
}

fn check_witness_minimality(vp: &VarietyPresentation, m: usize, bound: usize) {
    let fa = build_free_algebra(vp, m, 20_000).unwrap();
    let by_size = terms_by_size(vp.signature(), m, bound);
    let mut minimal: std::collections::HashMap<Vec<u8>, usize> = std::collections::HashMap::new();
    for (size, terms) in by_size.iter().enumerate() {
        for t in terms {
            minimal.entry(value_vector(&fa, t)).or_insert(size);
        }
    }
    for i in 0..fa.len() {
        let elem = fa.element(i);
        match minimal.get(elem.values.as_slice()) {
            Some(&true_min) => assert_eq!(
                elem.witness_size, true_min,
                "element {i} has witness of {} nodes but a {true_min}-node term exists",
                elem.witness_size
            ),
            None => assert!(
                elem.witness_size > bound,
                "element {i} claims witness size {} but is unreachable within {bound} nodes",
                elem.witness_size
            ),
        }
    }
    // and each witness really evaluates to its element's vector
    for i in 0..fa.len() {
        assert_eq!(value_vector(&fa, &fa.element(i).witness), fa.element(i).values);
    }
}

#[test]
fn witness_minimality_boolean_two_generators() {
    check_witness_minimality(&fixtures::b2_presentation(), 2, 7);
}

#[test]
fn witness_minimality_d3min_one_generator() {
    check_witness_minimality(&fixtures::d3min_presentation(), 1, 6);
}

#[test]
fn witness_minimality_s2_two_generators() {
    check_witness_minimality(&fixtures::s2_presentation(), 2, 6);
}

/// Freeness cross-check: two terms name the same free element exactly when
/// the corresponding identity holds in every generator.
#[test]
fn element_equality_matches_identity_validity() {
    for (vp, m, bound) in [
        (fixtures::b2_presentation(), 1, 5),
        (fixtures::s2_presentation(), 2, 5),
        (fixtures::d3_presentation(), 1, 5),
    ] {
        let fa = build_free_algebra(&vp, m, 20_000).unwrap();
        let vars = VariableSet::generators(m, vp.signature()).unwrap();
        let terms: Vec<Term> = terms_by_size(vp.signature(), m, bound)
            .into_iter()
            .flatten()
            .collect();
        for lhs in &terms {
            for rhs in &terms {
                let same_element =
                    fa.element_of_term(lhs).unwrap() == fa.element_of_term(rhs).unwrap();
                let identity = validate_identity(&vp, &vars, lhs, rhs).unwrap();
                assert_eq!(
                    same_element,
                    identity.valid,
                    "freeness mismatch on {} vs {} ({})",
                    freealg::print_term(lhs, vp.signature(), &vars),
                    freealg::print_term(rhs, vp.signature(), &vars),
                    vp.generator(0).name(),
                );
            }
        }
    }
}

/// holds on the free algebra agrees with holds at every coordinate.
#[test]
fn relation_on_free_algebra_is_pointwise() {
    let vp = fixtures::b2_presentation();
    let fa = build_free_algebra(&vp, 2, 20_000).unwrap();
    let spec = fixtures::bool_order_spec();
    for a in 0..fa.len() {
        for b in 0..fa.len() {
            let on_f = freealg::holds(&spec, &fa, a, b);
            let pointwise = fa.coordinates().iter().enumerate().all(|(ci, coord)| {
                freealg::holds(
                    &spec,
                    vp.generator(coord.generator),
                    fa.element(a).values[ci] as usize,
                    fa.element(b).values[ci] as usize,
                )
            });
            assert_eq!(on_f, pointwise);
        }
    }
}

/// Subalgebra closure is idempotent and monotone in the seed.
#[test]
fn closure_idempotent_and_monotone() {
    for alg in [fixtures::b2(), fixtures::d3min(), fixtures::s2()] {
        let n = alg.size();
        for mask in 0u32..(1 << n) {
            let seed: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = freealg::subalgebra_closure(&alg, &seed);
            assert_eq!(freealg::subalgebra_closure(&alg, &closed), closed);
            for mask2 in 0u32..(1 << n) {
                if mask2 & mask == mask {
                    let seed2: Vec<usize> = (0..n).filter(|&i| mask2 >> i & 1 == 1).collect();
                    let closed2 = freealg::subalgebra_closure(&alg, &seed2);
                    assert!(closed.iter().all(|e| closed2.contains(e)));
                }
            }
        }
    }
}

/// The shipped fixture files stay in sync with the programmatic corpus.
#[test]
fn fixture_files_match_corpus() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    for (file, alg) in [
        ("b2.alg", fixtures::b2()),
        ("d3.alg", fixtures::d3()),
        ("d3min.alg", fixtures::d3min()),
        ("s2.alg", fixtures::s2()),
    ] {
        let text = std::fs::read_to_string(format!("{root}/{file}")).unwrap();
        assert_eq!(freealg::parse_algebra(&text).unwrap(), alg, "{file} drifted");
    }
}
