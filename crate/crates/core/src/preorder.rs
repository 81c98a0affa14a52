//! Equationally definable pre-orders: reflexivity/transitivity verification,
//! strict order, covers, and the exhaustive atomicity oracle.
//!
//! A relation spec is a pair of terms over the two designated variables x, y;
//! `a <= b` holds in a carrier exactly when the two terms evaluate equally
//! under x -> a, y -> b. All checks here are exhaustive over the finite
//! carrier — the materialized free algebra or any finite algebra.

use crate::error::{Error, Result};
use crate::signature::{Signature, VariableSet};
use crate::term::{evaluate, parse_term, AlgebraOps, Term};

/// The two terms defining `x <= y` as `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct PreorderSpec {
    lhs: Term,
    rhs: Term,
    vars: VariableSet,
}

impl PreorderSpec {
    pub fn new(lhs: Term, rhs: Term, sig: &Signature) -> Result<Self> {
        let vars = VariableSet::relation_vars(sig)?;
        for t in [&lhs, &rhs] {
            if let Some(v) = t.max_var() {
                if v >= 2 {
                    return Err(Error::Precondition(
                        "relation terms must be over the variables x, y".into(),
                    ));
                }
            }
        }
        Ok(PreorderSpec { lhs, rhs, vars })
    }

    pub fn parse(lhs: &str, rhs: &str, sig: &Signature) -> Result<Self> {
        let vars = VariableSet::relation_vars(sig)?;
        let lhs = parse_term(lhs, sig, &vars)?;
        let rhs = parse_term(rhs, sig, &vars)?;
        PreorderSpec::new(lhs, rhs, sig)
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }
}

/// Does `a <= b` hold in `alg` under the spec?
pub fn holds<A: AlgebraOps + ?Sized>(spec: &PreorderSpec, alg: &A, a: usize, b: usize) -> bool {
    let asg = [a, b];
    let l = evaluate(&spec.lhs, alg, &asg).expect("relation terms are over x, y");
    let r = evaluate(&spec.rhs, alg, &asg).expect("relation terms are over x, y");
    l == r
}

/// The full relation on a finite carrier, materialized once so that the
/// pair/triple enumerations below are table lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationView {
    n: usize,
    bits: Vec<bool>,
}

impl RelationView {
    pub fn build<A: AlgebraOps + ?Sized>(spec: &PreorderSpec, alg: &A) -> Self {
        let n = alg.size();
        let mut bits = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                bits[a * n + b] = holds(spec, alg, a, b);
            }
        }
        RelationView { n, bits }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut bits = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                bits[a * n + b] = f(a, b);
            }
        }
        RelationView { n, bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    /// `a < b`: a <= b and b </= a.
    pub fn strictly_less(&self, a: usize, b: usize) -> bool {
        self.holds(a, b) && !self.holds(b, a)
    }

    /// `c` covers `a`: a < c with nothing strictly between.
    pub fn covers(&self, a: usize, c: usize) -> bool {
        self.strictly_less(a, c)
            && (0..self.n).all(|x| !(self.strictly_less(a, x) && self.strictly_less(x, c)))
    }

    /// All covers of `a`, in canonical element order.
    pub fn cover_set(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.covers(a, c)).collect()
    }

    /// Strict pairs a < b in canonical order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.strictly_less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Reflexivity and transitivity, checked over all pairs and triples.
#[derive(Debug, Clone)]
pub struct PreorderReport {
    pub reflexive: bool,
    pub transitive: bool,
    pub reflexivity_counterexample: Option<usize>,
    pub transitivity_counterexample: Option<(usize, usize, usize)>,
}

impl PreorderReport {
    pub fn is_preorder(&self) -> bool {
        self.reflexive && self.transitive
    }
}

pub fn verify_preorder_view(view: &RelationView) -> PreorderReport {
    let n = view.len();
    let mut report = PreorderReport {
        reflexive: true,
        transitive: true,
        reflexivity_counterexample: None,
        transitivity_counterexample: None,
    };
    for a in 0..n {
        if !view.holds(a, a) {
            report.reflexive = false;
            report.reflexivity_counterexample = Some(a);
            break;
        }
    }
    'outer: for a in 0..n {
        for b in 0..n {
            if !view.holds(a, b) {
                continue;
            }
            for c in 0..n {
                if view.holds(b, c) && !view.holds(a, c) {
                    report.transitive = false;
                    report.transitivity_counterexample = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    report
}

pub fn verify_preorder<A: AlgebraOps + ?Sized>(spec: &PreorderSpec, alg: &A) -> PreorderReport {
    verify_preorder_view(&RelationView::build(spec, alg))
}

pub fn strictly_less<A: AlgebraOps + ?Sized>(
    spec: &PreorderSpec,
    alg: &A,
    a: usize,
    b: usize,
) -> bool {
    holds(spec, alg, a, b) && !holds(spec, alg, b, a)
}

pub fn covers<A: AlgebraOps + ?Sized>(spec: &PreorderSpec, alg: &A, a: usize, c: usize) -> bool {
    RelationView::build(spec, alg).covers(a, c)
}

/// First antisymmetry violation (a != b with a <= b <= a), if any.
pub fn antisymmetry_counterexample(view: &RelationView) -> Option<(usize, usize)> {
    let n = view.len();
    for a in 0..n {
        for b in 0..n {
            if a != b && view.holds(a, b) && view.holds(b, a) {
                return Some((a, b));
            }
        }
    }
    None
}

/// A cover of `a` inside the interval (a, b]: the least canonical element c
/// with a < c <= b and nothing strictly between a and c.
///
/// Requires a < b. On a verified pre-order a cover always exists (finite
/// carriers have no infinite descending strict chains); if the relation is
/// not transitive on this carrier the search can come up empty, which is
/// reported as an error rather than a panic.
pub fn find_cover_in_interval_view(view: &RelationView, a: usize, b: usize) -> Result<usize> {
    if !view.strictly_less(a, b) {
        return Err(Error::Precondition(format!(
            "find_cover_in_interval needs a < b, got ({a}, {b})"
        )));
    }
    for c in 0..view.len() {
        if view.strictly_less(a, c) && view.holds(c, b) && view.covers(a, c) {
            return Ok(c);
        }
    }
    Err(Error::NoCoverInInterval { lower: a, upper: b })
}

pub fn find_cover_in_interval<A: AlgebraOps + ?Sized>(
    spec: &PreorderSpec,
    alg: &A,
    a: usize,
    b: usize,
) -> Result<usize> {
    find_cover_in_interval_view(&RelationView::build(spec, alg), a, b)
}

/// Exhaustive atomicity check: every strict pair's interval contains a cover
/// of its smaller end.
#[derive(Debug, Clone)]
pub struct AtomicityReport {
    pub atomic: bool,
    /// Interval (a, b) with no cover of a inside (a, b], if not atomic.
    pub counterexample: Option<(usize, usize)>,
}

pub fn is_atomic_view(view: &RelationView) -> AtomicityReport {
    let n = view.len();
    for a in 0..n {
        for b in 0..n {
            if !view.strictly_less(a, b) {
                continue;
            }
            let has_cover =
                (0..n).any(|c| view.strictly_less(a, c) && view.holds(c, b) && view.covers(a, c));
            if !has_cover {
                return AtomicityReport {
                    atomic: false,
                    counterexample: Some((a, b)),
                };
            }
        }
    }
    AtomicityReport {
        atomic: true,
        counterexample: None,
    }
}

pub fn is_atomic<A: AlgebraOps + ?Sized>(spec: &PreorderSpec, alg: &A) -> AtomicityReport {
    is_atomic_view(&RelationView::build(spec, alg))
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    /// Random pre-order: reflexive-transitive closure of a random relation.
    fn random_preorder(n: usize, edges: &[(usize, usize)]) -> RelationView {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        for &(a, b) in edges {
            bits[(a % n) * n + (b % n)] = true;
        }
        // Floyd-Warshall style transitive closure
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if bits[a * n + k] && bits[k * n + b] {
                        bits[a * n + b] = true;
                    }
                }
            }
        }
        RelationView::from_fn(n, |a, b| bits[a * n + b])
    }

    proptest! {
        #[test]
        fn every_finite_preorder_is_atomic(
            n in 1usize..7,
            edges in proptest::collection::vec((0usize..7, 0usize..7), 0..20)
        ) {
            let view = random_preorder(n, &edges);
            prop_assert!(verify_preorder_view(&view).is_preorder());
            prop_assert!(is_atomic_view(&view).atomic);
        }

        #[test]
        fn covers_implies_strictly_less(
            n in 1usize..7,
            edges in proptest::collection::vec((0usize..7, 0usize..7), 0..20)
        ) {
            let view = random_preorder(n, &edges);
            for a in 0..n {
                for c in 0..n {
                    if view.covers(a, c) {
                        prop_assert!(view.strictly_less(a, c));
                    }
                }
            }
        }

        #[test]
        fn interval_cover_contract(
            n in 2usize..7,
            edges in proptest::collection::vec((0usize..7, 0usize..7), 0..20)
        ) {
            let view = random_preorder(n, &edges);
            for a in 0..n {
                for b in 0..n {
                    if view.strictly_less(a, b) {
                        let c = find_cover_in_interval_view(&view, a, b).unwrap();
                        prop_assert!(view.covers(a, c));
                        prop_assert!(view.holds(c, b));
                    }
                }
            }
        }
    }
}
