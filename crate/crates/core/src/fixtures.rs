//! The bundled fixture corpus.
//!
//! * `b2` — the 2-element Boolean algebra with a derived switching term.
//! * `d3` — a 3-element algebra with a basic 4-ary switching operation and
//!   constants 0, 1, 2.
//! * `d3min` — `d3` plus binary min, supporting the linear order and the
//!   collapsed (non-antisymmetric) pre-order.
//! * `s2` — 2 elements, switching operation only; it has one-element
//!   subalgebras and no constants, which exercises the compiler's
//!   degenerate escape.
//!
//! The same algebras ship as files under `fixtures/` at the repository
//! root; a test keeps the two in sync.

use crate::algebra::{FiniteAlgebra, VarietyPresentation};
use crate::cover::boolean_natural_order;
use crate::preorder::PreorderSpec;
use crate::signature::{Signature, VariableSet};
use crate::term::{parse_term, Term};

fn switching_table(n: usize) -> Vec<usize> {
    let mut table = Vec::with_capacity(n.pow(4));
    for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for v in 0..n {
                    table.push(if x == y { u } else { v });
                }
            }
        }
    }
    table
}

fn min_table(n: usize) -> Vec<usize> {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(a.min(b));
        }
    }
    table
}

/// The 2-element Boolean algebra: and, or, not, zero, one.
pub fn b2() -> FiniteAlgebra {
    let sig = Signature::new(vec![
        ("and", 2),
        ("or", 2),
        ("not", 1),
        ("zero", 0),
        ("one", 0),
    ])
    .unwrap();
    FiniteAlgebra::new(
        "b2",
        sig,
        2,
        vec![vec![0, 0, 0, 1], vec![0, 1, 1, 1], vec![1, 0], vec![0], vec![1]],
    )
}

/// The switching term derived from the Boolean operations:
/// sigma(x,y,u,v) = (u and e) or (v and not e) with e = (x and y) or (not x and not y).
pub const B2_SWITCH_TEXT: &str = "(or (and u (or (and x y) (and (not x) (not y)))) \
                                  (and v (not (or (and x y) (and (not x) (not y))))))";

pub fn b2_switch() -> (FiniteAlgebra, Term, VariableSet) {
    let alg = b2();
    let vars = VariableSet::switch_vars(alg.signature()).unwrap();
    let term = parse_term(B2_SWITCH_TEXT, alg.signature(), &vars).unwrap();
    (alg, term, vars)
}

pub fn b2_presentation() -> VarietyPresentation {
    let (alg, switch, vars) = b2_switch();
    VarietyPresentation::new(vec![alg], switch, vars).unwrap()
}

/// Constant-free Boolean reduct (and, or, not), same switching term.
pub fn b2_noconst() -> FiniteAlgebra {
    let sig = Signature::new(vec![("and", 2), ("or", 2), ("not", 1)]).unwrap();
    FiniteAlgebra::new(
        "b2_noconst",
        sig,
        2,
        vec![vec![0, 0, 0, 1], vec![0, 1, 1, 1], vec![1, 0]],
    )
}

pub fn b2_noconst_presentation() -> VarietyPresentation {
    let alg = b2_noconst();
    let vars = VariableSet::switch_vars(alg.signature()).unwrap();
    let term = parse_term(B2_SWITCH_TEXT, alg.signature(), &vars).unwrap();
    VarietyPresentation::new(vec![alg], term, vars).unwrap()
}

/// 3-element algebra with the switching operation as a basic 4-ary symbol
/// and all three constants.
pub fn d3() -> FiniteAlgebra {
    let sig = Signature::new(vec![("s", 4), ("c0", 0), ("c1", 0), ("c2", 0)]).unwrap();
    FiniteAlgebra::new(
        "d3",
        sig,
        3,
        vec![switching_table(3), vec![0], vec![1], vec![2]],
    )
}

pub fn d3_switch() -> (FiniteAlgebra, Term, VariableSet) {
    let alg = d3();
    let vars = VariableSet::switch_vars(alg.signature()).unwrap();
    let term = parse_term("(s x y u v)", alg.signature(), &vars).unwrap();
    (alg, term, vars)
}

pub fn d3_presentation() -> VarietyPresentation {
    let (alg, switch, vars) = d3_switch();
    VarietyPresentation::new(vec![alg], switch, vars).unwrap()
}

/// `d3` extended with binary min.
pub fn d3min() -> FiniteAlgebra {
    let sig = Signature::new(vec![
        ("s", 4),
        ("min", 2),
        ("c0", 0),
        ("c1", 0),
        ("c2", 0),
    ])
    .unwrap();
    FiniteAlgebra::new(
        "d3min",
        sig,
        3,
        vec![switching_table(3), min_table(3), vec![0], vec![1], vec![2]],
    )
}

pub fn d3min_switch() -> (FiniteAlgebra, Term, VariableSet) {
    let alg = d3min();
    let vars = VariableSet::switch_vars(alg.signature()).unwrap();
    let term = parse_term("(s x y u v)", alg.signature(), &vars).unwrap();
    (alg, term, vars)
}

pub fn d3min_presentation() -> VarietyPresentation {
    let (alg, switch, vars) = d3min_switch();
    VarietyPresentation::new(vec![alg], switch, vars).unwrap()
}

/// 2-element algebra whose only operation is the 4-ary switching table.
pub fn s2() -> FiniteAlgebra {
    let sig = Signature::new(vec![("s", 4)]).unwrap();
    FiniteAlgebra::new("s2", sig, 2, vec![switching_table(2)])
}

pub fn s2_switch() -> (FiniteAlgebra, Term, VariableSet) {
    let alg = s2();
    let vars = VariableSet::switch_vars(alg.signature()).unwrap();
    let term = parse_term("(s x y u v)", alg.signature(), &vars).unwrap();
    (alg, term, vars)
}

pub fn s2_presentation() -> VarietyPresentation {
    let (alg, switch, vars) = s2_switch();
    VarietyPresentation::new(vec![alg], switch, vars).unwrap()
}

/// The Boolean natural order x <= y iff x and y = x, over b2's signature.
pub fn bool_order_spec() -> PreorderSpec {
    boolean_natural_order(b2().signature(), "and").unwrap()
}

/// Same, over an arbitrary signature carrying a binary `and`.
pub fn bool_order_spec_for(sig: &Signature) -> PreorderSpec {
    boolean_natural_order(sig, "and").unwrap()
}

/// The linear order 0 < 1 < 2 on d3min: x <= y iff min(x, y) = x.
pub fn d3min_linear_spec() -> PreorderSpec {
    let sig = d3min().signature().clone();
    PreorderSpec::parse("(min x y)", "x", &sig).unwrap()
}

/// The collapsed pre-order on d3min: x ≼ y iff min(cap x, cap y) = cap x
/// with cap z = min(z, 1); it identifies 1 and 2, so it is not antisymmetric.
pub fn d3min_collapsed_spec() -> PreorderSpec {
    let sig = d3min().signature().clone();
    PreorderSpec::parse("(min (min x c1) (min y c1))", "(min x c1)", &sig).unwrap()
}

/// The discrete pre-order: x <= y iff x = y.
pub fn equality_spec(sig: &Signature) -> PreorderSpec {
    PreorderSpec::parse("x", "y", sig).unwrap()
}

/// The 4-element Boolean algebra (bitmask sets over two atoms); not simple,
/// used by the congruence-oracle tests.
pub fn boolean4() -> FiniteAlgebra {
    let sig = Signature::new(vec![
        ("and", 2),
        ("or", 2),
        ("not", 1),
        ("zero", 0),
        ("one", 0),
    ])
    .unwrap();
    let n = 4usize;
    let mut and = Vec::new();
    let mut or = Vec::new();
    for a in 0..n {
        for b in 0..n {
            and.push(a & b);
            or.push(a | b);
        }
    }
    let not = (0..n).map(|a| a ^ 3).collect();
    FiniteAlgebra::new("boolean4", sig, 4, vec![and, or, not, vec![0], vec![3]])
}
