//! Materialization of the finitely generated free algebra of the variety as
//! vectors of values over all coordinate evaluations, with shortest witness
//! terms.
//!
//! The free algebra on m generators is realized inside the direct product of
//! all generator algebras raised to all assignments of the generators: one
//! coordinate per (generator algebra, assignment) pair, in generator-major,
//! assignment-lexicographic order. Two terms name the same free element
//! exactly when their value vectors agree, which reduces every identity and
//! pre-order question on the free algebra to coordinatewise table lookups.

use std::collections::HashMap;

use crate::algebra::{Assignment, Homomorphism, SubAlgebra, VarietyPresentation};
use crate::error::{Error, Result};
use crate::signature::VariableSet;
use crate::term::{evaluate, AlgebraOps, Term};

/// One coordinate of the product: a generator algebra and an assignment of
/// the free generators into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinate {
    pub generator: usize,
    pub assignment: Assignment,
}

/// All coordinates, in canonical (generator-major, lexicographic) order.
pub fn coordinate_system(vp: &VarietyPresentation, m: usize) -> Vec<Coordinate> {
    let mut coords = Vec::new();
    for (gi, g) in vp.generators().iter().enumerate() {
        let n = g.size();
        let total = n.pow(m as u32);
        for mut row in 0..total {
            let mut asg = vec![0usize; m];
            for i in (0..m).rev() {
                asg[i] = row % n;
                row /= n;
            }
            coords.push(Coordinate {
                generator: gi,
                assignment: asg,
            });
        }
    }
    coords
}

/// The canonical position of `(generator, assignment)` in the coordinate
/// system built by [`coordinate_system`].
pub fn coordinate_index(vp: &VarietyPresentation, m: usize, generator: usize, asg: &[usize]) -> usize {
    let mut offset = 0;
    for g in vp.generators().iter().take(generator) {
        offset += g.size().pow(m as u32);
    }
    let n = vp.generator(generator).size();
    let mut row = 0;
    for &a in asg {
        row = row * n + a;
    }
    offset + row
}

/// An element of the materialized free algebra: its value at every
/// coordinate plus a shortest term evaluating to that vector.
#[derive(Debug, Clone)]
pub struct FreeElement {
    pub values: Vec<u8>,
    pub witness: Term,
    pub witness_size: usize,
}

/// Shortest-witness closure over an arbitrary coordinate list. Elements are
/// discovered in layers of increasing witness node count; within a layer,
/// candidates are tried variable-first, then by signature order of the head
/// symbol, then by the operand tuple in canonical element order, so the
/// result is schedule-independent.
pub(crate) struct WitnessClosure {
    pub values: Vec<Vec<u8>>,
    pub witnesses: Vec<Term>,
    pub sizes: Vec<usize>,
    pub index: HashMap<Box<[u8]>, usize>,
    /// (witness size, number of elements first reached at that size)
    pub layers: Vec<(usize, usize)>,
}

impl WitnessClosure {
    fn insert(&mut self, value: Vec<u8>, witness: Term, size: usize, cap: usize) -> Result<bool> {
        if self.index.contains_key(value.as_slice()) {
            return Ok(false);
        }
        if self.values.len() == cap {
            return Err(Error::CapExceeded {
                what: "free algebra elements",
                cap,
                reached: self.values.len() + 1,
            });
        }
        let id = self.values.len();
        self.index.insert(value.clone().into_boxed_slice(), id);
        self.values.push(value);
        self.witnesses.push(witness);
        self.sizes.push(size);
        match self.layers.last_mut() {
            Some((s, count)) if *s == size => *count += 1,
            _ => self.layers.push((size, 1)),
        }
        Ok(true)
    }
}

fn eval_app_into(
    vp: &VarietyPresentation,
    coords: &[Coordinate],
    values: &[Vec<u8>],
    sym: usize,
    args: &[usize],
    point: &mut Vec<usize>,
    out: &mut Vec<u8>,
) {
    point.clear();
    point.resize(args.len(), 0);
    out.clear();
    for (ci, coord) in coords.iter().enumerate() {
        for (p, &a) in point.iter_mut().zip(args.iter()) {
            *p = values[a][ci] as usize;
        }
        out.push(vp.generator(coord.generator).apply(sym, point) as u8);
    }
}

/// Enumerate, in lexicographic element-id order, all `k`-tuples of existing
/// elements whose witness sizes sum to exactly `budget`.
fn for_each_sized_tuple<F: FnMut(&[usize])>(sizes: &[usize], k: usize, budget: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(
        sizes: &[usize],
        tuple: &mut Vec<usize>,
        k: usize,
        budget: usize,
        f: &mut F,
    ) {
        if tuple.len() == k {
            if budget == 0 {
                f(tuple);
            }
            return;
        }
        let remaining_slots = k - tuple.len() - 1;
        for (id, &sz) in sizes.iter().enumerate() {
            if sz + remaining_slots <= budget {
                tuple.push(id);
                rec(sizes, tuple, k, budget - sz, f);
                tuple.pop();
            }
        }
    }
    let mut tuple = Vec::with_capacity(k);
    rec(sizes, &mut tuple, k, budget, f);
}

pub(crate) fn witness_closure(
    vp: &VarietyPresentation,
    m: usize,
    coords: &[Coordinate],
    cap: usize,
) -> Result<WitnessClosure> {
    let sig = vp.signature();
    let mut wc = WitnessClosure {
        values: Vec::new(),
        witnesses: Vec::new(),
        sizes: Vec::new(),
        index: HashMap::new(),
        layers: Vec::new(),
    };
    // size 1: the generators first (so generator i's witness is variable i),
    // then the constant symbols in signature order
    for var in 0..m {
        let value: Vec<u8> = coords.iter().map(|c| c.assignment[var] as u8).collect();
        wc.insert(value, Term::Var(var), 1, cap)?;
    }
    for sym in sig.constants() {
        let value: Vec<u8> = coords
            .iter()
            .map(|c| vp.generator(c.generator).constant_value(sym) as u8)
            .collect();
        wc.insert(value, Term::constant(sym), 1, cap)?;
    }
    let max_arity = sig.max_arity();
    let mut size = 2usize;
    loop {
        let max_known = wc.sizes.iter().copied().max().unwrap_or(0);
        if max_arity == 0 || size > 1 + max_arity * max_known {
            break;
        }
        for sym in 0..sig.len() {
            let k = sig.arity(sym);
            if k == 0 {
                continue;
            }
            // snapshot: same-size elements cannot feed a tuple whose child
            // sizes sum to size-1, so staging per symbol is safe
            let snapshot_sizes = wc.sizes.clone();
            let mut staged: Vec<(Vec<u8>, Term)> = Vec::new();
            let mut staged_index: HashMap<Box<[u8]>, ()> = HashMap::new();
            let mut point: Vec<usize> = Vec::new();
            let mut value: Vec<u8> = Vec::new();
            for_each_sized_tuple(&snapshot_sizes, k, size - 1, &mut |tuple| {
                eval_app_into(vp, coords, &wc.values, sym, tuple, &mut point, &mut value);
                if wc.index.contains_key(value.as_slice())
                    || staged_index.contains_key(value.as_slice())
                {
                    return;
                }
                let witness = Term::App(
                    sym,
                    tuple.iter().map(|&id| wc.witnesses[id].clone()).collect(),
                );
                staged_index.insert(value.clone().into_boxed_slice(), ());
                staged.push((value.clone(), witness));
            });
            for (value, witness) in staged {
                wc.insert(value, witness, size, cap)?;
            }
        }
        size += 1;
    }
    Ok(wc)
}

/// The materialized free algebra on `m` generators.
#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    presentation: VarietyPresentation,
    variables: VariableSet,
    coords: Vec<Coordinate>,
    elements: Vec<FreeElement>,
    index: HashMap<Box<[u8]>, usize>,
    layers: Vec<(usize, usize)>,
}

/// Close the `m` generator vectors under all pointwise operations, assigning
/// every element a breadth-first-shortest witness term. Fails once more than
/// `cap` elements appear, reporting the partial size reached.
pub fn build_free_algebra(vp: &VarietyPresentation, m: usize, cap: usize) -> Result<FreeAlgebra> {
    if m == 0 {
        return Err(Error::Precondition("need at least one generator".into()));
    }
    for g in vp.generators() {
        if g.size() > 255 {
            return Err(Error::Precondition(format!(
                "generator `{}` has more than 255 elements",
                g.name()
            )));
        }
    }
    let variables = VariableSet::generators(m, vp.signature())?;
    let coords = coordinate_system(vp, m);
    let wc = witness_closure(vp, m, &coords, cap)?;
    let elements = wc
        .values
        .into_iter()
        .zip(wc.witnesses)
        .zip(wc.sizes)
        .map(|((values, witness), witness_size)| FreeElement {
            values,
            witness,
            witness_size,
        })
        .collect();
    Ok(FreeAlgebra {
        presentation: vp.clone(),
        variables,
        coords,
        elements,
        index: wc.index,
        layers: wc.layers,
    })
}

impl FreeAlgebra {
    pub fn presentation(&self) -> &VarietyPresentation {
        &self.presentation
    }

    pub fn signature(&self) -> &crate::signature::Signature {
        self.presentation.signature()
    }

    pub fn variables(&self) -> &VariableSet {
        &self.variables
    }

    pub fn generator_count(&self) -> usize {
        self.variables.len()
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &FreeElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[FreeElement] {
        &self.elements
    }

    pub fn witness(&self, i: usize) -> &Term {
        &self.elements[i].witness
    }

    /// (witness size, count) pairs in discovery order.
    pub fn layers(&self) -> &[(usize, usize)] {
        &self.layers
    }

    pub fn find_value(&self, values: &[u8]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// The free element named by `t`: pointwise evaluation at every
    /// coordinate. Every term over the free generators lands on an element.
    pub fn element_of_term(&self, t: &Term) -> Result<usize> {
        let mut values = Vec::with_capacity(self.coords.len());
        for coord in &self.coords {
            let v = evaluate(t, self.presentation.generator(coord.generator), &coord.assignment)?;
            values.push(v as u8);
        }
        Ok(*self
            .index
            .get(values.as_slice())
            .expect("closure invariant: term value escaped the element set"))
    }

    /// Coordinates at which the two elements differ.
    pub fn separating_coordinates(&self, a: usize, b: usize) -> Vec<usize> {
        self.elements[a]
            .values
            .iter()
            .zip(self.elements[b].values.iter())
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(i, _)| i)
            .collect()
    }

    /// Check that the element set is closed under every pointwise operation
    /// (the closure fixed point really is a fixed point).
    pub fn verify_closed(&self) -> bool {
        let sig = self.presentation.signature();
        let ids: Vec<usize> = (0..self.elements.len()).collect();
        let values: Vec<Vec<u8>> = self.elements.iter().map(|e| e.values.clone()).collect();
        let mut point: Vec<usize> = Vec::new();
        let mut value: Vec<u8> = Vec::new();
        for sym in 0..sig.len() {
            let k = sig.arity(sym);
            let mut ok = true;
            crate::algebra::for_each_tuple(&ids, k, |tuple| {
                if !ok {
                    return;
                }
                eval_app_into(&self.presentation, &self.coords, &values, sym, tuple, &mut point, &mut value);
                if !self.index.contains_key(value.as_slice()) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

impl AlgebraOps for FreeAlgebra {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn signature(&self) -> &crate::signature::Signature {
        self.presentation.signature()
    }

    fn apply(&self, sym: usize, args: &[usize]) -> usize {
        let mut out = Vec::with_capacity(self.coords.len());
        let mut point = vec![0usize; args.len()];
        for (ci, coord) in self.coords.iter().enumerate() {
            for (p, &a) in point.iter_mut().zip(args.iter()) {
                *p = self.elements[a].values[ci] as usize;
            }
            out.push(self.presentation.generator(coord.generator).apply(sym, &point) as u8);
        }
        *self
            .index
            .get(out.as_slice())
            .expect("closure invariant: pointwise application escaped the element set")
    }
}

/// Report from the exhaustive identity oracle.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub valid: bool,
    /// (generator index, assignment, lhs value, rhs value) of the first failure.
    pub counterexample: Option<(usize, Assignment, usize, usize)>,
}

/// Does `lhs ≈ rhs` hold in the variety? Exhaustive over all assignments of
/// the shared variable set into every generator — by freeness this agrees
/// with equality of the corresponding free elements.
pub fn validate_identity(
    vp: &VarietyPresentation,
    vars: &VariableSet,
    lhs: &Term,
    rhs: &Term,
) -> Result<IdentityReport> {
    for (gi, g) in vp.generators().iter().enumerate() {
        let n = g.size();
        let total = n.pow(vars.len() as u32);
        for mut row in 0..total {
            let mut asg = vec![0usize; vars.len()];
            for i in (0..vars.len()).rev() {
                asg[i] = row % n;
                row /= n;
            }
            let l = evaluate(lhs, g, &asg)?;
            let r = evaluate(rhs, g, &asg)?;
            if l != r {
                return Ok(IdentityReport {
                    valid: false,
                    counterexample: Some((gi, asg, l, r)),
                });
            }
        }
    }
    Ok(IdentityReport {
        valid: true,
        counterexample: None,
    })
}

/// The homomorphism from the free algebra induced by assigning the free
/// generators into a subalgebra of one of the generators. By freeness this
/// is exactly evaluation of witness terms, and it agrees with the coordinate
/// projection at `(target.generator, assignment)`; both routes are checked,
/// along with exhaustive commutation.
pub fn induced_hom(
    fa: &FreeAlgebra,
    target: &SubAlgebra,
    asg: &Assignment,
) -> Result<Homomorphism> {
    let m = fa.generator_count();
    if asg.len() != m {
        return Err(Error::Precondition(format!(
            "assignment covers {} variables, need {m}",
            asg.len()
        )));
    }
    for &v in asg {
        if v >= target.size() {
            return Err(Error::AssignmentOutOfRange { value: v });
        }
    }
    let parent_asg: Assignment = asg.iter().map(|&l| target.parent_elem(l)).collect();
    let coord = coordinate_index(fa.presentation(), m, target.generator, &parent_asg);
    let mut map = Vec::with_capacity(fa.len());
    for (i, e) in fa.elements().iter().enumerate() {
        let parent_value = e.values[coord] as usize;
        let local = target.local(parent_value).ok_or_else(|| {
            Error::Precondition(format!(
                "coordinate value {parent_value} escapes the target carrier"
            ))
        })?;
        let by_witness = evaluate(&e.witness, &target.algebra, asg)?;
        if by_witness != local {
            return Err(Error::Precondition(format!(
                "induced map is not well-defined at element {i}"
            )));
        }
        map.push(local);
    }
    Homomorphism::new(fa, &target.algebra, map)
}
