//! Finite algebras as total operation tables, subalgebra closure, the
//! congruence oracle, switching-term verification, and homomorphisms.

use crate::error::{Error, Result};
use crate::signature::{Signature, VariableSet};
use crate::term::{evaluate, AlgebraOps, Term};

/// An assignment of variables to elements, indexed by variable position.
pub type Assignment = Vec<usize>;

/// A finite algebra: carrier `{0..n-1}` plus one total operation table per
/// signature symbol, row-major over argument tuples in lexicographic order.
///
/// Construction does not validate; run [`validate_algebra`] (or build a
/// [`VarietyPresentation`], which insists on it) before trusting `apply`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    sig: Signature,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Self {
        FiniteAlgebra {
            name: name.into(),
            size,
            sig,
            tables,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// Interpretation of an arity-0 symbol.
    pub fn constant_value(&self, sym: usize) -> usize {
        debug_assert_eq!(self.sig.arity(sym), 0);
        self.tables[sym][0]
    }

    fn row_index(&self, args: &[usize]) -> usize {
        let mut idx = 0;
        for &a in args {
            debug_assert!(a < self.size);
            idx = idx * self.size + a;
        }
        idx
    }
}

impl AlgebraOps for FiniteAlgebra {
    fn size(&self) -> usize {
        self.size
    }

    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn apply(&self, sym: usize, args: &[usize]) -> usize {
        self.tables[sym][self.row_index(args)]
    }
}

/// Enumerate all `k`-tuples over `items` in lexicographic order (first
/// position most significant), calling `f` on each.
pub(crate) fn for_each_tuple<F: FnMut(&[usize])>(items: &[usize], k: usize, mut f: F) {
    if k == 0 {
        f(&[]);
        return;
    }
    if items.is_empty() {
        return;
    }
    let mut idx = vec![0usize; k];
    let mut tuple = vec![items[0]; k];
    'outer: loop {
        for (t, &i) in tuple.iter_mut().zip(idx.iter()) {
            *t = items[i];
        }
        f(&tuple);
        let mut p = k;
        while p > 0 {
            p -= 1;
            idx[p] += 1;
            if idx[p] < items.len() {
                continue 'outer;
            }
            idx[p] = 0;
        }
        return;
    }
}

/// Outcome of checking an algebra's tables for totality and range.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub algebra: String,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra {
                name: self.algebra,
                violations: self.violations,
            })
        }
    }
}

/// Check table totality (exactly n^arity entries per symbol) and range
/// (every entry < n). All violations are listed, none thrown.
pub fn validate_algebra(alg: &FiniteAlgebra) -> ValidationReport {
    let mut violations = Vec::new();
    if alg.size == 0 {
        violations.push("carrier is empty".to_string());
    }
    let sig = alg.signature();
    if alg.tables.len() != sig.len() {
        violations.push(format!(
            "expected {} operation tables, found {}",
            sig.len(),
            alg.tables.len()
        ));
    }
    for (sym, table) in alg.tables.iter().enumerate().take(sig.len()) {
        let expected = alg.size.pow(sig.arity(sym) as u32);
        if table.len() != expected {
            violations.push(format!(
                "table for `{}` has {} entries, expected {}",
                sig.name(sym),
                table.len(),
                expected
            ));
        }
        for (row, &v) in table.iter().enumerate() {
            if v >= alg.size {
                violations.push(format!(
                    "table for `{}`, row {}: value {} out of range (size {})",
                    sig.name(sym),
                    row,
                    v,
                    alg.size
                ));
            }
        }
    }
    ValidationReport {
        algebra: alg.name.clone(),
        violations,
    }
}

/// Result of the exhaustive n^4 switching-term check.
#[derive(Debug, Clone)]
pub struct SwitchingReport {
    pub ok: bool,
    /// First failing tuple (x,y,u,v) with the value obtained and expected.
    pub counterexample: Option<([usize; 4], usize, usize)>,
}

/// Check that `switch` is the switching operation on `alg`:
/// switch(x,y,u,v) = u when x = y and = v when x != y, over all n^4 tuples.
pub fn verify_switching_term(
    alg: &FiniteAlgebra,
    switch: &Term,
    switch_vars: &VariableSet,
) -> Result<SwitchingReport> {
    if switch_vars.len() != 4 {
        return Err(Error::BadSwitchTerm {
            got: switch_vars.len(),
        });
    }
    let n = alg.size;
    for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let got = evaluate(switch, alg, &[x, y, u, v])?;
                    let expected = if x == y { u } else { v };
                    if got != expected {
                        return Ok(SwitchingReport {
                            ok: false,
                            counterexample: Some(([x, y, u, v], got, expected)),
                        });
                    }
                }
            }
        }
    }
    Ok(SwitchingReport {
        ok: true,
        counterexample: None,
    })
}

/// Least subuniverse of `alg` containing `seed`: fixed-point closure under
/// all operations (constants always enter). Result is sorted.
pub fn subalgebra_closure(alg: &FiniteAlgebra, seed: &[usize]) -> Vec<usize> {
    let n = alg.size;
    let mut member = vec![false; n];
    for &s in seed {
        member[s] = true;
    }
    loop {
        let current: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
        let mut grew = false;
        for sym in 0..alg.signature().len() {
            let k = alg.signature().arity(sym);
            for_each_tuple(&current, k, |tuple| {
                let v = alg.apply(sym, tuple);
                if !member[v] {
                    member[v] = true;
                    grew = true;
                }
            });
        }
        if !grew {
            return current;
        }
    }
}

/// All subuniverses of `alg` (nonempty closed subsets), canonically sorted
/// by (size, elements). Exact enumeration by closing every subset; algebras
/// larger than `cap` are rejected.
pub fn all_subalgebras(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = alg.size;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "subalgebra enumeration size",
            cap,
            reached: n,
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let seed: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = subalgebra_closure(alg, &seed);
        if !closed.is_empty() {
            seen.insert(closed);
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    /// Canonical partition vector: element -> least element of its class.
    fn canonical(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut out = vec![0; n];
        let mut least = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if least[r] == usize::MAX {
                least[r] = i;
            }
            out[i] = least[r];
        }
        out
    }
}

fn seed_union_find(n: usize, partition: &[usize]) -> UnionFind {
    let mut uf = UnionFind::new(n);
    for (i, &rep) in partition.iter().enumerate() {
        uf.union(i, rep);
    }
    uf
}

/// Congruence generated by identifying `a` and `b`: close under all unary
/// polynomial translations of the basic operations.
fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Vec<usize> {
    let n = alg.size;
    let carrier: Vec<usize> = (0..n).collect();
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((u, v)) = queue.pop() {
        for sym in 0..alg.signature().len() {
            let k = alg.signature().arity(sym);
            if k == 0 {
                continue;
            }
            for pos in 0..k {
                for_each_tuple(&carrier, k - 1, |ctx| {
                    let mut args = Vec::with_capacity(k);
                    args.extend_from_slice(&ctx[..pos]);
                    args.push(u);
                    args.extend_from_slice(&ctx[pos..]);
                    let fu = alg.apply(sym, &args);
                    args[pos] = v;
                    let fv = alg.apply(sym, &args);
                    if uf.union(fu, fv) {
                        queue.push((fu, fv));
                    }
                });
            }
        }
    }
    uf.canonical()
}

/// All congruences of `alg` as canonical partition vectors
/// (element -> least element of its class), sorted lexicographically.
///
/// Generated from the principal congruences closed under join; algebras
/// larger than `cap` are rejected.
pub fn enumerate_congruences(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = alg.size;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "congruence oracle size",
            cap,
            reached: n,
        });
    }
    let mut set = std::collections::BTreeSet::new();
    set.insert((0..n).collect::<Vec<usize>>());
    for a in 0..n {
        for b in a + 1..n {
            set.insert(principal_congruence(alg, a, b));
        }
    }
    // Join closure: the join of two congruences is the partition generated
    // by both (transitive closure of the union).
    loop {
        let current: Vec<Vec<usize>> = set.iter().cloned().collect();
        let before = set.len();
        for p in &current {
            for q in &current {
                let mut uf = seed_union_find(n, p);
                for (i, &rep) in q.iter().enumerate() {
                    uf.union(i, rep);
                }
                set.insert(uf.canonical());
            }
        }
        if set.len() == before {
            break;
        }
    }
    Ok(set.into_iter().collect())
}

/// A map between algebra carriers that commutes with every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    /// Value map, indexed by source element.
    pub map: Vec<usize>,
}

/// First operation application on which `map` fails to commute.
#[derive(Debug, Clone)]
pub struct HomViolation {
    pub sym: usize,
    pub args: Vec<usize>,
}

/// Exhaustively check that `map` commutes with every table entry.
pub fn verify_homomorphism<S, T>(
    source: &S,
    target: &T,
    map: &[usize],
) -> std::result::Result<(), HomViolation>
where
    S: AlgebraOps + ?Sized,
    T: AlgebraOps + ?Sized,
{
    let carrier: Vec<usize> = (0..source.size()).collect();
    let sig = source.signature();
    for sym in 0..sig.len() {
        let k = sig.arity(sym);
        let mut violation = None;
        for_each_tuple(&carrier, k, |tuple| {
            if violation.is_some() {
                return;
            }
            let src = source.apply(sym, tuple);
            let mapped: Vec<usize> = tuple.iter().map(|&a| map[a]).collect();
            let tgt = target.apply(sym, &mapped);
            if map[src] != tgt {
                violation = Some(HomViolation {
                    sym,
                    args: tuple.to_vec(),
                });
            }
        });
        if let Some(v) = violation {
            return Err(v);
        }
    }
    Ok(())
}

impl Homomorphism {
    /// Build a homomorphism, exhaustively verifying commutation.
    pub fn new<S, T>(source: &S, target: &T, map: Vec<usize>) -> Result<Self>
    where
        S: AlgebraOps + ?Sized,
        T: AlgebraOps + ?Sized,
    {
        match verify_homomorphism(source, target, &map) {
            Ok(()) => Ok(Homomorphism { map }),
            Err(v) => Err(Error::Precondition(format!(
                "map does not commute with `{}` at {:?}",
                source.signature().name(v.sym),
                v.args
            ))),
        }
    }

    /// Build without the exhaustive check. For maps that commute by
    /// construction (coordinate projections of a closed product carrier).
    pub fn from_map_unchecked(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn is_surjective_onto(&self, target_size: usize) -> bool {
        let mut hit = vec![false; target_size];
        for &v in &self.map {
            if v < target_size {
                hit[v] = true;
            }
        }
        hit.iter().all(|&h| h)
    }
}

/// A subuniverse of a parent algebra, re-indexed as a standalone algebra.
/// `carrier` holds the parent element indices, sorted ascending; local
/// element `i` is `carrier[i]`.
#[derive(Debug, Clone)]
pub struct SubAlgebra {
    /// Index of the parent algebra in its presentation's generator list.
    pub generator: usize,
    pub carrier: Vec<usize>,
    pub algebra: FiniteAlgebra,
}

impl SubAlgebra {
    pub fn local(&self, parent_elem: usize) -> Option<usize> {
        self.carrier.binary_search(&parent_elem).ok()
    }

    pub fn parent_elem(&self, local: usize) -> usize {
        self.carrier[local]
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }
}

/// Re-index the closed subset `carrier` of `alg` as a standalone algebra.
pub fn restrict_to_subuniverse(
    alg: &FiniteAlgebra,
    generator: usize,
    carrier: &[usize],
) -> Result<SubAlgebra> {
    let mut carrier = carrier.to_vec();
    carrier.sort_unstable();
    carrier.dedup();
    let local = |v: usize| -> Result<usize> {
        carrier
            .binary_search(&v)
            .map_err(|_| Error::Precondition(format!("{v} escapes the subuniverse: not closed")))
    };
    let sig = alg.signature().clone();
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let k = sig.arity(sym);
        let mut table = Vec::with_capacity(carrier.len().pow(k as u32));
        let mut err = None;
        for_each_tuple(&carrier, k, |tuple| {
            if err.is_some() {
                return;
            }
            match local(alg.apply(sym, tuple)) {
                Ok(l) => table.push(l),
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        tables.push(table);
    }
    let name = format!(
        "{}_sub_{}",
        alg.name(),
        carrier
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("_")
    );
    Ok(SubAlgebra {
        generator,
        algebra: FiniteAlgebra::new(name, sig, carrier.len(), tables),
        carrier,
    })
}

/// Brute-force isomorphism test (permutation search); intended for the
/// desk-scale algebras this crate works with.
pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    if a.size != b.size || a.signature() != b.signature() {
        return false;
    }
    let n = a.size;
    let carrier: Vec<usize> = (0..n).collect();
    let mut perm: Vec<usize> = carrier.clone();
    fn is_iso(a: &FiniteAlgebra, b: &FiniteAlgebra, perm: &[usize], carrier: &[usize]) -> bool {
        let sig = a.signature();
        for sym in 0..sig.len() {
            let k = sig.arity(sym);
            let mut ok = true;
            for_each_tuple(carrier, k, |tuple| {
                if !ok {
                    return;
                }
                let lhs = perm[a.apply(sym, tuple)];
                let mapped: Vec<usize> = tuple.iter().map(|&t| perm[t]).collect();
                if lhs != b.apply(sym, &mapped) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
    fn search(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        perm: &mut Vec<usize>,
        k: usize,
        carrier: &[usize],
    ) -> bool {
        if k == perm.len() {
            return is_iso(a, b, perm, carrier);
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if search(a, b, perm, k + 1, carrier) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    search(a, b, &mut perm, 0, &carrier)
}

/// A variety presented by finitely many finite generating algebras over a
/// shared signature, together with a verified switching term.
///
/// Every generator must have at least two elements and pass the exhaustive
/// switching-term check, which makes it simple; the subdirectly irreducible
/// inventory of the variety is then the set of subuniverses of the
/// generators.
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    signature: Signature,
    generators: Vec<FiniteAlgebra>,
    switch: Term,
    switch_vars: VariableSet,
}

impl VarietyPresentation {
    pub fn new(
        generators: Vec<FiniteAlgebra>,
        switch: Term,
        switch_vars: VariableSet,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("no generating algebras given".into()));
        }
        let signature = generators[0].signature().clone();
        for g in &generators {
            if g.signature() != &signature {
                return Err(Error::SignatureMismatch(format!(
                    "`{}` differs from `{}`",
                    g.name(),
                    generators[0].name()
                )));
            }
            validate_algebra(g).into_result()?;
            if g.size() < 2 {
                return Err(Error::InvalidAlgebra {
                    name: g.name().to_string(),
                    violations: vec!["generators must have size >= 2".into()],
                });
            }
        }
        if switch_vars.len() != 4 {
            return Err(Error::BadSwitchTerm {
                got: switch_vars.len(),
            });
        }
        for g in &generators {
            let report = verify_switching_term(g, &switch, &switch_vars)?;
            if let Some((tuple, got, expected)) = report.counterexample {
                return Err(Error::NotSwitching {
                    algebra: g.name().to_string(),
                    term: crate::term::print_term(&switch, &signature, &switch_vars),
                    counterexample: tuple,
                    got,
                    expected,
                });
            }
        }
        Ok(VarietyPresentation {
            signature,
            generators,
            switch,
            switch_vars,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn generators(&self) -> &[FiniteAlgebra] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &FiniteAlgebra {
        &self.generators[i]
    }

    pub fn switch(&self) -> &Term {
        &self.switch
    }

    pub fn switch_vars(&self) -> &VariableSet {
        &self.switch_vars
    }

    /// The subdirectly irreducible inventory: every subuniverse of every
    /// generator, as standalone algebras. With `dedup_iso`, members
    /// isomorphic to an earlier entry are dropped.
    pub fn si_inventory(&self, cap: usize, dedup_iso: bool) -> Result<Vec<SubAlgebra>> {
        let mut out: Vec<SubAlgebra> = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for carrier in all_subalgebras(g, cap)? {
                let sub = restrict_to_subuniverse(g, gi, &carrier)?;
                if dedup_iso && out.iter().any(|s| isomorphic(&s.algebra, &sub.algebra)) {
                    continue;
                }
                out.push(sub);
            }
        }
        Ok(out)
    }

    /// Two constant symbols with distinct values in every generator, if any
    /// (first such pair in signature order).
    pub fn constant_witness_pair(&self) -> Option<(usize, usize)> {
        let constants: Vec<usize> = self.signature.constants().collect();
        for (i, &c) in constants.iter().enumerate() {
            for &d in &constants[i + 1..] {
                let distinct_everywhere = self
                    .generators
                    .iter()
                    .all(|g| g.constant_value(c) != g.constant_value(d));
                if distinct_everywhere {
                    return Some((c, d));
                }
            }
        }
        None
    }
}
