//! Cover-term synthesis: separating homomorphism, representative terms,
//! diagram formula, equational compilation, the cover term itself, and full
//! certificate verification against the exhaustive oracle.
//!
//! Given a strict pair alpha < beta in the materialized free algebra, the
//! pipeline picks the first coordinate witnessing beta <= alpha failing, closes
//! the generator images there into a subalgebra A, finds a cover c of
//! h(alpha) inside (h(alpha), h(beta)] in A, describes A by a diagram (one
//! equation per generator, one per operation-table entry, one disequation
//! per distinct pair), compiles the diagram into a single equation pair
//! (delta, epsilon) using the switching term, and emits
//!
//! ```text
//! gamma = sigma(delta, epsilon, rho(c), alpha)
//! ```
//!
//! which is then verified — exhaustively, on the whole free algebra — to be
//! a cover of alpha below beta.

use std::collections::BTreeMap;

use crate::algebra::{
    subalgebra_closure, Assignment, Homomorphism, SubAlgebra, VarietyPresentation,
};
use crate::error::{Error, Result};
use crate::free::{witness_closure, FreeAlgebra};
use crate::preorder::{
    find_cover_in_interval_view, PreorderSpec, RelationView,
};
use crate::signature::Signature;
use crate::term::{evaluate, substitute, AlgebraOps, Term};

/// The three clause families describing a subalgebra via representative
/// terms: generator equations, operation-table equations, and pairwise
/// disequations.
#[derive(Debug, Clone)]
pub struct DiagramFormula {
    pub equations: Vec<(Term, Term)>,
    pub disequations: Vec<(Term, Term)>,
}

impl DiagramFormula {
    pub fn is_empty(&self) -> bool {
        self.equations.is_empty() && self.disequations.is_empty()
    }

    /// Does the diagram hold in `alg` under the assignment `asg`?
    pub fn satisfied_by<A: AlgebraOps + ?Sized>(&self, alg: &A, asg: &[usize]) -> Result<bool> {
        for (l, r) in &self.equations {
            if evaluate(l, alg, asg)? != evaluate(r, alg, asg)? {
                return Ok(false);
            }
        }
        for (l, r) in &self.disequations {
            if evaluate(l, alg, asg)? == evaluate(r, alg, asg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// How the distinct pair (u, w) used to encode disequations was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStrategy {
    /// Two constant terms with distinct values in every generator.
    ConstantsWitness,
    /// Representatives of the canonically least distinct pair of A.
    DesignatedPair,
}

impl PairStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            PairStrategy::ConstantsWitness => "constants-witness",
            PairStrategy::DesignatedPair => "designated-pair",
        }
    }
}

/// The compiled equation pair: on subdirectly irreducible members,
/// delta = epsilon captures the diagram (up to the degenerate collapse
/// discussed at `check_compiler_biconditional`).
#[derive(Debug, Clone)]
pub struct EquationPair {
    pub delta: Term,
    pub epsilon: Term,
    pub strategy: PairStrategy,
}

/// Verification transcript of one certificate; every field is the outcome
/// of an exhaustive check on the materialized free algebra.
#[derive(Debug, Clone)]
pub struct CertificateChecks {
    /// alpha <= gamma in F.
    pub alpha_le_gamma: bool,
    /// gamma <= beta in F.
    pub gamma_le_beta: bool,
    /// gamma <= alpha fails in F.
    pub gamma_not_le_alpha: bool,
    /// For every tau with alpha <= tau <= gamma: tau <= alpha or gamma <= tau.
    pub dichotomy: bool,
    /// First tau violating the dichotomy, if any.
    pub dichotomy_witness: Option<usize>,
    /// gamma's class covers alpha per the independent oracle.
    pub covers_alpha: bool,
    /// delta and epsilon agree at the separating coordinate.
    pub h_delta_eq_h_epsilon: bool,
    /// gamma evaluates to the chosen cover c at the separating coordinate.
    pub h_gamma_is_cover: bool,
}

impl CertificateChecks {
    pub fn all_passed(&self) -> bool {
        self.alpha_le_gamma
            && self.gamma_le_beta
            && self.gamma_not_le_alpha
            && self.dichotomy
            && self.covers_alpha
            && self.h_delta_eq_h_epsilon
            && self.h_gamma_is_cover
    }
}

/// Complete transcript of one run of the cover construction.
#[derive(Debug, Clone)]
pub struct CoverCertificate {
    /// Free element indices of the strict pair.
    pub alpha: usize,
    pub beta: usize,
    /// The separating coordinate (first in canonical order).
    pub coordinate: usize,
    /// A: the subalgebra generated by the variable images at the coordinate.
    pub subalgebra: SubAlgebra,
    /// h: projection of the free algebra onto A (values are local indices).
    pub hom: Homomorphism,
    /// c: the chosen cover of h(alpha) below h(beta), as a parent element.
    pub cover: usize,
    /// rho: shortest representative term for each element of A (parent
    /// element -> term), sorted by element.
    pub rho: Vec<(usize, Term)>,
    pub eta: DiagramFormula,
    pub pair: EquationPair,
    pub gamma_term: Term,
    /// Free element index of gamma's class.
    pub gamma: usize,
    pub checks: CertificateChecks,
}

/// Precomputed relation views shared across synthesis runs on one
/// (free algebra, pre-order) configuration.
pub struct CoverEngine<'a> {
    fa: &'a FreeAlgebra,
    spec: &'a PreorderSpec,
    f_view: RelationView,
    gen_views: Vec<RelationView>,
}

impl<'a> CoverEngine<'a> {
    pub fn new(fa: &'a FreeAlgebra, spec: &'a PreorderSpec) -> Self {
        let f_view = RelationView::build(spec, fa);
        let gen_views = fa
            .presentation()
            .generators()
            .iter()
            .map(|g| RelationView::build(spec, g))
            .collect();
        CoverEngine {
            fa,
            spec,
            f_view,
            gen_views,
        }
    }

    pub fn free_algebra(&self) -> &FreeAlgebra {
        self.fa
    }

    pub fn spec(&self) -> &PreorderSpec {
        self.spec
    }

    /// The materialized relation on the free algebra.
    pub fn f_view(&self) -> &RelationView {
        &self.f_view
    }

    /// The first coordinate where beta <= alpha fails in the generator,
    /// the subalgebra A generated there by the variable images, and the
    /// projection homomorphism h with h(alpha) < h(beta).
    ///
    /// Requires alpha < beta in F. Coordinate projections of the closed
    /// element set commute with every operation by construction, so the
    /// homomorphism is not re-verified here.
    pub fn find_separating_hom(
        &self,
        alpha: usize,
        beta: usize,
    ) -> Result<(usize, SubAlgebra, Homomorphism)> {
        if !self.f_view.strictly_less(alpha, beta) {
            return Err(Error::Precondition(format!(
                "find_separating_hom needs alpha < beta, got ({alpha}, {beta})"
            )));
        }
        let a_vals = &self.fa.element(alpha).values;
        let b_vals = &self.fa.element(beta).values;
        let coordinate = self
            .fa
            .coordinates()
            .iter()
            .enumerate()
            .position(|(ci, coord)| {
                !self.gen_views[coord.generator].holds(b_vals[ci] as usize, a_vals[ci] as usize)
            })
            .expect("beta <= alpha fails somewhere because beta <= alpha fails in F");
        let coord = &self.fa.coordinates()[coordinate];
        let generator = self.fa.presentation().generator(coord.generator);
        let carrier = subalgebra_closure(generator, &coord.assignment);
        let sub = crate::algebra::restrict_to_subuniverse(generator, coord.generator, &carrier)?;
        let map: Vec<usize> = self
            .fa
            .elements()
            .iter()
            .map(|e| {
                sub.local(e.values[coordinate] as usize)
                    .expect("coordinate values of free elements lie in the closure")
            })
            .collect();
        let hom = Homomorphism::from_map_unchecked(map);
        if !hom.is_surjective_onto(sub.size()) {
            return Err(Error::Precondition(
                "projection is not surjective onto the closure".into(),
            ));
        }
        Ok((coordinate, sub, hom))
    }

    /// Shortest representative terms for every element of the subalgebra
    /// generated by the variable images at `coordinate`: rho(a) is the
    /// breadth-first-shortest term over X with value a there.
    pub fn build_representatives(&self, coordinate: usize) -> Result<Vec<(usize, Term)>> {
        build_representatives(self.fa, coordinate)
    }

    /// Run the whole construction for one strict pair and verify it.
    pub fn synthesize_cover(&self, alpha: usize, beta: usize) -> Result<CoverCertificate> {
        let (coordinate, sub, hom) = self.find_separating_hom(alpha, beta)?;
        let a_view = RelationView::build(self.spec, &sub.algebra);
        let c_local =
            find_cover_in_interval_view(&a_view, hom.apply(alpha), hom.apply(beta))?;
        let cover = sub.parent_elem(c_local);
        let rho = self.build_representatives(coordinate)?;
        let reached: Vec<usize> = rho.iter().map(|(a, _)| *a).collect();
        if reached != sub.carrier {
            return Err(Error::Precondition(
                "representative search and subalgebra closure disagree".into(),
            ));
        }
        let vp = self.fa.presentation();
        let coord = &self.fa.coordinates()[coordinate];
        let eta = build_diagram(
            &sub,
            vp,
            &rho,
            self.fa.generator_count(),
            &coord.assignment,
        );
        let (u, w, strategy) = choose_designated_pair(vp, &sub, &rho);
        let pair = compile_to_equation(&eta, vp, &u, &w, strategy)?;
        let rho_map: BTreeMap<usize, &Term> = rho.iter().map(|(a, t)| (*a, t)).collect();
        let gamma_term = build_gamma(
            &pair,
            rho_map[&cover],
            &self.fa.element(alpha).witness,
            vp,
        );
        let gamma = self.fa.element_of_term(&gamma_term)?;
        let mut cert = CoverCertificate {
            alpha,
            beta,
            coordinate,
            subalgebra: sub,
            hom,
            cover,
            rho,
            eta,
            pair,
            gamma_term,
            gamma,
            checks: CertificateChecks {
                alpha_le_gamma: false,
                gamma_le_beta: false,
                gamma_not_le_alpha: false,
                dichotomy: false,
                dichotomy_witness: None,
                covers_alpha: false,
                h_delta_eq_h_epsilon: false,
                h_gamma_is_cover: false,
            },
        };
        cert.checks = self.verify_certificate(&cert)?;
        Ok(cert)
    }

    /// Recompute the verification transcript for a certificate (possibly
    /// hand-built). Failures are recorded, not thrown.
    pub fn verify_certificate(&self, cert: &CoverCertificate) -> Result<CertificateChecks> {
        let gamma = self.fa.element_of_term(&cert.gamma_term)?;
        let view = &self.f_view;
        let alpha_le_gamma = view.holds(cert.alpha, gamma);
        let gamma_le_beta = view.holds(gamma, cert.beta);
        let gamma_not_le_alpha = !view.holds(gamma, cert.alpha);
        let mut dichotomy = true;
        let mut dichotomy_witness = None;
        for tau in 0..self.fa.len() {
            if view.holds(cert.alpha, tau)
                && view.holds(tau, gamma)
                && !(view.holds(tau, cert.alpha) || view.holds(gamma, tau))
            {
                dichotomy = false;
                dichotomy_witness = Some(tau);
                break;
            }
        }
        let covers_alpha = view.covers(cert.alpha, gamma);
        let coord = &self.fa.coordinates()[cert.coordinate];
        let generator = self.fa.presentation().generator(coord.generator);
        let h_delta = evaluate(&cert.pair.delta, generator, &coord.assignment)?;
        let h_epsilon = evaluate(&cert.pair.epsilon, generator, &coord.assignment)?;
        let h_gamma = evaluate(&cert.gamma_term, generator, &coord.assignment)?;
        Ok(CertificateChecks {
            alpha_le_gamma,
            gamma_le_beta,
            gamma_not_le_alpha,
            dichotomy,
            dichotomy_witness,
            covers_alpha,
            h_delta_eq_h_epsilon: h_delta == h_epsilon,
            h_gamma_is_cover: h_gamma == cert.cover,
        })
    }

    /// Synthesize and verify a certificate for every strict pair, in
    /// canonical pair order.
    pub fn synthesize_all(&self) -> Result<Vec<CoverCertificate>> {
        self.f_view
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| self.synthesize_cover(a, b))
            .collect()
    }
}

/// Standalone representative search; see
/// [`CoverEngine::build_representatives`].
pub fn build_representatives(fa: &FreeAlgebra, coordinate: usize) -> Result<Vec<(usize, Term)>> {
    let coord = fa.coordinates()[coordinate].clone();
    let generator_size = fa
        .presentation()
        .generator(coord.generator)
        .size();
    let wc = witness_closure(
        fa.presentation(),
        fa.generator_count(),
        std::slice::from_ref(&coord),
        generator_size,
    )?;
    let mut out: Vec<(usize, Term)> = wc
        .values
        .into_iter()
        .zip(wc.witnesses)
        .map(|(v, t)| (v[0] as usize, t))
        .collect();
    out.sort_by_key(|(a, _)| *a);
    Ok(out)
}

/// The three families, in canonical order: one equation x = rho(h(x)) per
/// generator, one equation f(rho(a1)..rho(ak)) = rho(f(a1..ak)) per symbol
/// and argument tuple over A, one disequation rho(a) != rho(a') per
/// unordered distinct pair — and nothing else.
pub fn build_diagram(
    sub: &SubAlgebra,
    vp: &VarietyPresentation,
    rho: &[(usize, Term)],
    m: usize,
    variable_images: &Assignment,
) -> DiagramFormula {
    let rho_map: BTreeMap<usize, &Term> = rho.iter().map(|(a, t)| (*a, t)).collect();
    let generator = vp.generator(sub.generator);
    let sig = vp.signature();
    let mut equations = Vec::new();
    for var in 0..m {
        equations.push((Term::Var(var), rho_map[&variable_images[var]].clone()));
    }
    for sym in 0..sig.len() {
        let k = sig.arity(sym);
        crate::algebra::for_each_tuple(&sub.carrier, k, |tuple| {
            let lhs = Term::App(sym, tuple.iter().map(|a| rho_map[a].clone()).collect());
            let rhs = rho_map[&generator.apply(sym, tuple)].clone();
            equations.push((lhs, rhs));
        });
    }
    let mut disequations = Vec::new();
    for (i, &a) in sub.carrier.iter().enumerate() {
        for &b in &sub.carrier[i + 1..] {
            disequations.push((rho_map[&a].clone(), rho_map[&b].clone()));
        }
    }
    DiagramFormula {
        equations,
        disequations,
    }
}

/// The distinct pair (u, w) used to encode disequations: two constant terms
/// when the presentation has constants with distinct values in every
/// generator, otherwise the representatives of the canonically least
/// distinct pair of A.
pub fn choose_designated_pair(
    vp: &VarietyPresentation,
    sub: &SubAlgebra,
    rho: &[(usize, Term)],
) -> (Term, Term, PairStrategy) {
    if let Some((c, d)) = vp.constant_witness_pair() {
        return (
            Term::constant(c),
            Term::constant(d),
            PairStrategy::ConstantsWitness,
        );
    }
    // |A| >= 2 whenever the diagram has disequations to encode; with a
    // single element the pair is never used, so repeating it is harmless
    let first = rho[0].1.clone();
    let second = if rho.len() > 1 {
        rho[1].1.clone()
    } else {
        rho[0].1.clone()
    };
    let _ = sub;
    (first, second, PairStrategy::DesignatedPair)
}

/// Substitute p, q, r into the 4-variable switching term as the derived
/// discriminator application t(p, q, r) = sigma(p, q, r, p).
fn discriminator_app(switch: &Term, p: &Term, q: &Term, r: &Term) -> Term {
    substitute(switch, &[p.clone(), q.clone(), r.clone(), p.clone()])
}

/// Compile the diagram into a single equation pair over X.
///
/// Each positive equation is kept as is; each disequation p != q becomes
/// sigma(p, q, u, w) = w; the clauses are folded left to right by the
/// conjunction rule (p=q) and (r=s) iff t(p,q,r) = t(q,p,s), with the
/// accumulated pair in the discriminator's third slot so the result stays
/// linear in the diagram size.
pub fn compile_to_equation(
    eta: &DiagramFormula,
    vp: &VarietyPresentation,
    u: &Term,
    w: &Term,
    strategy: PairStrategy,
) -> Result<EquationPair> {
    if eta.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let switch = vp.switch();
    let mut clauses: Vec<(Term, Term)> = Vec::new();
    clauses.extend(eta.equations.iter().cloned());
    for (p, q) in &eta.disequations {
        let lhs = substitute(switch, &[p.clone(), q.clone(), u.clone(), w.clone()]);
        clauses.push((lhs, w.clone()));
    }
    let mut iter = clauses.into_iter();
    let (mut delta, mut epsilon) = iter.next().expect("nonempty diagram");
    for (p, q) in iter {
        delta = discriminator_app(switch, &p, &q, &delta);
        epsilon = discriminator_app(switch, &q, &p, &epsilon);
    }
    Ok(EquationPair {
        delta,
        epsilon,
        strategy,
    })
}

/// The cover term gamma = sigma(delta, epsilon, rho(c), alpha).
pub fn build_gamma(
    pair: &EquationPair,
    rho_c: &Term,
    alpha_witness: &Term,
    vp: &VarietyPresentation,
) -> Term {
    substitute(
        vp.switch(),
        &[
            pair.delta.clone(),
            pair.epsilon.clone(),
            rho_c.clone(),
            alpha_witness.clone(),
        ],
    )
}

/// Report of one embedding check: does B satisfy the diagram under k, and
/// is the induced map a -> k(rho(a)) an injective homomorphism?
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub eta_holds: bool,
    pub injective: bool,
    pub preserves_operations: bool,
    /// The induced map, parent element of A -> local element of B.
    pub image: Vec<(usize, usize)>,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.eta_holds && self.injective && self.preserves_operations
    }
}

/// Check property (1): whenever B satisfies the diagram under the
/// evaluation k, the map a -> k(rho(a)) embeds A into B. The induction over
/// terms is made exhaustive here: injectivity and operation preservation
/// are checked on every pair and every table entry.
pub fn embedding_check(
    eta: &DiagramFormula,
    sub: &SubAlgebra,
    vp: &VarietyPresentation,
    rho: &[(usize, Term)],
    b: &SubAlgebra,
    k: &Assignment,
) -> Result<EmbeddingReport> {
    let eta_holds = eta.satisfied_by(&b.algebra, k)?;
    let mut image = Vec::with_capacity(rho.len());
    for (a, t) in rho {
        image.push((*a, evaluate(t, &b.algebra, k)?));
    }
    let mut injective = true;
    for (i, &(_, va)) in image.iter().enumerate() {
        for &(_, vb) in &image[i + 1..] {
            if va == vb {
                injective = false;
            }
        }
    }
    let phi: BTreeMap<usize, usize> = image.iter().copied().collect();
    let generator = vp.generator(sub.generator);
    let sig = vp.signature();
    let mut preserves_operations = true;
    for sym in 0..sig.len() {
        let k_arity = sig.arity(sym);
        crate::algebra::for_each_tuple(&sub.carrier, k_arity, |tuple| {
            if !preserves_operations {
                return;
            }
            let lhs = phi[&generator.apply(sym, tuple)];
            let mapped: Vec<usize> = tuple.iter().map(|a| phi[a]).collect();
            if lhs != b.algebra.apply(sym, &mapped) {
                preserves_operations = false;
            }
        });
    }
    Ok(EmbeddingReport {
        eta_holds,
        injective,
        preserves_operations,
        image,
    })
}

/// The Boolean natural order x <= y iff x /\ y = x, over a declared meet
/// symbol.
pub fn boolean_natural_order(sig: &Signature, meet: &str) -> Result<PreorderSpec> {
    let sym = sig
        .lookup(meet)
        .ok_or_else(|| Error::Precondition(format!("no symbol `{meet}` in the signature")))?;
    if sig.arity(sym) != 2 {
        return Err(Error::Precondition(format!(
            "meet symbol `{meet}` must be binary, has arity {}",
            sig.arity(sym)
        )));
    }
    PreorderSpec::new(
        Term::App(sym, vec![Term::Var(0), Term::Var(1)]),
        Term::Var(0),
        sig,
    )
}

/// One violation of the compiler biconditional.
#[derive(Debug, Clone)]
pub struct BiconditionalViolation {
    pub si_member: String,
    pub assignment: Assignment,
    pub detail: String,
}

/// Outcome of the exhaustive compiler check over the SI inventory.
#[derive(Debug, Clone)]
pub struct BiconditionalReport {
    pub assignments_checked: usize,
    pub violations: Vec<BiconditionalViolation>,
    /// Assignments where k(delta) = k(epsilon) with the diagram false and
    /// the rho-image collapsed to a single element.
    pub escapes: usize,
}

impl BiconditionalReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively check, over every SI-inventory member B and every
/// assignment k of X into B:
///
/// * soundness: if B satisfies the diagram under k then k(delta) = k(epsilon);
/// * converse with degenerate escape: if k(delta) = k(epsilon) then either B
///   satisfies the diagram under k, or all rho-images collapse to one
///   element — and then every element of the free algebra evaluates to that
///   same point under k (checked via witness terms).
///
/// The escape exists because the disequation encoding
/// sigma(p,q,u,w) = w is vacuous when the designated pair collapses; that
/// can only happen when the induced map from the simple algebra A is
/// constant, which collapses everything.
pub fn check_compiler_biconditional(
    fa: &FreeAlgebra,
    si: &[SubAlgebra],
    eta: &DiagramFormula,
    pair: &EquationPair,
    rho: &[(usize, Term)],
) -> Result<BiconditionalReport> {
    let m = fa.generator_count();
    let mut report = BiconditionalReport {
        assignments_checked: 0,
        violations: Vec::new(),
        escapes: 0,
    };
    for b in si {
        let n = b.size();
        let total = n.pow(m as u32);
        for mut row in 0..total {
            let mut asg = vec![0usize; m];
            for i in (0..m).rev() {
                asg[i] = row % n;
                row /= n;
            }
            report.assignments_checked += 1;
            let eta_k = eta.satisfied_by(&b.algebra, &asg)?;
            let d = evaluate(&pair.delta, &b.algebra, &asg)?;
            let e = evaluate(&pair.epsilon, &b.algebra, &asg)?;
            if eta_k && d != e {
                report.violations.push(BiconditionalViolation {
                    si_member: b.algebra.name().to_string(),
                    assignment: asg.clone(),
                    detail: "diagram holds but delta != epsilon".into(),
                });
                continue;
            }
            if d == e && !eta_k {
                let mut images: Vec<usize> = Vec::new();
                for (_, t) in rho {
                    let v = evaluate(t, &b.algebra, &asg)?;
                    if !images.contains(&v) {
                        images.push(v);
                    }
                }
                if images.len() != 1 {
                    report.violations.push(BiconditionalViolation {
                        si_member: b.algebra.name().to_string(),
                        assignment: asg.clone(),
                        detail: format!(
                            "delta = epsilon with diagram false but {} rho-images",
                            images.len()
                        ),
                    });
                    continue;
                }
                let point = images[0];
                let mut collapsed = true;
                for elem in fa.elements() {
                    if evaluate(&elem.witness, &b.algebra, &asg)? != point {
                        collapsed = false;
                        break;
                    }
                }
                if !collapsed {
                    report.violations.push(BiconditionalViolation {
                        si_member: b.algebra.name().to_string(),
                        assignment: asg.clone(),
                        detail: "degenerate escape fired but F did not collapse".into(),
                    });
                    continue;
                }
                report.escapes += 1;
            }
        }
    }
    Ok(report)
}
