//! Structured (JSON) output documents. Field order is struct order and all
//! collections are canonically sorted, so output is byte-stable across runs.

use serde::Serialize;

use freealg::{CoverCertificate, FreeAlgebra, PreorderSpec, RelationView};

#[derive(Serialize)]
pub struct CoordinateDoc {
    pub index: usize,
    pub generator: String,
    pub assignment: Vec<usize>,
}

#[derive(Serialize)]
pub struct RhoEntry {
    pub element: usize,
    pub term: String,
}

#[derive(Serialize)]
pub struct EquationDoc {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct ChecksDoc {
    pub alpha_le_gamma: bool,
    pub gamma_le_beta: bool,
    pub gamma_not_le_alpha: bool,
    pub dichotomy: bool,
    pub dichotomy_witness: Option<String>,
    pub covers_alpha: bool,
    pub h_delta_eq_h_epsilon: bool,
    pub h_gamma_is_cover: bool,
    pub all_passed: bool,
}

/// The machine-readable certificate block emitted by `find-cover`.
#[derive(Serialize)]
pub struct CertificateDoc {
    pub alpha: String,
    pub beta: String,
    pub coordinate: CoordinateDoc,
    pub subalgebra: Vec<usize>,
    pub c: usize,
    pub rho: Vec<RhoEntry>,
    pub eta_equations: Vec<EquationDoc>,
    pub eta_disequations: Vec<EquationDoc>,
    pub delta: String,
    pub epsilon: String,
    pub gamma: String,
    pub checks: ChecksDoc,
}

impl CertificateDoc {
    pub fn build(fa: &FreeAlgebra, cert: &CoverCertificate) -> Self {
        let sig = fa.signature();
        let vars = fa.variables();
        let p = |t: &freealg::Term| freealg::print_term(t, sig, vars);
        let coord = &fa.coordinates()[cert.coordinate];
        CertificateDoc {
            alpha: p(&fa.element(cert.alpha).witness),
            beta: p(&fa.element(cert.beta).witness),
            coordinate: CoordinateDoc {
                index: cert.coordinate,
                generator: fa
                    .presentation()
                    .generator(coord.generator)
                    .name()
                    .to_string(),
                assignment: coord.assignment.clone(),
            },
            subalgebra: cert.subalgebra.carrier.clone(),
            c: cert.cover,
            rho: cert
                .rho
                .iter()
                .map(|(element, term)| RhoEntry {
                    element: *element,
                    term: p(term),
                })
                .collect(),
            eta_equations: cert
                .eta
                .equations
                .iter()
                .map(|(l, r)| EquationDoc { lhs: p(l), rhs: p(r) })
                .collect(),
            eta_disequations: cert
                .eta
                .disequations
                .iter()
                .map(|(l, r)| EquationDoc { lhs: p(l), rhs: p(r) })
                .collect(),
            delta: p(&cert.pair.delta),
            epsilon: p(&cert.pair.epsilon),
            gamma: p(&cert.gamma_term),
            checks: ChecksDoc {
                alpha_le_gamma: cert.checks.alpha_le_gamma,
                gamma_le_beta: cert.checks.gamma_le_beta,
                gamma_not_le_alpha: cert.checks.gamma_not_le_alpha,
                dichotomy: cert.checks.dichotomy,
                dichotomy_witness: cert
                    .checks
                    .dichotomy_witness
                    .map(|tau| p(&fa.element(tau).witness)),
                covers_alpha: cert.checks.covers_alpha,
                h_delta_eq_h_epsilon: cert.checks.h_delta_eq_h_epsilon,
                h_gamma_is_cover: cert.checks.h_gamma_is_cover,
                all_passed: cert.checks.all_passed(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ValidationDoc {
    pub file: String,
    pub algebra: String,
    pub size: usize,
    pub operations: usize,
    pub valid: bool,
    pub violations: Vec<String>,
    pub switching: Option<bool>,
}

#[derive(Serialize)]
pub struct SubalgebrasDoc {
    pub algebra: String,
    pub subuniverses: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct BuildFreeDoc {
    pub algebras: Vec<String>,
    pub generators: usize,
    pub elements: usize,
    pub layers: Vec<LayerDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct LayerDoc {
    pub witness_size: usize,
    pub count: usize,
}

#[derive(Serialize)]
pub struct PreorderDoc {
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub reflexivity_counterexample: Option<String>,
    pub transitivity_counterexample: Option<Vec<String>>,
    pub antisymmetry_counterexample: Option<Vec<String>>,
}

impl PreorderDoc {
    pub fn build(fa: &FreeAlgebra, view: &RelationView, _spec: &PreorderSpec) -> Self {
        let report = freealg::preorder::verify_preorder_view(view);
        let anti = freealg::preorder::antisymmetry_counterexample(view);
        let w = |i: usize| freealg::print_term(&fa.element(i).witness, fa.signature(), fa.variables());
        PreorderDoc {
            reflexive: report.reflexive,
            transitive: report.transitive,
            antisymmetric: anti.is_none(),
            reflexivity_counterexample: report.reflexivity_counterexample.map(w),
            transitivity_counterexample: report
                .transitivity_counterexample
                .map(|(a, b, c)| vec![w(a), w(b), w(c)]),
            antisymmetry_counterexample: anti.map(|(a, b)| vec![w(a), w(b)]),
        }
    }
}

#[derive(Serialize)]
pub struct CheckPreorderDoc {
    pub algebras: Vec<String>,
    pub generators: usize,
    pub elements: usize,
    pub preorder: PreorderDoc,
    pub is_preorder: bool,
    pub strict_pairs: usize,
}

#[derive(Serialize)]
pub struct PairSummaryDoc {
    pub alpha: String,
    pub beta: String,
    pub gamma_class: String,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct OracleDoc {
    pub atomic: bool,
    pub counterexample: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct SynthesisDoc {
    pub certificates: usize,
    pub all_verified: bool,
    pub pairs: Vec<PairSummaryDoc>,
}

#[derive(Serialize)]
pub struct AtomicCheckDoc {
    pub algebras: Vec<String>,
    pub generators: usize,
    pub elements: usize,
    pub preorder: PreorderDoc,
    pub strict_pairs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub atomic: bool,
}

#[derive(Serialize)]
pub struct CompileFormulaDoc {
    pub strategy: String,
    pub delta: String,
    pub epsilon: String,
}
