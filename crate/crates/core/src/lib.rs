//! Materialized free algebras of varieties generated by finitely many
//! finite algebras with a switching term, equationally definable pre-orders
//! on them, and certificate-producing cover synthesis.
//!
//! The crate builds the free algebra on finitely many generators as the set
//! of value vectors over every assignment of the generators into the
//! generating algebras, checks definable pre-orders exhaustively, and — for
//! every strict pair alpha < beta — synthesizes a cover term
//! `sigma(delta, epsilon, rho(c), alpha)` whose class covers alpha inside
//! the interval, verifying each certificate against a brute-force oracle.

pub mod algebra;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod free;
pub mod io;
pub mod preorder;
pub mod signature;
pub mod term;

pub use algebra::{
    all_subalgebras, enumerate_congruences, isomorphic, restrict_to_subuniverse,
    subalgebra_closure, validate_algebra, verify_switching_term, Assignment, FiniteAlgebra,
    Homomorphism, SubAlgebra, SwitchingReport, ValidationReport, VarietyPresentation,
};
pub use cover::{
    boolean_natural_order, build_diagram, build_gamma, build_representatives,
    check_compiler_biconditional, choose_designated_pair, compile_to_equation, embedding_check,
    BiconditionalReport, CertificateChecks, CoverCertificate, CoverEngine, DiagramFormula,
    EmbeddingReport, EquationPair, PairStrategy,
};
pub use error::{Error, Result};
pub use free::{
    build_free_algebra, coordinate_system, induced_hom, validate_identity, Coordinate,
    FreeAlgebra, FreeElement, IdentityReport,
};
pub use io::{format_algebra, parse_algebra};
pub use preorder::{
    covers, find_cover_in_interval, holds, is_atomic, strictly_less, verify_preorder,
    AtomicityReport, PreorderReport, PreorderSpec, RelationView,
};
pub use signature::{Signature, Symbol, VariableSet};
pub use term::{derive_discriminator, evaluate, parse_term, print_term, substitute, AlgebraOps, Term};

/// Default cap on the number of free-algebra elements.
pub const DEFAULT_FREE_CAP: usize = 20_000;
/// Default cap on carrier size for exact subalgebra enumeration.
pub const DEFAULT_SUBALGEBRA_CAP: usize = 12;
/// Default cap on carrier size for the congruence oracle.
pub const DEFAULT_CONGRUENCE_CAP: usize = 8;
