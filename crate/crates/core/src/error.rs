use thiserror::Error;

/// Errors produced by parsing, validation, and the synthesis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{name}` at byte {pos}")]
    UnknownSymbol { pos: usize, name: String },

    #[error("arity mismatch at byte {pos}: `{symbol}` takes {expected} argument(s), got {got}")]
    ArityMismatch {
        pos: usize,
        symbol: String,
        expected: usize,
        got: usize,
    },

    #[error("variable #{index} is not assigned")]
    UnassignedVariable { index: usize },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("algebra `{name}` is not well-formed: {}", violations.join("; "))]
    InvalidAlgebra { name: String, violations: Vec<String> },

    #[error("algebra file, line {line}: {msg}")]
    AlgebraFile { line: usize, msg: String },

    #[error("switch term must be over exactly 4 variables, got {got}")]
    BadSwitchTerm { got: usize },

    #[error(
        "`{term}` is not a switching term on `{algebra}`: \
         at (x,y,u,v)=({},{},{},{}) got {got}, expected {expected}",
        counterexample[0], counterexample[1], counterexample[2], counterexample[3]
    )]
    NotSwitching {
        algebra: String,
        term: String,
        counterexample: [usize; 4],
        got: usize,
        expected: usize,
    },

    #[error("{what} cap of {cap} exceeded (reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        reached: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no cover of {lower} below {upper} in the subalgebra (relation not a pre-order there?)")]
    NoCoverInInterval { lower: usize, upper: usize },

    #[error("diagram has no equations and no disequations")]
    EmptyDiagram,

    #[error("assignment value {value} lies outside the target carrier")]
    AssignmentOutOfRange { value: usize },

    #[error("generators disagree on the signature: {0}")]
    SignatureMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
