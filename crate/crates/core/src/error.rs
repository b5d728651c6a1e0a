use thiserror::Error;

/// Errors raised while building structures or evaluating diagrams.
///
/// Diagram *failures* are not errors: they are recorded as witnesses in a
/// [`DiagramReport`](crate::report::DiagramReport). An `Error` means the
/// input could not be evaluated at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("morphisms `{g}` and `{f}` are not composable (cod(f) = {cod_f}, dom(g) = {dom_g})")]
    NonComposable {
        g: String,
        f: String,
        cod_f: String,
        dom_g: String,
    },
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("tensor index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("hom-object of ({from}, {to}) refers to an unknown object of the base")]
    DanglingHom { from: String, to: String },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
