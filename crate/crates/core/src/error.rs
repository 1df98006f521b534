//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised while building, instantiating or checking conditional objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A formula mentions an atom that the world (or universe) does not assign.
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    /// An operation that needs at least one object received none.
    #[error("empty family")]
    EmptyFamily,

    /// The antecedent of a conditional object is impossible under the active constraints.
    #[error("impossible antecedent `{0}`")]
    ImpossibleAntecedent(String),

    /// A value expression refers to a parameter that the assessment does not bind.
    #[error("unbound parameter `{0}`")]
    UnboundParam(String),

    /// A maximisation was requested over an empty feasible set.
    #[error("the linear system has no solution")]
    InfeasibleSystem,

    /// The assessment without the extension target is already incoherent.
    #[error("the base assessment is incoherent")]
    BaseIncoherent,

    /// An extension problem has more than one free parameter.
    #[error("more than one unbound parameter: {0:?}")]
    MultipleUnbound(Vec<String>),

    /// A closed-form bound was requested outside the domain of its formula.
    #[error("arguments outside the domain of `{0}`")]
    OutOfDomain(String),

    /// A random quantity can take values outside `[0, 1]`.
    #[error("`{0}` can take values outside [0, 1]")]
    ValuesOutsideUnit(String),

    /// The premises of an entailment query are not p-consistent.
    #[error("the premise set is not p-consistent")]
    NotPConsistent,

    /// An operator does not support the requested operation.
    #[error("unsupported operator: {0}")]
    UnsupportedKind(String),

    /// The input text does not match the expression grammar.
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },

    /// The universe would need more atoms than exhaustive enumeration supports.
    #[error("too many atoms ({0}); at most {max} are supported", max = crate::events::MAX_ATOMS)]
    TooManyAtoms(usize),

    /// No coherent value of the target could be located in the search range.
    #[error("no coherent value of the target was found in the search range")]
    NoCoherentExtension,

    /// The pieces of a random quantity do not partition the possible worlds.
    #[error("pieces of `{0}` do not partition the possible worlds")]
    InvalidPartition(String),

    /// A value expression would need a product of more than two parameters.
    #[error("expression degree exceeds the supported bilinear form")]
    NonBilinear,

    /// A command-line argument has no meaning for the command.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input file could not be read.
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
