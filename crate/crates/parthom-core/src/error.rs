use alloc::string::String;
use core::fmt;

/// Errors raised by construction and arithmetic on graph, space and
/// action data.  Every variant is deterministic: the same inputs always
/// produce the same error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A name did not match `[A-Za-z0-9_]+`.
    InvalidName(String),
    /// A vertex, edge or generator name was declared twice.
    DuplicateName(String),
    /// A graph must have at least one vertex.
    EmptyGraph,
    /// Lookup of an undeclared vertex.
    UnknownVertex(String),
    /// Lookup of an undeclared edge.
    UnknownEdge(String),
    /// Lookup of an undeclared generator.
    UnknownGenerator(String),
    /// Consecutive edges of a path fail the composability rule
    /// `s(e_i) = r(e_{i+1})`.
    NotComposable { prev: String, next: String },
    /// Two values built over different graphs were combined.
    GraphMismatch,
    /// Two values built over different actions were combined.
    ActionMismatch,
    /// A rule pair violates `s(src) = s(dst)`.
    RuleEndpointMismatch { src: String, dst: String },
    /// Rule sources (or map piece sources) are not pairwise
    /// prefix-incomparable.
    OverlappingSources { a: String, b: String },
    /// Rule targets are not pairwise prefix-incomparable.
    OverlappingTargets { a: String, b: String },
    /// A function or set of depth `depth` cannot be written in the
    /// level-`level` cylinder basis.
    DepthExceeded { depth: usize, level: usize },
    /// A tower was requested below its base level.
    LevelTooSmall { min: usize, given: usize },
    /// Tower stabilization needs a window of at least one step.
    WindowTooSmall,
    /// A word failed strict parsing because it was not freely reduced.
    NotReduced(String),
    /// An operation required `|w * l| = |w| + 1` and the concatenation
    /// cancelled instead.
    LengthCancellation(String),
    /// An element was not supported where the operation requires.
    SupportViolation(String),
    /// The closed-form graph computation needs every vertex to receive
    /// an edge.
    TerminalVertex(String),
    /// Matrix dimensions do not match the operation.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidName(n) => write!(f, "invalid name '{n}'"),
            Error::DuplicateName(n) => write!(f, "duplicate name '{n}'"),
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::UnknownVertex(n) => write!(f, "unknown vertex '{n}'"),
            Error::UnknownEdge(n) => write!(f, "unknown edge '{n}'"),
            Error::UnknownGenerator(n) => write!(f, "unknown generator '{n}'"),
            Error::NotComposable { prev, next } => {
                write!(f, "edge '{next}' does not continue '{prev}'")
            }
            Error::GraphMismatch => write!(f, "values come from different graphs"),
            Error::ActionMismatch => write!(f, "values come from different actions"),
            Error::RuleEndpointMismatch { src, dst } => {
                write!(f, "rule '{src} -> {dst}' does not preserve the endpoint vertex")
            }
            Error::OverlappingSources { a, b } => {
                write!(f, "sources '{a}' and '{b}' overlap")
            }
            Error::OverlappingTargets { a, b } => {
                write!(f, "targets '{a}' and '{b}' overlap")
            }
            Error::DepthExceeded { depth, level } => {
                write!(f, "depth {depth} exceeds level {level}")
            }
            Error::LevelTooSmall { min, given } => {
                write!(f, "level {given} is below the base level {min}")
            }
            Error::WindowTooSmall => write!(f, "stabilization window must be at least 1"),
            Error::NotReduced(w) => write!(f, "word '{w}' is not reduced"),
            Error::LengthCancellation(w) => {
                write!(f, "concatenation cancels in '{w}'")
            }
            Error::SupportViolation(what) => write!(f, "support violation: {what}"),
            Error::TerminalVertex(v) => {
                write!(f, "vertex '{v}' receives no edge")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
