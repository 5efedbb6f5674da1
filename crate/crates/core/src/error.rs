use thiserror::Error;

/// Errors raised by the character calculus.
///
/// Values that the mathematics treats as legitimate outcomes (an integer
/// system without solution, a character without sections) are modelled as
/// `Option`s or dedicated variants carrying a witness, never as panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simplex {0:?}: {1}")]
    InvalidSimplex(Vec<usize>, &'static str),
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<usize>),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("operands live on different complexes")]
    ComplexMismatch,
    #[error("vertex map is not simplicial: image of {0:?} is not a simplex")]
    NotSimplicial(Vec<usize>),
    #[error("vertex map has length {found}, source has {expected} vertices")]
    VertexMapLength { expected: usize, found: usize },
    #[error("complex is not a pseudomanifold: a codimension-one face has more than two cofaces")]
    NotManifold,
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("complex is not pure of dimension {0}")]
    NotPure(usize),
    #[error("curvature is not closed")]
    NotClosed,
    #[error("curvature minus the coboundary of the lift is not integral")]
    NotIntegrallyCompatible,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cycle does not represent a torsion class")]
    NotTorsion,
    #[error("cochain coboundary is not integral")]
    NotCocycle,
    #[error("character is not topologically trivial")]
    NoTrivialization,
    #[error("form does not have integral periods")]
    NotIntegralPeriods,
    #[error("character is not flat")]
    NotFlat,
    #[error("degree underflow: {0}")]
    DegreeUnderflow(&'static str),
    #[error("fiber chain is not a fundamental chain of the fiber")]
    NotFundamentalChain,
    #[error("fiber chain is not closed")]
    FiberNotClosed,
    #[error("homotopy does not restrict to the given end maps")]
    EndpointMismatch,
    #[error("fillings do not share boundary data")]
    BoundaryMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("pair of cochains is not closed in the mapping cone")]
    NotConeClosed,
    #[error("chain pair is not a mapping-cone cycle")]
    NotAConeCycle,
    #[error("no section: pulled-back characteristic class is nonzero ({witness})")]
    NoSection { witness: String },
    #[error("projection of the relative character is nonzero")]
    KernelConditionFailed,
    #[error("transfer map is not a chain map")]
    NotChainMap,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
