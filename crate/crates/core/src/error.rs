use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("invalid identifier `{0}` (expected letters, digits or `_`, not starting with a digit)")]
    InvalidIdentifier(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("a graph needs at least one vertex")]
    EmptyVertexSet,
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("elements belong to different graphs")]
    MixedGraphs,
    #[error("the zero element has no ghost degree")]
    ZeroElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("cycle {0} is not a K1 cycle")]
    NotK1Cycle(String),
    #[error("zero polynomial on cycle {0}")]
    ZeroPolynomial(String),
    #[error("element is not a polynomial in a K1 cycle: {0}")]
    NotCyclePolynomial(String),
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("cannot extract a vertex: {0}")]
    Extraction(String),
    #[error("K1 vertex `{0}` reached; vertex extraction does not apply")]
    K1Encountered(String),
    #[error("ideal JSON: {0}")]
    Json(String),
    #[error("reductions belong to different graphs")]
    MixedGraphs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoVertexError {
    #[error("expected exactly two vertices, found {0}")]
    WrongVertexCount(usize),
    #[error("edge budget {0} exceeds the enumeration guard of {max}", max = crate::two_vertex::ENUMERATION_GUARD)]
    OverGuard(u32),
    #[error("no reference skeleton matches this graph")]
    Unmatched,
}
