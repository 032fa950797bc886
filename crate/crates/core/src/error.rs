use thiserror::Error;

/// Errors produced by the library. Parse errors carry 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    GraphParse { line: usize, message: String },

    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("graph must be connected")]
    Disconnected,

    #[error("malformed word token `{0}`")]
    MalformedWord(String),

    #[error("letter with generator index {0} is not valid for this graph")]
    InvalidLetter(usize),

    #[error("word is not geodesic")]
    NotGeodesic,

    #[error("ray period must be nonempty")]
    EmptyPeriod,

    #[error("ray is not geodesic: prefix * period^{power} admits a reduction")]
    RayNotGeodesic { power: usize },

    #[error("hyperplanes must be distinct")]
    EqualHyperplanes,

    #[error("parabolic subgroup is not cyclic (type has {0} vertices)")]
    NotCyclic(usize),

    #[error("graph is not transvection-free: lk({w}) is contained in st({v})")]
    NotTransvectionFree { v: String, w: String },

    #[error("de Rham decomposition has a nonempty clique factor")]
    CliqueFactor,

    #[error("witness carries no construction trace")]
    MissingTrace,

    #[error("group order must be positive")]
    ZeroOrder,

    #[error("edge `{edge}` has order {edge_order}, which does not divide the order {vertex_order} of `{vertex}`")]
    Divisibility {
        edge: String,
        edge_order: String,
        vertex: String,
        vertex_order: String,
    },

    #[error("graph of groups, line {line}: {message}")]
    GogParse { line: usize, message: String },

    #[error("graph of groups: {0}")]
    Gog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
