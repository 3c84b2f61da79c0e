use thiserror::Error;

/// Validation failures for defining-graph documents. Every variant carries
/// the JSON location of the offending item.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph document (line {line}, column {column}): {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Shape { location: String, message: String },
    #[error("{location}: duplicate vertex {name:?}")]
    DuplicateVertex { location: String, name: String },
    #[error("{location}: label {label} is smaller than 2")]
    LabelTooSmall { location: String, label: i64 },
    #[error("{location}: label must be an integer, found {found}")]
    NonIntegerLabel { location: String, found: String },
    #[error("{location}: self-edge on vertex {name:?}")]
    SelfEdge { location: String, name: String },
    #[error("{location}: unknown vertex {name:?}")]
    UnknownVertex { location: String, name: String },
    #[error("{location}: pair {a:?}, {b:?} is listed more than once")]
    DuplicateEdge {
        location: String,
        a: String,
        b: String,
    },
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {count} vertices; at most {max} are supported")]
    TooManyVertices { count: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),

    /// A search exceeded its configured cap. Never a wrong answer.
    #[error("resource limit: {what} exceeded the cap of {cap}")]
    ResourceLimit { what: String, cap: usize },

    /// A finite-group check was requested on a parabolic that did not
    /// saturate within the enumeration cap.
    #[error("parabolic subgroup on {{{}}} is infinite or exceeds the enumeration cap of {cap}", generators.join(","))]
    InfiniteParabolic { generators: Vec<String>, cap: usize },

    /// An operation was called on a graph outside its hypotheses.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    /// Input referred to something that does not exist or is structurally
    /// inconsistent (e.g. a serialized plan that does not match the graph).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The floating point root test lost its margin. Indicates a bug or an
    /// enumeration far outside desk scale.
    #[error("numerical guard tripped: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
