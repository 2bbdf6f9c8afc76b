use core::fmt;

/// Errors raised by construction and search routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex index lies outside `[0, n)`.
    VertexOutOfRange { vertex: u32, n: u32 },
    /// Requested uniformity is below 2.
    UniformityTooSmall { s: usize },
    /// An edge does not have exactly `s` distinct vertices.
    BadEdge { expected: usize, got: usize },
    /// The operation needs a nonempty (hyper)graph.
    Empty,
    /// The host is too small to contain a copy of the pattern.
    HostTooSmall { needed: u32, got: u32 },
    /// The pattern has no edges.
    NoEdges,
    /// The induced subhypergraph on the given set is not connected.
    Disconnected,
    /// A parameter is outside its documented range.
    BadParameter(&'static str),
    /// A probability lies outside `[0, 1]`.
    BadProbability,
    /// Janson deviation `t` lies outside `[0, mu]`.
    DeviationOutOfRange,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            Error::UniformityTooSmall { s } => write!(f, "uniformity {s} is below 2"),
            Error::BadEdge { expected, got } => {
                write!(f, "edge has {got} distinct vertices, expected {expected}")
            }
            Error::Empty => write!(f, "operation requires a nonempty structure"),
            Error::HostTooSmall { needed, got } => {
                write!(f, "host has {got} vertices, pattern needs {needed}")
            }
            Error::NoEdges => write!(f, "pattern has no edges"),
            Error::Disconnected => write!(f, "vertex set induces a disconnected subhypergraph"),
            Error::BadParameter(what) => write!(f, "bad parameter: {what}"),
            Error::BadProbability => write!(f, "probability must lie in [0, 1]"),
            Error::DeviationOutOfRange => write!(f, "deviation t must lie in [0, mu]"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
