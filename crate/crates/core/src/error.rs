use thiserror::Error;

/// Failures while building or mutating a [`Graph`](crate::Graph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} is already present")]
    EdgePresent(usize, usize),
    #[error("vertex {0} is covered by more than one matching edge")]
    OverlappingMatching(usize),
}

/// Decoding failures for graph6 lines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    MalformedByte { offset: usize, byte: u8 },
    #[error("truncated graph6 data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 body ({0} extra bytes)")]
    TrailingData(usize),
    #[error("order {0} is too large for graph6")]
    OrderTooLarge(usize),
    #[error("padding bits in the last graph6 byte must be zero")]
    NonZeroPadding,
}

/// Witness that a graph is not regular: two vertices with different degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, serde::Serialize, serde::Deserialize)]
#[error("graph is not regular: deg({u}) = {deg_u} but deg({v}) = {deg_v}")]
pub struct NotRegular {
    pub u: usize,
    pub deg_u: usize,
    pub v: usize,
    pub deg_v: usize,
}

/// An exponential routine was asked to run above its size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("n = {n} exceeds the limit of {limit} for this search")]
pub struct LimitExceeded {
    pub n: usize,
    pub limit: usize,
}
