use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop at vertex {0}: simple graphs have no edge {{i,i}}")]
    Loop(usize),
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("edge {{{0},{1}}} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("{{{0},{1}}} is already an edge; neighborhood completion of a pair needs a non-edge")]
    ExistingEdge(usize, usize),
    #[error("characteristic {0} is not 0 or a prime")]
    CharacteristicNotPrime(u64),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("exponent overflow in monomial product")]
    ExponentOverflow,
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("eta is not invertible in characteristic 2 (there I_G = L_G and Pi_G = J_G instead)")]
    EtaInCharacteristicTwo,
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown claim `{name}`; valid claims: {valid}")]
    UnknownClaim { name: String, valid: String },
    #[error("operation needs a complete Betti table, got a partial one (degrees <= {0})")]
    PartialTable(u32),
    #[error("internal error: {0}")]
    Internal(String),
}
