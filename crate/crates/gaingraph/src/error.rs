use thiserror::Error;

/// Errors produced by graph construction and the analysis operations.
#[derive(Debug, Error)]
pub enum GainGraphError {
    #[error("vertex index {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),

    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("graph is not connected")]
    Disconnected,

    #[error("digraph is not weakly connected")]
    NotWeaklyConnected,

    #[error("underlying graphs differ: {0}")]
    GraphMismatch(&'static str),

    #[error("switching function covers {found} vertices, graph has {expected}")]
    SwitchingDomain { expected: usize, found: usize },

    #[error("spanning tree invariant violated: {0}")]
    TreeInvariant(&'static str),

    #[error("not a valid directed cycle: {0}")]
    ShapeError(&'static str),

    #[error("signature has {found} entries, basis has {expected} fundamental cycles")]
    SignatureLength { expected: usize, found: usize },

    #[error("tree gain assignment does not cover exactly the tree edges")]
    TreeGainCover,

    #[error("signatures computed against different spanning trees are not comparable")]
    FingerprintMismatch,

    #[error("{what} exceeds enumeration guard ({limit})")]
    Capacity { what: &'static str, limit: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("numerical consistency check failed: {0}")]
    NumericalConsistency(String),

    #[error("eigenvalue iteration failed to converge")]
    EigenConvergence,

    #[error("graph is outside the supported normalization classes: {0}")]
    UnsupportedClass(&'static str),

    #[error("cycles of the graph are not vertex disjoint")]
    CyclesNotDisjoint,

    #[error("missing normalization certificate for fundamental subgraph {0}")]
    MissingCertificate(usize),

    #[error("structure rule violated: {0}")]
    StructureRule(String),
}

pub type Result<T> = std::result::Result<T, GainGraphError>;
