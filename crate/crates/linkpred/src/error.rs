use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by graph construction, file parsing, detection,
/// generation, and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop edge ({0}, {0}) is not allowed")]
    SelfLoop(usize),

    #[error("vertex {vertex} is out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("removal fraction {0} is outside [0, 1]")]
    InvalidFraction(f64),

    #[error("average degree is undefined for a graph with no vertices")]
    EmptyGraph,

    #[error("{path}:{line}: expected two whitespace-separated labels, got {found:?}")]
    MalformedEdgeLine {
        path: String,
        line: usize,
        found: String,
    },

    #[error("{path}:{line}: unknown vertex label {label:?}")]
    UnknownLabel {
        path: String,
        line: usize,
        label: String,
    },

    #[error("cover leaves {count} vertices uncovered (first: {sample})")]
    UncoveredVertices { count: usize, sample: String },

    #[error("vertex {0} has no community membership")]
    UncoveredVertex(usize),

    #[error("community ids are not dense: id {0} is used by no vertex")]
    UnusedCommunityId(usize),

    #[error("cover describes {cover} vertices but the graph has {graph}")]
    CoverSizeMismatch { cover: usize, graph: usize },

    #[error("operation requires a disjoint partition; vertex {0} belongs to several communities")]
    OverlappingCover(usize),

    #[error("modularity is undefined for an edgeless graph")]
    ModularityUndefined,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("AUC is undefined with {positives} positive and {negatives} negative instances")]
    UndefinedAuc { positives: usize, negatives: usize },

    #[error("removed edge ({u}, {v}) is not among the ranked candidate pairs")]
    RemovedPairNotCandidate { u: usize, v: usize },

    #[error("ground-truth cover is only available for generated networks")]
    GroundTruthUnavailable,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
