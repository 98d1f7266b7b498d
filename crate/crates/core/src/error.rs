use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the numerical pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grid too coarse: need at least {needed} samples, got {got}")]
    GridTooCoarse { needed: usize, got: usize },

    #[error("non-uniform grid: spacing deviates at index {index}")]
    NonUniformGrid { index: usize },

    #[error("ODE solution diverged near u = {u}")]
    DivergentOde { u: f64 },

    #[error("inflection point: [gamma', gamma''] vanishes near t = {t}")]
    InflectionPoint { t: f64 },

    #[error("curve is not closed: endpoint jet mismatch {residual:.3e}")]
    NotClosed { residual: f64 },

    #[error("degenerate torsion: [phi', phi'', phi'''] vanishes near t = {t}")]
    DegenerateTorsion { t: f64 },

    #[error("degenerate point at u = {u}: {what}")]
    DegeneratePoint { u: f64, what: String },

    #[error("insufficient jets: order {needed} required, have {got}")]
    InsufficientJets { needed: usize, got: usize },

    #[error("empty focal locus at u = {u}: sigma and mu both vanish")]
    EmptyLocus { u: f64 },

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("singular linear system at sample {index}")]
    SingularSystem { index: usize },

    #[error("eigenvalue not simple: gap {gap:.3e} below threshold")]
    NonSimpleEigenvalue { gap: f64 },

    #[error("quadric section is empty")]
    EmptySection,

    #[error("degenerate tangent: induced form vanishes on a tangent vector")]
    DegenerateTangent,

    #[error("cone apex lies on the section hyperplane")]
    ApexOnHyperplane,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("curve table i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("curve table parse: {0}")]
    Csv(#[from] csv::Error),

    #[error("bad curve table: {0}")]
    BadTable(String),
}
