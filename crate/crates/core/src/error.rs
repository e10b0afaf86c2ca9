use thiserror::Error;

/// Errors produced by model construction, exact analytics and simulation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("job type probabilities sum to {sum} (must equal 1 within {tol})")]
    ProbabilitySum { sum: f64, tol: f64 },

    #[error("job type {index} has probability {prob} (must be > 0)")]
    NonPositiveProbability { index: usize, prob: f64 },

    #[error("job type {index} has an empty server subset")]
    EmptyTypeSubset { index: usize },

    #[error("duplicate job type subset {subset}")]
    DuplicateTypeSubset { subset: String },

    #[error("server index {server} out of range 1..={count}")]
    ServerOutOfRange { server: usize, count: usize },

    #[error("server count {count} not supported (need 1..=64)")]
    ServerCount { count: usize },

    #[error("server {server} has negative speed {speed}")]
    NegativeSpeed { server: usize, speed: f64 },

    #[error("average server speed must be strictly positive")]
    ZeroAverageSpeed,

    #[error("arrival rate {lambda} must be strictly positive and finite")]
    NonPositiveLambda { lambda: f64 },

    #[error("{family} builder requires {requirement}, got N = {n}")]
    FamilyShape {
        family: &'static str,
        requirement: &'static str,
        n: usize,
    },

    #[error("epsilon {epsilon} outside the open interval (0, 1)")]
    EpsilonOutOfRange { epsilon: f64 },

    #[error("prefix of job types must be non-empty")]
    EmptyPrefix,

    #[error("type index {index} out of range for a model with {count} job types")]
    InvalidTypeIndex { index: usize, count: usize },

    #[error("subset enumeration over {items} items exceeds the cap of {cap} (override via options)")]
    SubsetCapExceeded { items: usize, cap: usize },

    #[error(
        "ordered type-vector enumeration for {types} job types needs {terms} terms, \
         above the cap of {cap} types (override via options)"
    )]
    TypeCapExceeded { types: usize, cap: usize, terms: u128 },

    #[error("state enumeration needs {required} terms, above the budget of {budget}")]
    TermBudgetExceeded { required: u128, budget: u128 },

    #[error("model is not stable: {detail}")]
    Unstable { detail: String },

    #[error("local stability (resource pooling) does not hold: {detail}")]
    LocalStabilityRequired { detail: String },

    #[error("geometric factor {factor:e} for prefix {prefix} is within 1e-14 of zero")]
    SingularPgfFactor { factor: f64, prefix: String },

    #[error("z vector has {got} entries, model has {expected} job types")]
    ZLength { expected: usize, got: usize },

    #[error("z entry {index} has modulus {value} > 1")]
    ZOutOfRange { index: usize, value: f64 },

    #[error("operation requires a graph model (every job type on exactly two servers)")]
    NotGraphModel,

    #[error("operation requires identical server speeds")]
    NonIdenticalSpeeds,

    #[error("load {load} outside the supported range {range}")]
    LoadOutOfRange { load: f64, range: &'static str },

    #[error("negative t entry {value} at index {index} (MGF test points must be >= 0)")]
    NegativeTestPoint { index: usize, value: f64 },

    #[error("models have different server counts ({a} vs {b})")]
    ServerCountMismatch { a: usize, b: usize },

    #[error("horizon {horizon} must be positive and greater than warmup {warmup}")]
    BadHorizon { horizon: f64, warmup: f64 },

    #[error("replication count must be at least 1")]
    ZeroReplications,

    #[error("model file: {path}: {message}")]
    ModelFile { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
