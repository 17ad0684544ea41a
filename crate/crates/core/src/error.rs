use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("degenerate pairing: d*kappa - pi^2 = 0 (d={d}, pi={pi}, kappa={kappa})")]
    DegeneratePairing { d: String, pi: String, kappa: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("invalid constant term for {op}: expected {expected}, found {found}")]
    InvalidConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("series is not invertible under composition: {0}")]
    NotInvertible(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("inconsistent samples: overdetermined system has nonzero residual ({0})")]
    InconsistentSamples(String),
    #[error("sample design is rank deficient: rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("insufficient surplus samples: {have} surplus rows, {need} required")]
    TooFewSamples { have: usize, need: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed cohomology class `{0}`")]
    Class(String),
    #[error("malformed bundle literal `{0}`")]
    Bundle(String),
    #[error("malformed polynomial `{0}`")]
    Poly(String),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache record: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
