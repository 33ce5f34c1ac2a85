use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier mismatch: cannot combine {left} with {right}")]
    CarrierMismatch { left: String, right: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("closure exceeded order cap {cap} (reached {reached} elements)")]
    OrderCapExceeded { cap: usize, reached: usize },

    #[error("empty generator list")]
    NoGenerators,

    #[error("subgroup is not normal in {0}")]
    NotNormal(String),

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    OverLimit { order: usize, limit: usize },

    #[error("homomorphism check failed: {0}")]
    NotHomomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no complement guarantee: gcd(|N| = {kernel}, [H:N] = {index}) != 1")]
    NotCoprime { kernel: usize, index: usize },

    #[error("complement search failed: {0}")]
    ComplementSearch(String),

    #[error("model violation: {0}")]
    ModelViolation(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("profile incomplete: missing {0}")]
    ProfileIncomplete(&'static str),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("empty family: no records to fit")]
    EmptyFamily,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
