use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid index: n = {n}, k = {k} (need n >= 1, k >= 0)")]
    InvalidIndex { n: i64, k: i64 },

    #[error("{what} = {value} outside the admissible domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("intermediate value overflowed while evaluating {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("point is off the manifold: {0}")]
    OffManifold(String),

    #[error("Gram matrix is numerically singular at pivot {pivot} ({samples} samples); increase the sample count")]
    SingularGram { pivot: usize, samples: usize },

    #[error("quadrature order {got} too low for degree {k}; need at least {need}")]
    QuadratureOrder { got: usize, need: usize, k: u32 },

    #[error("empty angle window at k = {k}: lower edge {lo} >= upper edge {hi}")]
    EmptyWindow { k: u32, lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("serialization: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
