use thiserror::Error;

/// Crate-wide error type. Every precondition failure maps onto one of these
/// variants so the CLI can emit structured error reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("need at least {needed} distinct points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("point set too large for {op}: {len} points exceeds limit {limit}")]
    TooLarge {
        op: &'static str,
        len: usize,
        limit: usize,
    },

    #[error("circle too close to a zero: |f| = {modulus:.3e} at angle {theta:.6}")]
    CircleNearZero { theta: f64, modulus: f64 },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("quotient not regular at the origin (divisor vanishes to order {divisor_order}, numerator only to order {numerator_order})")]
    NotRegularAtOrigin {
        divisor_order: usize,
        numerator_order: usize,
    },

    #[error("zero-count mismatch: claimed {claimed}, certified count {counted}")]
    ZeroCountMismatch { claimed: usize, counted: usize },

    #[error("inconsistent geometry: {0}")]
    Geometry(String),

    #[error("recurrence unrepresentable at index {k}: a_k nonzero but all {m} predecessors vanish")]
    RecurrenceUnrepresentable { k: usize, m: usize },

    #[error("domination base is zero: first {upto} coefficients all vanish at this radius")]
    ZeroBase { upto: usize },

    #[error("bound is infinite: set has at most d = {d} points, so c_{{d,alpha}} = 0")]
    InfiniteBound { d: usize },

    #[error("missing recurrence table entry for index {k}")]
    MissingTableEntry { k: usize },

    #[error("input not found: {path}")]
    InputNotFound { path: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON input: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable kind tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyPointSet => "empty_point_set",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::NonFinite => "non_finite",
            Error::TooLarge { .. } => "too_large",
            Error::CircleNearZero { .. } => "circle_near_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotRegularAtOrigin { .. } => "not_regular_at_origin",
            Error::ZeroCountMismatch { .. } => "zero_count_mismatch",
            Error::Geometry(_) => "inconsistent_geometry",
            Error::RecurrenceUnrepresentable { .. } => "recurrence_unrepresentable",
            Error::ZeroBase { .. } => "zero_base",
            Error::InfiniteBound { .. } => "infinite_bound",
            Error::MissingTableEntry { .. } => "missing_table_entry",
            Error::InputNotFound { .. } => "input_not_found",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
