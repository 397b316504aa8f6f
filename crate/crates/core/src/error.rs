use thiserror::Error;

use crate::geom::Point;
use crate::scanline::IntersectionEvent;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("zero-length segment at ({x}, {y})")]
    ZeroLengthSegment { x: f64, y: f64 },

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    /// Vertex `index` equals its successor (the last vertex is compared with the first).
    #[error("vertex {index} duplicates its successor")]
    DuplicateConsecutiveVertex { index: usize },

    #[error("signed area is zero within tolerance, orientation undefined")]
    DegenerateArea,

    #[error("index range [{lo}, {hi}] out of bounds for {len} vertices")]
    IndexOutOfRange { lo: usize, hi: usize, len: usize },

    #[error("edges {i} and {j} do not properly cross")]
    NotACrossing { i: usize, j: usize },

    /// A pair of non-adjacent edges touch or overlap without a proper crossing.
    #[error("degenerate contact between edges {edge_i} and {edge_j}")]
    DegenerateInput { edge_i: usize, edge_j: usize },

    #[error("correction did not terminate after {corrections} corrections")]
    NonTermination {
        corrections: usize,
        polygon: Vec<Point>,
        events: Vec<IntersectionEvent>,
    },

    #[error("least-squares fit needs at least 3 positive points, got {0}")]
    InsufficientData(usize),

    #[error("invalid corpus spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short stable tag used by the command line for machine-parseable errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } | Error::ZeroLengthSegment { .. } => "geometry",
            Error::TooFewVertices(_) => "too-few-vertices",
            Error::DuplicateConsecutiveVertex { .. } => "duplicate-vertex",
            Error::DegenerateArea => "degenerate-area",
            Error::IndexOutOfRange { .. } => "index",
            Error::NotACrossing { .. } => "not-a-crossing",
            Error::DegenerateInput { .. } => "degenerate",
            Error::NonTermination { .. } => "non-termination",
            Error::InsufficientData(_) => "insufficient-data",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::Parse { .. } => "parse",
            Error::UnknownStrategy { .. } => "usage",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
