use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("singular matrix")]
    Singular,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("direction is not in the interior of the dual cone")]
    NotInDualInterior,
    #[error("zero of f within tolerance of the {edge} edge of the contour")]
    ZeroNearContour { edge: ContourEdge },
    #[error("winding number residue {0} exceeds 0.01")]
    Residue(f64),
    #[error("near-singular point: {0}")]
    NearSingular(String),
    #[error("curve tracing failed: {0}")]
    TraceFailed(String),
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error(
        "truncation too small (root-side tail {lhs_tail:.3e}, spectrum-side tail {rhs_tail:.3e}); try T >= {suggested_t:.3}, R >= {suggested_r:.3}"
    )]
    Truncation {
        lhs_tail: f64,
        rhs_tail: f64,
        suggested_t: f64,
        suggested_r: f64,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Which side of an argument-principle rectangle a near-zero was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContourEdge {
    Bottom,
    Right,
    Top,
    Left,
}

impl std::fmt::Display for ContourEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ContourEdge::Bottom => "bottom",
            ContourEdge::Right => "right",
            ContourEdge::Top => "top",
            ContourEdge::Left => "left",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
