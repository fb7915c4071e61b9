use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter s = {s} outside profile domain [{start}, {end}]")]
    OutsideDomain { s: f64, start: f64, end: f64 },

    #[error("regularity lost: x^2 + h^2 cos^2(theta) = {value:e} at s = {s}")]
    Regularity { s: f64, value: f64 },

    #[error("halfspace violated: <p, v> = {value:e} at (s, t) = ({s}, {t})")]
    Halfspace { s: f64, t: f64, value: f64 },

    #[error("degenerate normal denominator {value:e}")]
    DegenerateNormal { value: f64 },

    #[error("finite-difference stencil [{lo}, {hi}] leaves profile domain [{start}, {end}]")]
    StencilOutsideDomain { lo: f64, hi: f64, start: f64, end: f64 },

    #[error("coefficient basis matrix is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("falsification grid is empty")]
    EmptyGrid,

    #[error("every profile in the falsification grid was skipped")]
    AllSkipped,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of a geometric precondition (domain, regularity,
    /// halfspace, degenerate normal), as opposed to bad input or I/O.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::OutsideDomain { .. }
                | Error::Regularity { .. }
                | Error::Halfspace { .. }
                | Error::DegenerateNormal { .. }
                | Error::StencilOutsideDomain { .. }
        )
    }
}
