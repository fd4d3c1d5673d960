use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    /// First column is not a nonzero multiple of `e_1`, so `A^{-T}` does not
    /// preserve the dual orbit.
    #[error("matrix does not preserve the dual orbit: entry ({row}, 1) is nonzero")]
    NotInSO { row: usize },

    #[error("exact product requires evaluating e^r for r = {0}")]
    Exactness(String),

    #[error("point leaves the dual orbit (first coordinate {0})")]
    Orbit(f64),

    #[error("leading coefficient c_2 must be nonzero")]
    ZeroLeadingCoefficient,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NotSquare { .. } => "not_square",
            Error::SingularMatrix => "singular_matrix",
            Error::NotInSO { .. } => "not_in_s_o",
            Error::Exactness(_) => "exactness",
            Error::Orbit(_) => "orbit_not_preserved",
            Error::ZeroLeadingCoefficient => "zero_leading_coefficient",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Parse(_) => "parse",
        }
    }

    /// Errors caused by the mathematics of the input rather than its shape.
    pub fn is_math_domain(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix
                | Error::NotInSO { .. }
                | Error::Exactness(_)
                | Error::Orbit(_)
                | Error::ZeroLeadingCoefficient
        )
    }
}
