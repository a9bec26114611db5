//! Exact construction and verification of spectral R-matrices for the twisted
//! quantum affine superalgebras `U_q[gl(m|n)^(2)]` on minimal representations.
//!
//! Everything is exact: scalars are big rationals, `q = t^2` with rational `t`,
//! and coefficient functions are reduced rational functions of `z`.
//!
//! ```
//! use ybe_forge::{liealg::AlgebraSignature, scalars::{DeformParam, Rat}, tpg};
//!
//! let sig = AlgebraSignature::new(2, 4).unwrap();
//! let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
//! let graph = tpg::build_extended_ttpg(&tpg::decomposition_grid(1, 1, &sig).unwrap(), &sig);
//! let rho = tpg::solve_coefficients(&graph, &dp).unwrap();
//! assert_eq!(rho.len(), 3);
//! ```

pub mod cli;
pub mod graded;
pub mod liealg;
pub mod linalg;
pub mod reps;
pub mod rmatrix;
pub mod scalars;
pub mod tpg;
pub mod verify;

pub use scalars::{DeformParam, Rat, RatFuncZ};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent graph: {0}")]
    Inconsistent(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Degenerate(_) | Error::Pole(_) => 3,
            _ => 1,
        }
    }
}
