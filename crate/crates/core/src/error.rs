//! Error type shared by every module.

use crate::eigen::EigenpairResult;

/// Errors produced by the numeric layers and the command front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested accuracy could not be certified.
    #[error("accuracy error in {context}: requested {requested:e}, achieved bound {achieved:e}")]
    Accuracy {
        context: String,
        requested: f64,
        achieved: f64,
    },

    /// A series was asked for outside its certified range.
    #[error("tau = {tau} lies outside the certified series range [0, {tau_max}]")]
    Range { tau: f64, tau_max: f64 },

    /// Too few nodal points for the number of modes.
    #[error("aliasing: {points} nodal points cannot resolve {modes} modes (need >= {needed})")]
    Aliasing {
        modes: usize,
        points: usize,
        needed: usize,
    },

    /// Malformed numeric input (NaN, mismatched lengths, ...).
    #[error("data error: {0}")]
    Data(String),

    /// The operation is not defined for the given configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// No lower bound can be derived for the requested hypothesis check.
    #[error("audit unavailable: {0}")]
    AuditUnavailable(String),

    /// `sup ‖𝒯u‖` fell below the audit floor during the eigen iteration.
    #[error("degenerate operator: sup norm {sup_norm:e} at iteration {iteration} is below floor {floor:e}")]
    Degenerate {
        iteration: usize,
        sup_norm: f64,
        floor: f64,
    },

    /// The eigen iteration hit `max_iter`; the best iterate is attached.
    #[error("no convergence after {iterations} iterations (best step {best_step:e})")]
    NonConvergence {
        iterations: usize,
        best_step: f64,
        best: Box<EigenpairResult>,
    },

    /// Invalid or unknown configuration entry.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn data(msg: impl Into<String>) -> Error {
    Error::Data(msg.into())
}
