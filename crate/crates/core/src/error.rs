use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("eigenvalue {index} failed to deflate within {sweeps} QR sweeps")]
    NoConvergence { index: usize, sweeps: usize },
    #[error("complex root {re}{im:+}i has no conjugate partner")]
    UnpairedComplexRoot { re: f64, im: f64 },

    #[error("invalid geometry: characteristic length must be positive (got {0})")]
    InvalidGeometry(f64),
    #[error("correlation out of domain: {0}")]
    CorrelationDomain(String),
    #[error("invalid property: {0}")]
    InvalidProperty(String),

    #[error("unknown preset '{name}'; valid presets: {}", crate::plant::PRESET_NAMES.join(", "))]
    UnknownPreset { name: String },
    #[error("degenerate body '{0}': mass * cp must be positive")]
    DegenerateBody(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("system is not controllable (controllability rank {rank} < {order})")]
    Uncontrollable { rank: usize, order: usize },
    #[error("system is not observable (observability rank {rank} < {order})")]
    Unobservable { rank: usize, order: usize },
    #[error("controllability matrix is ill-conditioned (relative residual {0:e})")]
    IllConditioned(f64),
    #[error("only single-input single-output placement is supported")]
    NotSiso,
    #[error("requested pole {re}{im:+}i is not in the open left half-plane")]
    UnstablePole { re: f64, im: f64 },
    #[error("closed-loop DC gain is zero; feedforward is undefined")]
    SingularDcGain,
}

impl Error {
    /// True for failures meaning the requested design cannot be realised.
    pub fn is_design_infeasible(&self) -> bool {
        matches!(
            self,
            Error::Uncontrollable { .. }
                | Error::Unobservable { .. }
                | Error::IllConditioned(_)
                | Error::NotSiso
                | Error::UnstablePole { .. }
                | Error::SingularDcGain
        )
    }

    /// True for failures caused by bad user input rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownPreset { .. }
                | Error::InvalidConfig(_)
                | Error::InvalidGeometry(_)
                | Error::InvalidProperty(_)
                | Error::DegenerateBody(_)
                | Error::UnpairedComplexRoot { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
