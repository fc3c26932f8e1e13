use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    /// Malformed config text; the message carries toml's line/column.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("unknown preset `{0}` (expected one of fig1, fig2, fig3, fig4, fig5)")]
    UnknownPreset(String),
    #[error("dimension error: {0}")]
    Dimension(decoherence_core::Error),
    #[error("{0}")]
    Model(decoherence_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl AppError {
    /// Process exit status: 2 for bad input, 3 for bad dimensions, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Parse { .. } | AppError::Config(_) | AppError::UnknownPreset(_) => 2,
            AppError::Dimension(_) => 3,
            AppError::Model(_) | AppError::Io { .. } | AppError::Pool(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<decoherence_core::Error> for AppError {
    fn from(e: decoherence_core::Error) -> Self {
        use decoherence_core::Error as E;
        match e {
            E::ZeroDimension(_) | E::IndexOutOfRange { .. } | E::DimensionMismatch { .. } => {
                AppError::Dimension(e)
            }
            E::InvalidCoupling(_) | E::InvalidConfig(_) => AppError::Config(e.to_string()),
            E::NotNormalized { .. } => AppError::Model(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
