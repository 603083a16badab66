use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested pose sits on (or numerically next to) a structural
    /// singularity; `measure` is the quantity that fell below its threshold.
    #[error("singular configuration ({what}): measure {measure:e}")]
    SingularConfiguration { what: &'static str, measure: f64 },

    #[error("singular configuration at t = {t} s: {source}")]
    SingularAt {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("oracle residual check failed: {0}")]
    OracleResidual(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn singular(what: &'static str, measure: f64) -> Self {
        Error::SingularConfiguration { what, measure }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Error::SingularConfiguration { .. } | Error::SingularAt { .. })
    }

    /// Process exit code used by the `prp3` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SingularConfiguration { .. } | Error::SingularAt { .. } => 2,
            Error::OracleResidual(_) => 3,
            Error::Config(_) | Error::Io { .. } => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
