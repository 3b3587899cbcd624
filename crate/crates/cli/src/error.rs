use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: moonshine_core::Error,
    },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for malformed requests, 1 for failures while computing.
    pub fn exit_code(&self) -> i32 {
        use moonshine_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core { source, .. } => match source {
                E::UnknownClassLabel(_)
                | E::InvalidArgument(_)
                | E::EvenArgument(_)
                | E::EvenR(_)
                | E::NotCoprime { .. }
                | E::ParityViolation(_)
                | E::CuspLevelMismatch { .. }
                | E::LevelMismatch(_)
                | E::NonpositiveArgument(_) => 2,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches a description of the computation to a core error.
pub trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T> Context<T> for moonshine_core::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|source| CliError::Core {
            context: what(),
            source,
        })
    }
}
