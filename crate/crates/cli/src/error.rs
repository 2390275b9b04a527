use emoculture::circumplex::CircumplexError;
use emoculture::corpus::CorpusError;
use emoculture::genprob::GenprobError;
use emoculture::metrics::MetricsError;
use emoculture::study::StudyError;
use thiserror::Error;

/// Failure of a CLI run. Bad inputs exit with 1, numerical dead ends with 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Output { .. } => 1,
            CliError::Computation(_) => 2,
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError::Validation(message.into())
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        match e {
            MetricsError::UnknownSetting { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Computation(e.to_string()),
        }
    }
}

impl From<CircumplexError> for CliError {
    fn from(e: CircumplexError) -> Self {
        match e {
            CircumplexError::DegenerateAxis { .. } | CircumplexError::DegeneratePlane { .. } => {
                CliError::Computation(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<GenprobError> for CliError {
    fn from(e: GenprobError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<StudyError> for CliError {
    fn from(e: StudyError) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
