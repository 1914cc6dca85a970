use thiserror::Error;

/// Errors raised by the screening library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScreenError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The response cannot be split into two or more nonempty slices.
    #[error("degenerate slicing: {0}")]
    Degenerate(String),

    #[error("column {index}: {source}")]
    Column {
        index: usize,
        #[source]
        source: Box<ScreenError>,
    },

    #[error("unknown experiment id `{0}`")]
    UnknownExperiment(String),
}

impl ScreenError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ScreenError::InvalidInput(msg.into())
    }

    pub(crate) fn in_column(self, index: usize) -> Self {
        ScreenError::Column {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, ScreenError>;

pub(crate) fn check_finite(values: &[f64], what: &str) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(ScreenError::invalid(format!(
            "{what} has a non-finite entry at position {i}"
        ))),
        None => Ok(()),
    }
}
