use thiserror::Error;

use crate::coeff::CoeffError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("invalid input: {0}")]
    Input(String),
    /// A term needed for an exact answer falls outside the requested
    /// degree/length window. The message lists the offending terms.
    #[error("window too small: {0}")]
    Window(String),
    /// The monomial span cannot reproduce the operator on the given degrees.
    #[error("insufficient span: {0}")]
    Span(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
