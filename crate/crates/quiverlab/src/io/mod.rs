//! File formats: the line-oriented quiver text format, the JSON mirror, the
//! morphism text format, DOT export, and the JSON wire shapes for
//! certificates.

pub mod dot;
pub mod morph;
pub mod text;
pub mod wire;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Structure(String),
}
