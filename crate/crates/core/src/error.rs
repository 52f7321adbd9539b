use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix [{entries}] has determinant {determinant}, expected 1")]
    NotUnimodular { entries: String, determinant: String },

    #[error("word {word} does not lie in the kernel of abelianization (image {image})")]
    NotInKernel { word: String, image: String },

    #[error("more than {cap} cosets discovered; the subgroup does not have index <= {cap}")]
    IndexCapExceeded { cap: usize },

    #[error("relator letter x{index} out of range for {count} substitution words")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
