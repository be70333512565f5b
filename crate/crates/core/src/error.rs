use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument left the local chart: norm {norm} is not below radius {radius}")]
    OutOfChart { norm: f64, radius: f64 },

    #[error("singular matrix")]
    Singular,

    #[error("Leibniz identity fails on basis triple ({}, {}, {}): defect {defect:?}", triple.0, triple.1, triple.2)]
    LeibnizIdentity {
        triple: (usize, usize, usize),
        defect: Vec<String>,
    },

    #[error("representation axiom {axiom} fails on ({}, {}, {})", at.0, at.1, at.2)]
    RepresentationAxiom {
        axiom: &'static str,
        at: (usize, usize, usize),
    },

    #[error("algebra is not a Lie algebra")]
    NotLie,

    #[error("cochain is not a Lie 2-cocycle: {0}")]
    NotLieCocycle(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
