use std::fmt;

use thiserror::Error;

/// A single violated triangulation-quiver axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices { found: usize },
    OutDegree { vertex: String, found: usize },
    InDegree { vertex: String, found: usize },
    FSourceMismatch { arrow: String },
    FCubeNotIdentity { arrow: String },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { found } => {
                write!(f, "quiver has {found} vertices, at least 3 are required")
            }
            Violation::OutDegree { vertex, found } => {
                write!(f, "vertex {vertex} is the source of {found} arrows, expected 2")
            }
            Violation::InDegree { vertex, found } => {
                write!(f, "vertex {vertex} is the target of {found} arrows, expected 2")
            }
            Violation::FSourceMismatch { arrow } => {
                write!(f, "s(f({arrow})) differs from t({arrow})")
            }
            Violation::FCubeNotIdentity { arrow } => write!(f, "f^3({arrow}) differs from {arrow}"),
            Violation::Disconnected { components } => {
                write!(f, "quiver is not connected ({components} components)")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum SawError {
    #[error("input error: {0}")]
    Input(String),
    #[error("triangulation quiver axioms violated: {}", join(.0))]
    Axioms(Vec<Violation>),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size limit exceeded: {what} needs {needed}, limit is {limit}")]
    SizeLimit {
        what: String,
        needed: usize,
        limit: usize,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, SawError>;
