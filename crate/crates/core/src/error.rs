use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where a record came from: a file line, or an in-memory builder call.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Origin {
    pub source: Option<String>,
    pub line: Option<usize>,
}

impl Origin {
    pub fn line(source: &str, line: usize) -> Self {
        Origin {
            source: Some(source.to_string()),
            line: Some(line),
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.source, self.line) {
            (Some(s), Some(l)) => write!(f, "{s}:{l}"),
            (Some(s), None) => f.write_str(s),
            _ => f.write_str("<input>"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{at}: parse error: {message}")]
    Parse { at: Origin, message: String },

    #[error("{at}: unknown class `{id}`")]
    UnknownClass { id: String, at: Origin },

    #[error("{at}: unknown entity `{id}`")]
    UnknownEntity { id: String, at: Origin },

    #[error("{at}: unknown relation `{id}`")]
    UnknownRelation { id: String, at: Origin },

    #[error("{at}: duplicate {what} `{id}`")]
    Duplicate {
        what: &'static str,
        id: String,
        at: Origin,
    },

    #[error("class hierarchy cycle through `{0}`")]
    HierarchyCycle(String),

    #[error("class hierarchy must have exactly one root, found {0:?}")]
    RootCount(Vec<String>),

    #[error("{}: domain violation: {0}", .0.at)]
    DomainViolation(Box<Violation>),

    #[error("{}: range violation: {0}", .0.at)]
    RangeViolation(Box<Violation>),

    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// A fact end whose class does not fit the relation's signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub entity: String,
    pub class: String,
    pub relation: String,
    pub expected: String,
    pub at: Origin,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` has class `{}`, not a subclass of `{}` required by `{}`",
            self.entity, self.class, self.expected, self.relation
        )
    }
}

pub(crate) trait IoContext<T> {
    fn io_context(self, path: &Path) -> Result<T>;
}

impl<T> IoContext<T> for std::io::Result<T> {
    fn io_context(self, path: &Path) -> Result<T> {
        self.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
