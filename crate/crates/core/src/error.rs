use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("text contains no word tokens")]
    EmptyText,

    #[error("rank spectrum has a single frequency block; head value is not identifiable")]
    DegenerateSpectrum,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate text id `{0}`")]
    DuplicateId(String),

    #[error("no syllable rules for language `{0}`")]
    UnknownLanguage(String),

    #[error("reference table has no anchors")]
    EmptyTable,

    #[error("nothing to plot: no results")]
    EmptyResults,

    #[error("group `{0}` not present in results")]
    UnknownGroup(String),

    #[error("{}: not valid UTF-8", .0.display())]
    Encoding(PathBuf),

    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Attaches the offending path to an I/O error.
pub(crate) trait PathContext<T> {
    fn at(self, path: &std::path::Path) -> Result<T>;
}

impl<T> PathContext<T> for std::io::Result<T> {
    fn at(self, path: &std::path::Path) -> Result<T> {
        self.map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
