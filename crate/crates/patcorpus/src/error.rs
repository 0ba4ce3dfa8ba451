use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A record is structurally broken: wrong root element, missing
    /// required bibliographic elements, or unreadable XML.
    #[error("malformed record: {0}")]
    MalformedRecord(String),

    /// A JPO gazette carried a kind-of-jp outside {A, T, S}.
    #[error("unknown kind-of-jp {0:?}")]
    UnknownKind(String),

    /// A PCT application number that matches none of the accepted forms.
    #[error("unparseable PCT number {0:?}")]
    UnparseablePctNumber(String),

    /// The translation list does not cover the document's sentences.
    #[error("got {got} translations for {expected} sentences")]
    LengthMismatch { expected: usize, got: usize },

    /// Brute-force alignment instance too large to enumerate.
    #[error("instance {n_ja}x{n_en} exceeds the brute-force limit of 8")]
    SizeLimit { n_ja: usize, n_en: usize },

    /// Caller handed a writer links that break the alignment invariants.
    #[error("alignment link invariant violated: {0}")]
    InvariantViolation(String),

    /// Fixture spec with out-of-range parameters.
    #[error("invalid fixture spec: {0}")]
    InvalidSpec(String),

    /// Bad alignment parameter (unknown bead, negative penalty, ...).
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// A sentence id that does not follow the id grammar.
    #[error("invalid sentence id {0:?}")]
    BadSentenceId(String),

    /// A pair id that does not follow the JP<num>-US<num> grammar.
    #[error("invalid pair id {0:?}")]
    BadPairId(String),

    /// I/O error carrying the path it happened on.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedRecord(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Accumulator for non-fatal data issues (skipped records, malformed lines,
/// discarded duplicates). Stages thread one of these through and report the
/// count at the end; the CLI turns an excessive count into a failure.
#[derive(Debug, Clone, Default)]
pub struct Warnings {
    messages: Vec<String>,
}

impl Warnings {
    pub fn push(&mut self, msg: impl Into<String>) {
        self.messages.push(msg.into());
    }

    pub fn count(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn merge(&mut self, other: Warnings) {
        self.messages.extend(other.messages);
    }
}
