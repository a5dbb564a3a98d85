use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// Failure to parse the monomial / tridegree / index text syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {what} from {input:?}: {reason}")]
pub struct TextError {
    pub what: &'static str,
    pub input: String,
    pub reason: String,
}

impl TextError {
    pub(crate) fn new(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Self {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("unknown class name {0:?}")]
    UnknownName(String),
    #[error("parameters out of range for {name}: {detail}")]
    ParamsOutOfRange { name: String, detail: String },
    #[error("invalid differential range r = {r_min}..={r_max} (need 2 <= r_min <= r_max)")]
    InvalidRange { r_min: u32, r_max: u32 },
    #[error("class {0} has no May representative")]
    MissingRepresentative(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LesError {
    #[error("sphere table does not cover cell ({s},{t})")]
    InsufficientWindow { s: i64, t: i64 },
    #[error("window of {cells} cells exceeds the cap of {cap}")]
    WindowTooLarge { cells: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreekError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no Thom map dictionary entry for {0}")]
    NoDictionaryEntry(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("degree of {0} is not determined")]
    DegreeUncertain(String),
}
