use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        })
    }
}

/// What a command handler produces.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub summary: String,
}

impl Outcome {
    pub fn ok(payload: Value, summary: impl Into<String>) -> Self {
        Self {
            status: Status::Ok,
            payload,
            summary: summary.into(),
        }
    }

    pub fn judged(passed: bool, payload: Value, summary: impl Into<String>) -> Self {
        Self {
            status: if passed { Status::Ok } else { Status::Violation },
            payload,
            summary: summary.into(),
        }
    }
}

/// A handler failure. `Violation` carries data that parsed but failed a check
/// on the way in (e.g. a bracket file over an invalid biquandle).
#[derive(Debug)]
pub enum CliError {
    Error(String),
    Violation { payload: Value, summary: String },
}

impl CliError {
    pub fn msg(m: impl Into<String>) -> Self {
        CliError::Error(m.into())
    }

    pub fn into_outcome(self) -> Outcome {
        match self {
            CliError::Error(m) => Outcome {
                status: Status::Error,
                payload: serde_json::json!({ "error": m }),
                summary: m,
            },
            CliError::Violation { payload, summary } => Outcome {
                status: Status::Violation,
                payload,
                summary,
            },
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Error(e.to_string())
    }
}

pub type Res<T> = Result<T, CliError>;

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub wall_time_ms: f64,
}
