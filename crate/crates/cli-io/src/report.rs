//! Report shape shared by every subcommand: one JSON document, one text
//! rendering, one exit code. The two renderings always agree on verdicts.

use serde_json::Value;

/// Exit code for a passing run or an affirmative verdict.
pub const EXIT_OK: u8 = 0;
/// Exit code for a negative verdict on well-formed input.
pub const EXIT_NEGATIVE: u8 = 1;
/// Exit code for malformed or oversize input.
pub const EXIT_INPUT: u8 = 2;
/// Exit code for a verdict the model leaves open.
pub const EXIT_UNKNOWN: u8 = 3;

#[derive(Clone, Debug)]
pub struct Report {
    pub exit: u8,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(exit: u8, json: Value, text: impl Into<String>) -> Report {
        Report {
            exit,
            json,
            text: text.into(),
        }
    }

    /// Input-error report: exit 2 with the offending detail in both renderings.
    pub fn input_error(detail: impl Into<String>) -> Report {
        let detail = detail.into();
        Report {
            exit: EXIT_INPUT,
            json: serde_json::json!({ "error": detail }),
            text: format!("error: {detail}"),
        }
    }

    /// Canonical JSON bytes: pretty-printed with sorted keys (the serde_json
    /// map is ordered) and a trailing newline, so identical reports are
    /// byte-identical.
    pub fn json_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_string_pretty(&self.json)
            .expect("report JSON serializes")
            .into_bytes();
        out.push(b'\n');
        out
    }
}
