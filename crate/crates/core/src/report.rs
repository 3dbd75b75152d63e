//! Shared pieces of the structured reports.

use serde::Serialize;

/// A dimension stated twice: once from a closed formula (`FORMULA`) and
/// once recomputed as the rank of an explicit linear map (`RANK`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checked {
    pub formula: usize,
    pub rank: usize,
    pub agree: bool,
}

impl Checked {
    pub fn new(formula: usize, rank: usize) -> Self {
        Checked {
            formula,
            rank,
            agree: formula == rank,
        }
    }
}

/// Formats a boolean check as the fixed-width marker used in text reports.
pub fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
