//! Named check rows for semantic reports.

use alloc::string::String;

/// Outcome of one semantic check.
///
/// `Refused` means the check's hypothesis does not hold (for example a
/// left-adjoint check on a topos that is not completely connected, or a
/// search that hit its node budget); it is distinct from `Fail`, which
/// reports an actual violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
    Refused,
}

/// One row of a report: a stable name, a status, and an optional witness
/// (a counterexample for failures, a reason for refusals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn refused(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Refused,
            witness: Some(reason.into()),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness)
        }
    }
}
