use serde::Serialize;
use toro::characters::CharError;
use toro::rep::RepError;
use toro::roots::RootError;

pub const OK: u8 = 0;
pub const INVALID: u8 = 1;
pub const ILL_DEFINED: u8 = 2;
pub const MISMATCH: u8 = 3;

/// Printed to stderr as one JSON object.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub status: u8,
    pub error: String,
    pub message: String,
}

impl CliError {
    pub fn invalid(kind: &str, message: impl Into<String>) -> Self {
        CliError { status: INVALID, error: kind.into(), message: message.into() }
    }
    pub fn mismatch(kind: &str, message: impl Into<String>) -> Self {
        CliError { status: MISMATCH, error: kind.into(), message: message.into() }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        let (status, kind) = match &e {
            RepError::IllDefined { .. } => (ILL_DEFINED, "IllDefined"),
            RepError::AnalyticContinuation => (ILL_DEFINED, "AnalyticContinuation"),
            RepError::Field(_) => (ILL_DEFINED, "Field"),
            RepError::Zeta(_) => (ILL_DEFINED, "Zeta"),
            RepError::EscapesSubmodule { .. } => (MISMATCH, "EscapesSubmodule"),
            RepError::Inconsistent(..) => (MISMATCH, "Inconsistent"),
            RepError::NotColorless(_) => (INVALID, "NotColorless"),
            RepError::NotSpecial(..) => (INVALID, "NotSpecial"),
            RepError::WrongColor(..) => (INVALID, "WrongColor"),
            RepError::BadK(_) => (INVALID, "BadK"),
            RepError::NonGenericK(_) => (INVALID, "NonGenericK"),
            RepError::BadChain(_) => (INVALID, "BadChain"),
            RepError::ForeignLabel(_) => (INVALID, "ForeignLabel"),
            RepError::Invalid(_) => (INVALID, "Invalid"),
        };
        CliError { status, error: kind.into(), message: e.to_string() }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        let kind = match &e {
            RootError::WidthViolation(_) => "WidthViolation",
            RootError::NotColorless(_) => "NotColorless",
            RootError::NotAnAscent(_) => "NotAnAscent",
            RootError::OutOfFamily(_) => "OutOfFamily",
            RootError::InvalidPair(_) => "InvalidPair",
            RootError::PropertyViolated(_) => return CliError::mismatch("PropertyViolated", e.to_string()),
        };
        CliError::invalid(kind, e.to_string())
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::Rep(r) => r.into(),
            CharError::Root(r) => r.into(),
            CharError::EigenvalueMismatch { .. } => CliError::mismatch("EigenvalueMismatch", e.to_string()),
            CharError::NonIntegralPairing(_) => CliError::invalid("NonIntegralPairing", e.to_string()),
        }
    }
}
