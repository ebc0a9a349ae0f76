use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// A non-fatal finding produced while ingesting, validating or normalizing a model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub location: Option<String>,
}

impl Diagnostic {
    pub fn warning(code: &str, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            code: code.to_owned(),
            message: message.into(),
            location: None,
        }
    }

    pub fn error(code: &str, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            code: code.to_owned(),
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}[{}]: {}", self.code, self.message)?;
        if let Some(loc) = &self.location {
            write!(f, " ({loc})")?;
        }
        Ok(())
    }
}

/// Diagnostic codes emitted across the pipeline.
pub mod codes {
    pub const UNSUPPORTED_CONSTRUCT: &str = "unsupported-construct";
    pub const IGNORED_IMPORT: &str = "ignored-import";
    pub const UNKNOWN_JSON_KEY: &str = "unknown-json-key";
    pub const DANGLING_CLASS: &str = "dangling-class";
    pub const UNDECLARED_PROPERTY: &str = "undeclared-property";
    pub const NO_DOMAIN_RANGE: &str = "property-without-domain-range";
    pub const SELF_EQUIVALENCE: &str = "self-equivalence";
    pub const UNDECLARED_INVERSE: &str = "undeclared-inverse";
    pub const EMPTY_INTERSECTION: &str = "empty-intersection";
    pub const CYCLIC_HIERARCHY: &str = "cyclic-hierarchy";
    pub const SELF_SUBCLASS: &str = "self-subclass";
}
