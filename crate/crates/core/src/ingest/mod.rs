//! Loading ontologies from the RDF/XML subset or the JSON interchange form.

mod json;
mod rdfxml;
mod validate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diag::Diagnostic;
use crate::model::OntologyModel;

pub use json::{emit_json, load_json, ModelDoc, SCHEMA};
pub use validate::{drop_self_equivalences, validate_model};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("unsupported construct `{construct}` at {location}")]
    UnsupportedConstruct { construct: String, location: String },
    #[error("identifier `{name}` declared as {first} and as {second}")]
    DuplicateIdentifier {
        name: String,
        first: &'static str,
        second: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    RdfXml,
    Json,
}

impl Format {
    /// Guesses the format from a file name; anything not ending in `.json` is RDF/XML.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::RdfXml,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rdfxml" | "owl" | "xml" => Ok(Format::RdfXml),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown input format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::RdfXml => "rdfxml",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Fail on constructs outside the supported subset instead of warning.
    pub strict: bool,
}

/// A freshly parsed model together with the warnings raised while reading it.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub model: OntologyModel,
    pub warnings: Vec<Diagnostic>,
}

pub fn parse_document(
    bytes: &[u8],
    format: Format,
    options: ParseOptions,
) -> Result<Parsed, IngestError> {
    match format {
        Format::RdfXml => rdfxml::parse(bytes, options),
        Format::Json => load_json(bytes),
    }
}

/// Local identifier of a reference: the part after `#`, else after the last `/`.
pub fn local_name(reference: &str) -> &str {
    if let Some((_, frag)) = reference.rsplit_once('#') {
        frag
    } else if let Some((_, last)) = reference.rsplit_once('/') {
        last
    } else {
        reference
    }
}
