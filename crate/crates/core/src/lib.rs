//! Turn a single OWL ontology into identifying fuzzy rules.
//!
//! The pipeline has four steps, each usable on its own:
//!
//! 1. [`ingest`] reads a small RDF/XML subset of OWL (or the JSON interchange
//!    form) into an [`OntologyModel`].
//! 2. [`normalize`] adds implied elements and rewrites symmetric, inverse and
//!    transitive properties and intersection classes into plain relations and
//!    subclass axioms, iterating to a fixpoint.
//! 3. [`membership`] gives every datatype property and every
//!    `(relation, resulting class)` complex the value `1/n`, where `n` counts the
//!    classes determining it, equivalent classes counted once.
//! 4. [`rulegen`] emits one `IF <premise> THEN <class>` rule per determining
//!    class, carrying the premise's value.
//!
//! ```
//! use fuzzonto::ingest::{parse_document, Format, ParseOptions};
//! use fuzzonto::{membership, normalize, rulegen};
//!
//! let owl = r##"<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
//!                        xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
//!                        xmlns:owl="http://www.w3.org/2002/07/owl#">
//!   <owl:Class rdf:ID="Paris"><rdfs:subClassOf rdf:resource="#France"/></owl:Class>
//! </rdf:RDF>"##;
//! let parsed = parse_document(owl.as_bytes(), Format::RdfXml, ParseOptions::default()).unwrap();
//! let normalized = normalize::normalize(&parsed.model, Default::default()).unwrap();
//! let annotated = membership::assign_all(&normalized.model);
//! let rules = rulegen::generate_rules(&annotated);
//! assert_eq!(rules[0].to_string(), "IF part_of France (mu=1.000000) THEN Paris");
//! ```

pub mod cli;
pub mod diag;
pub mod emit;
pub mod groups;
pub mod ingest;
pub mod membership;
pub mod model;
pub mod normalize;
pub mod rulegen;

pub use diag::{Diagnostic, Severity};
pub use membership::{AnnotatedOntology, ComplexKey, MembershipKey, MembershipValue};
pub use model::{OntologyModel, Origin, RuleId};
pub use rulegen::FuzzyRule;
