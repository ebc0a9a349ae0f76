//! Output formats. Every serializer is byte-deterministic for a given input.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{ModelDoc, SCHEMA};
use crate::membership::{AnnotatedOntology, ComplexKind, MembershipEntry, MembershipKey, MembershipValue};
use crate::model::{OntologyModel, PropertyKind};
use crate::normalize::RewriteTrace;
use crate::rulegen::{FuzzyRule, RuleCategory};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("model is not normalized")]
    NotNormalized,
}

fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

fn resource(name: &str) -> String {
    format!("#{}", escape_attr(name))
}

/// Standard-form RDF/XML: classes with subClassOf/equivalentClass, one
/// DatatypeProperty block per holding and one ObjectProperty block per relation.
pub fn emit_normalized_rdf(m: &OntologyModel) -> Result<Vec<u8>, EmitError> {
    if !m.normalized || !m.modifiers.is_empty() {
        return Err(EmitError::NotNormalized);
    }
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<rdf:RDF\n");
    out.push_str("    xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"\n");
    out.push_str("    xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\"\n");
    out.push_str("    xmlns:owl=\"http://www.w3.org/2002/07/owl#\">\n");

    for (name, class) in &m.classes {
        let id = match &class.iri {
            Some(iri) => format!("rdf:about=\"{}\"", escape_attr(iri)),
            None => format!("rdf:ID=\"{}\"", escape_attr(name)),
        };
        let supers: Vec<&str> = m
            .subclass_axioms
            .keys()
            .filter(|s| &s.sub == name)
            .map(|s| s.sup.as_str())
            .collect();
        let equivalents: Vec<&str> = m
            .equivalences
            .keys()
            .filter(|e| e.first() == name && !e.is_reflexive())
            .map(|e| e.second())
            .collect();
        if supers.is_empty() && equivalents.is_empty() {
            let _ = writeln!(out, "  <owl:Class {id}/>");
            continue;
        }
        let _ = writeln!(out, "  <owl:Class {id}>");
        for s in supers {
            let _ = writeln!(out, "    <rdfs:subClassOf rdf:resource=\"{}\"/>", resource(s));
        }
        for e in equivalents {
            let _ = writeln!(out, "    <owl:equivalentClass rdf:resource=\"{}\"/>", resource(e));
        }
        let _ = writeln!(out, "  </owl:Class>");
    }

    let held: std::collections::BTreeSet<&str> =
        m.holdings.keys().map(|h| h.property.as_str()).collect();
    let related: std::collections::BTreeSet<&str> =
        m.relations.keys().map(|r| r.predicate.as_str()).collect();

    for h in m.holdings.keys() {
        let _ = writeln!(
            out,
            "  <owl:DatatypeProperty rdf:ID=\"{}\">\n    <rdfs:domain rdf:resource=\"{}\"/>\n  </owl:DatatypeProperty>",
            escape_attr(&h.property),
            resource(&h.holder)
        );
    }
    for (name, _) in m
        .properties
        .iter()
        .filter(|(n, k)| **k == PropertyKind::Datatype && !held.contains(n.as_str()))
    {
        let _ = writeln!(out, "  <owl:DatatypeProperty rdf:ID=\"{}\"/>", escape_attr(name));
    }

    for r in m.relations.keys() {
        let _ = writeln!(
            out,
            "  <owl:ObjectProperty rdf:ID=\"{}\">\n    <rdfs:domain rdf:resource=\"{}\"/>\n    <rdfs:range rdf:resource=\"{}\"/>\n  </owl:ObjectProperty>",
            escape_attr(&r.predicate),
            resource(&r.subject),
            resource(&r.object)
        );
    }
    for (name, _) in m
        .properties
        .iter()
        .filter(|(n, k)| **k == PropertyKind::Object && !related.contains(n.as_str()))
    {
        let _ = writeln!(out, "  <owl:ObjectProperty rdf:ID=\"{}\"/>", escape_attr(name));
    }

    out.push_str("</rdf:RDF>\n");
    Ok(out.into_bytes())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

/// Structured form of a premise or membership key.
#[derive(Debug, Serialize)]
pub struct KeyDoc {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

impl From<&MembershipKey> for KeyDoc {
    fn from(k: &MembershipKey) -> Self {
        match k {
            MembershipKey::Property(p) => KeyDoc {
                kind: "property",
                property: Some(p.clone()),
                predicate: None,
                class: None,
            },
            MembershipKey::Complex(c) => match &c.kind {
                ComplexKind::PartOf => KeyDoc {
                    kind: "part_of",
                    property: None,
                    predicate: None,
                    class: Some(c.resulting_class.clone()),
                },
                ComplexKind::Relation(p) => KeyDoc {
                    kind: "relation",
                    property: None,
                    predicate: Some(p.clone()),
                    class: Some(c.resulting_class.clone()),
                },
            },
        }
    }
}

#[derive(Serialize)]
struct MembershipDoc<'a> {
    key: String,
    #[serde(flatten)]
    parts: KeyDoc,
    mu: MembershipValue,
    n: usize,
    determiners: &'a std::collections::BTreeSet<String>,
    representatives: &'a std::collections::BTreeSet<String>,
}

impl<'a> MembershipDoc<'a> {
    fn new(key: &MembershipKey, e: &'a MembershipEntry) -> Self {
        MembershipDoc {
            key: key.to_string(),
            parts: key.into(),
            mu: e.mu,
            n: e.representatives.len(),
            determiners: &e.exported,
            representatives: &e.representatives,
        }
    }
}

#[derive(Serialize)]
struct AnnotatedDoc<'a> {
    schema: &'static str,
    model: ModelDoc,
    groups: Vec<&'a std::collections::BTreeSet<String>>,
    membership: Vec<MembershipDoc<'a>>,
}

pub fn annotated_json(a: &AnnotatedOntology) -> Vec<u8> {
    let doc = AnnotatedDoc {
        schema: SCHEMA,
        model: ModelDoc::from(&a.model),
        groups: a.groups.nontrivial().collect(),
        membership: a
            .table
            .entries()
            .map(|(k, e)| MembershipDoc::new(&k, e))
            .collect(),
    };
    to_json(&doc)
}

pub fn annotated_text(a: &AnnotatedOntology) -> String {
    let mut out = String::new();
    for (key, e) in a.table.entries() {
        let dets: Vec<&str> = e.exported.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "{key} mu={} ({}) determiners: {}",
            e.mu,
            e.mu.decimal(),
            dets.join(", ")
        );
    }
    out
}

#[derive(Serialize)]
struct RuleDoc<'a> {
    premise: KeyDoc,
    conclusion: &'a str,
    mu: MembershipValue,
    category: RuleCategory,
}

#[derive(Serialize)]
struct RulesDoc<'a> {
    schema: &'static str,
    rules: Vec<RuleDoc<'a>>,
}

pub fn rules_json(rules: &[FuzzyRule]) -> Vec<u8> {
    to_json(&RulesDoc {
        schema: SCHEMA,
        rules: rules
            .iter()
            .map(|r| RuleDoc {
                premise: (&r.premise).into(),
                conclusion: &r.conclusion,
                mu: r.mu,
                category: r.category,
            })
            .collect(),
    })
}

/// One `IF <premise> (mu=<decimal>) THEN <conclusion>` line per rule.
pub fn rules_text(rules: &[FuzzyRule]) -> String {
    rules.iter().map(|r| format!("{r}\n")).collect()
}

#[derive(Serialize)]
struct TracesDoc<'a> {
    schema: &'static str,
    traces: &'a [RewriteTrace],
}

pub fn traces_json(traces: &[RewriteTrace]) -> Vec<u8> {
    to_json(&TracesDoc {
        schema: SCHEMA,
        traces,
    })
}

pub fn model_json(m: &OntologyModel) -> Vec<u8> {
    crate::ingest::emit_json(m)
}

/// Human-readable listing of a model's elements, one per line.
pub fn model_text(m: &OntologyModel) -> String {
    let mut out = String::new();
    for name in m.classes.keys() {
        let _ = writeln!(out, "class {name}");
    }
    for (name, kind) in &m.properties {
        let kind = match kind {
            PropertyKind::Object => "object",
            PropertyKind::Datatype => "datatype",
        };
        let _ = writeln!(out, "property {name} ({kind})");
    }
    for (h, o) in &m.holdings {
        let _ = writeln!(out, "holding {} {} [{}]", h.holder, h.property, String::from(*o));
    }
    for (r, o) in &m.relations {
        let _ = writeln!(
            out,
            "relation {} {} {} [{}]",
            r.subject,
            r.predicate,
            r.object,
            String::from(*o)
        );
    }
    for (s, o) in &m.subclass_axioms {
        let _ = writeln!(out, "subclass {} {} [{}]", s.sub, s.sup, String::from(*o));
    }
    for (e, o) in &m.equivalences {
        let _ = writeln!(
            out,
            "equivalent {} {} [{}]",
            e.first(),
            e.second(),
            String::from(*o)
        );
    }
    out
}
