//! JSON interchange form of [`OntologyModel`].
//!
//! Every collection is emitted as a lexicographically sorted array. Unknown
//! top-level keys are reported as warnings and otherwise ignored.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{IngestError, Parsed};
use crate::diag::{codes, Diagnostic};
use crate::model::{
    ClassRef, Equivalence, OntologyModel, Origin, PropertyHolding, PropertyKind, RawModifier,
    RelationAssertion, SubclassAxiom,
};

pub const SCHEMA: &str = "fuzzonto/1";

const KNOWN_KEYS: [&str; 9] = [
    "classes",
    "properties",
    "holdings",
    "relations",
    "subclass",
    "equivalences",
    "modifiers",
    "normalized",
    "schema",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyDoc {
    pub name: String,
    pub kind: PropertyKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged<T> {
    #[serde(flatten)]
    pub element: T,
    pub origin: Origin,
}

/// Serialized layout of a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(default)]
    pub classes: Vec<ClassRef>,
    #[serde(default)]
    pub properties: Vec<PropertyDoc>,
    #[serde(default)]
    pub holdings: Vec<Tagged<PropertyHolding>>,
    #[serde(default)]
    pub relations: Vec<Tagged<RelationAssertion>>,
    #[serde(default)]
    pub subclass: Vec<Tagged<SubclassAxiom>>,
    #[serde(default)]
    pub equivalences: Vec<Tagged<Equivalence>>,
    #[serde(default)]
    pub modifiers: Vec<RawModifier>,
    #[serde(default)]
    pub normalized: bool,
    #[serde(default = "default_schema")]
    pub schema: String,
}

fn default_schema() -> String {
    SCHEMA.to_owned()
}

fn tagged<K: Clone>(map: &std::collections::BTreeMap<K, Origin>) -> Vec<Tagged<K>> {
    map.iter()
        .map(|(k, o)| Tagged {
            element: k.clone(),
            origin: *o,
        })
        .collect()
}

impl From<&OntologyModel> for ModelDoc {
    fn from(m: &OntologyModel) -> Self {
        ModelDoc {
            classes: m.classes.values().cloned().collect(),
            properties: m
                .properties
                .iter()
                .map(|(name, kind)| PropertyDoc {
                    name: name.clone(),
                    kind: *kind,
                })
                .collect(),
            holdings: tagged(&m.holdings),
            relations: tagged(&m.relations),
            subclass: tagged(&m.subclass_axioms),
            equivalences: tagged(&m.equivalences),
            modifiers: m.modifiers.iter().cloned().collect(),
            normalized: m.normalized,
            schema: SCHEMA.to_owned(),
        }
    }
}

impl From<ModelDoc> for OntologyModel {
    fn from(doc: ModelDoc) -> Self {
        // Loaded verbatim: no class auto-registration, so dangling references
        // survive for validate_model to report.
        OntologyModel {
            classes: doc
                .classes
                .into_iter()
                .map(|c| (c.name.clone(), c))
                .collect(),
            properties: doc
                .properties
                .into_iter()
                .map(|p| (p.name, p.kind))
                .collect(),
            holdings: doc.holdings.into_iter().map(|t| (t.element, t.origin)).collect(),
            relations: doc.relations.into_iter().map(|t| (t.element, t.origin)).collect(),
            subclass_axioms: doc.subclass.into_iter().map(|t| (t.element, t.origin)).collect(),
            equivalences: doc
                .equivalences
                .into_iter()
                .map(|t| (t.element, t.origin))
                .collect(),
            modifiers: doc.modifiers.into_iter().collect(),
            normalized: doc.normalized,
        }
    }
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn emit_json(m: &OntologyModel) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&ModelDoc::from(m)).expect("model serializes");
    out.push(b'\n');
    out
}

pub fn load_json(bytes: &[u8]) -> Result<Parsed, IngestError> {
    let value: Value =
        serde_json::from_slice(bytes).map_err(|e| IngestError::MalformedDocument(e.to_string()))?;
    let Value::Object(mut map) = value else {
        return Err(IngestError::MalformedDocument(
            "top-level JSON value must be an object".to_owned(),
        ));
    };

    let mut warnings = Vec::new();
    let unknown: Vec<String> = map
        .keys()
        .filter(|k| !KNOWN_KEYS.contains(&k.as_str()))
        .cloned()
        .collect();
    for key in unknown {
        map.remove(&key);
        warnings.push(Diagnostic::warning(
            codes::UNKNOWN_JSON_KEY,
            format!("unknown top-level key `{key}` ignored"),
        ));
    }
    if let Some(schema) = map.get("schema") {
        if schema.as_str() != Some(SCHEMA) {
            return Err(IngestError::MalformedDocument(format!(
                "unsupported schema {schema}, expected \"{SCHEMA}\""
            )));
        }
    }

    let doc: ModelDoc = serde_json::from_value(Value::Object(map))
        .map_err(|e| IngestError::MalformedDocument(e.to_string()))?;
    if let Some(c) = doc.classes.iter().find(|c| c.name.is_empty()) {
        return Err(IngestError::MalformedDocument(format!(
            "class with empty name (iri {:?})",
            c.iri
        )));
    }
    Ok(Parsed {
        model: doc.into(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RuleId;

    #[test]
    fn empty_model_shape() {
        let text = String::from_utf8(emit_json(&OntologyModel::new())).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["classes"], Value::Array(vec![]));
        assert_eq!(v["schema"], SCHEMA);
        assert!(text.trim_start().starts_with("{\n  \"classes\": []"));
        let back = load_json(text.as_bytes()).unwrap();
        assert_eq!(back.model, OntologyModel::new());
        assert!(back.warnings.is_empty());
    }

    #[test]
    fn unknown_key_is_ignored_with_warning() {
        let p = load_json(br#"{"classes":[{"name":"A"}],"colour":"blue"}"#).unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.warnings[0].code, codes::UNKNOWN_JSON_KEY);
        assert!(p.model.classes.contains_key("A"));
    }

    #[test]
    fn rejects_bad_json() {
        assert!(matches!(load_json(b"[1,2]"), Err(IngestError::MalformedDocument(_))));
        assert!(matches!(load_json(b"{"), Err(IngestError::MalformedDocument(_))));
        assert!(matches!(
            load_json(br#"{"schema":"other/9"}"#),
            Err(IngestError::MalformedDocument(_))
        ));
        assert!(matches!(
            load_json(br#"{"relations":[{"predicate":"p","subject":"A","object":"B","origin":"T7.7"}]}"#),
            Err(IngestError::MalformedDocument(_))
        ));
    }

    #[test]
    fn origins_and_modifiers_survive() {
        let mut m = OntologyModel::new();
        m.insert_relation(
            RelationAssertion::new("owns", "Human", "Plane"),
            Origin::Asserted,
        );
        m.insert_subclass(
            SubclassAxiom::new("House", "Country"),
            Origin::Derived(RuleId::SubclassClosure),
        );
        m.modifiers.insert(RawModifier::inverse("owns", "is_owed_by"));
        m.modifiers
            .insert(RawModifier::intersection("Man", ["Male", "Human"]));
        let back = load_json(&emit_json(&m)).unwrap().model;
        assert_eq!(back, m);
    }
}
