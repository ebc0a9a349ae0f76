//! Save a normalized model as JSON, load it back, and confirm nothing moved.

use fuzzonto::ingest::{emit_json, load_json};
use fuzzonto::model::{OntologyModel, Origin, RawModifier, RelationAssertion};
use fuzzonto::normalize::{normalize, NormalizeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut m = OntologyModel::new();
    m.insert_relation(RelationAssertion::new("near", "Riga", "Jurmala"), Origin::Asserted);
    m.modifiers.insert(RawModifier::symmetric("near"));
    let normalized = normalize(&m, NormalizeOptions::default())?.model;

    let json = emit_json(&normalized);
    println!("{}", String::from_utf8_lossy(&json));
    let loaded = load_json(&json)?;
    assert_eq!(loaded.model, normalized);
    assert_eq!(emit_json(&loaded.model), json);
    println!("round trip exact, {} warning(s)", loaded.warnings.len());
    Ok(())
}
