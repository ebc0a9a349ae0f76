//! Rewrite symmetric, inverse, intersection and transitive constructs into
//! plain relations and subclass axioms.

use fuzzonto::model::{OntologyModel, Origin, RawModifier, RelationAssertion};
use fuzzonto::normalize::{normalize, NormalizeOptions};

fn main() {
    let mut m = OntologyModel::new();
    m.insert_relation(RelationAssertion::new("colleagueOf", "Programmer", "Tester"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("owns", "Human", "Plane"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("subAreaOf", "Latgale", "Latvia"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("subAreaOf", "Latvia", "EU"), Origin::Asserted);
    m.modifiers.insert(RawModifier::symmetric("colleagueOf"));
    m.modifiers.insert(RawModifier::inverse("owns", "is_owed_by"));
    m.modifiers.insert(RawModifier::transitive("subAreaOf"));
    m.modifiers.insert(RawModifier::intersection("Man", ["Male", "Human"]));

    let out = normalize(&m, NormalizeOptions::default()).expect("small model");
    for t in &out.log.traces {
        println!("{:<5} {:?}", t.rule.to_string(), t.produced);
    }
    for w in &out.log.warnings {
        println!("{w}");
    }
    println!("standard form reached after {} pass(es)", out.passes);
}
