//! Assign 1/n membership values. Equivalent determiners count once.

use fuzzonto::membership::assign_all;
use fuzzonto::model::{Equivalence, OntologyModel, Origin, PropertyHolding, SubclassAxiom};
use fuzzonto::normalize::{normalize, NormalizeOptions};

fn main() {
    let mut m = OntologyModel::new();
    for holder in ["Person", "Human", "Robot"] {
        m.insert_holding(PropertyHolding::new("hasName", holder), Origin::Asserted);
    }
    m.insert_equivalence(Equivalence::new("Person", "Human"), Origin::Asserted);
    m.insert_subclass(SubclassAxiom::new("Paris", "France"), Origin::Asserted);
    m.insert_subclass(SubclassAxiom::new("Lyon", "France"), Origin::Asserted);

    let normalized = normalize(&m, NormalizeOptions::default()).unwrap().model;
    let annotated = assign_all(&normalized);
    for (key, entry) in annotated.table.entries() {
        println!(
            "{key:<16} mu={} ({})  representatives={:?} exported={:?}",
            entry.mu,
            entry.mu.decimal(),
            entry.representatives,
            entry.exported
        );
    }
}
