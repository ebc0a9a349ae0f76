//! Elements that hold but were never written down: equivalent-class copies,
//! subclass closure and relations lifted to superclasses.

use fuzzonto::model::{Equivalence, OntologyModel, Origin, PropertyHolding, RelationAssertion, SubclassAxiom};
use fuzzonto::normalize::{normalize, NormalizeOptions};

fn main() {
    let mut m = OntologyModel::new();
    m.insert_equivalence(Equivalence::new("Person", "Human"), Origin::Asserted);
    m.insert_holding(PropertyHolding::new("hasAge", "Person"), Origin::Asserted);
    m.insert_subclass(SubclassAxiom::new("House", "City"), Origin::Asserted);
    m.insert_subclass(SubclassAxiom::new("City", "Country"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("livesIn", "Person", "House"), Origin::Asserted);

    let out = normalize(&m, NormalizeOptions::default()).expect("small model");
    println!("derived:");
    for (element, rule) in out.model.derived_elements() {
        println!("  {rule}  {element:?}");
    }
    println!("{:?}", out.log.tally());
}
