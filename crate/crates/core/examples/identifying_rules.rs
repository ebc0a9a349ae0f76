//! Generate identifying fuzzy rules and check them against the membership table.
//!
//! ```bash
//! cargo run --example identifying_rules
//! ```

use fuzzonto::membership::assign_all;
use fuzzonto::model::{OntologyModel, Origin, RelationAssertion, SubclassAxiom};
use fuzzonto::normalize::{normalize, NormalizeOptions};
use fuzzonto::rulegen::{check_consistency, generate_rules};

fn main() {
    let mut m = OntologyModel::new();
    m.insert_subclass(SubclassAxiom::new("Paris", "France"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("bornIn", "Artist", "Paris"), Origin::Asserted);
    m.insert_relation(RelationAssertion::new("bornIn", "Scientist", "Paris"), Origin::Asserted);

    let a = assign_all(&normalize(&m, NormalizeOptions::default()).unwrap().model);
    let rules = generate_rules(&a);
    for r in &rules {
        println!("{r}");
    }
    let violations = check_consistency(&rules, &a);
    println!("consistency violations: {}", violations.len());
}
