mod common;

use std::collections::BTreeSet;

use common::*;
use fuzzonto::ingest::{emit_json, load_json};
use fuzzonto::membership::assign_all;
use fuzzonto::model::{Equivalence, OntologyModel, Origin};
use fuzzonto::normalize::{normalize, NormalizeOptions};
use fuzzonto::rulegen::{check_consistency, generate_rules};
use num_rational::Ratio;
use proptest::prelude::*;

fn norm(m: &OntologyModel) -> OntologyModel {
    normalize(m, NormalizeOptions::default()).unwrap().model
}

const LIMITS: GenLimits = GenLimits {
    max_classes: 8,
    max_properties: 3,
    max_predicates: 3,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn idempotent(seed in any::<u64>()) {
        let once = norm(&random_model(seed, LIMITS));
        prop_assert_eq!(norm(&once), once);
    }

    #[test]
    fn monotone(seed in any::<u64>()) {
        let input = random_model(seed, LIMITS);
        let out = norm(&input);
        for h in input.holdings.keys() {
            prop_assert!(out.holdings.contains_key(h));
        }
        for r in input.relations.keys() {
            prop_assert!(out.relations.contains_key(r));
        }
        for s in input.subclass_axioms.keys().filter(|s| s.sub != s.sup) {
            prop_assert!(out.subclass_axioms.contains_key(s));
        }
        for e in input.equivalences.keys().filter(|e| !e.is_reflexive()) {
            prop_assert!(out.equivalences.contains_key(e));
        }
    }

    #[test]
    fn no_modifiers_or_self_axioms_remain(seed in any::<u64>()) {
        let out = norm(&random_model(seed, LIMITS));
        prop_assert!(out.modifiers.is_empty());
        prop_assert!(out.subclass_axioms.keys().all(|s| s.sub != s.sup));
        prop_assert!(out.equivalences.keys().all(|e| !e.is_reflexive()));
    }

    #[test]
    fn mu_in_unit_interval_and_reciprocal(seed in any::<u64>()) {
        let m = norm(&random_model(seed, LIMITS));
        let a = assign_all(&m);
        for (_, entry) in a.table.entries() {
            let mu = entry.mu.ratio();
            prop_assert!(mu > Ratio::from_integer(0) && mu <= Ratio::from_integer(1));
            prop_assert_eq!(entry.mu.times(entry.representatives.len()), Ratio::from_integer(1));
            prop_assert!(entry.representatives.is_subset(&entry.exported));
            prop_assert!(entry.determiners.is_subset(&entry.exported));
        }
    }

    #[test]
    fn rules_consistent(seed in any::<u64>()) {
        let a = assign_all(&norm(&random_model(seed, LIMITS)));
        let rules = generate_rules(&a);
        prop_assert!(check_consistency(&rules, &a).is_empty());
    }

    #[test]
    fn adding_an_existing_equivalence_changes_nothing(seed in any::<u64>()) {
        let input = random_model(seed, LIMITS);
        let out = norm(&input);
        let Some(e) = out.equivalences.keys().next().cloned() else { return Ok(()); };
        let mut again = input.clone();
        again.insert_equivalence(Equivalence::new(e.second(), e.first()), Origin::Asserted);
        prop_assert!(norm(&again).same_elements(&out));
        let mus = |m: &OntologyModel| {
            assign_all(m).table.entries().map(|(k, e)| (k, e.mu.ratio())).collect::<Vec<_>>()
        };
        prop_assert_eq!(mus(&norm(&again)), mus(&out));
    }

    #[test]
    fn every_exported_determiner_has_a_rule(seed in any::<u64>()) {
        let a = assign_all(&norm(&random_model(seed, LIMITS)));
        let rules = generate_rules(&a);
        let have: BTreeSet<_> = rules.iter().map(|r| (r.premise.clone(), r.conclusion.clone())).collect();
        let want: BTreeSet<_> = a
            .table
            .entries()
            .flat_map(|(k, e)| e.exported.iter().map(move |c| (k.clone(), c.clone())).collect::<Vec<_>>())
            .collect();
        prop_assert_eq!(have, want);
    }

    #[test]
    fn json_is_a_fixed_point(seed in any::<u64>()) {
        let out = norm(&random_model(seed, LIMITS));
        let json = emit_json(&out);
        let back = load_json(&json).unwrap().model;
        prop_assert_eq!(emit_json(&back), json);
    }
}
