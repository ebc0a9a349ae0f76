#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use fuzzonto::ingest::{parse_document, Format, ParseOptions};
use fuzzonto::model::{
    Equivalence, OntologyModel, Origin, PropertyHolding, PropertyKind, RawModifier,
    RelationAssertion, SubclassAxiom,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> OntologyModel {
    let bytes = std::fs::read(fixture_path(name)).expect("fixture exists");
    parse_document(&bytes, Format::RdfXml, ParseOptions { strict: true })
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .model
}

/// Every input fixture (expected-output files excluded).
pub const INPUT_FIXTURES: &[&str] = &[
    "empty.owl",
    "equivalent_property.owl",
    "equivalent_relation.owl",
    "intersection_class.owl",
    "inverse_property.owl",
    "inverse_property_declared.owl",
    "paris_france.owl",
    "relation_lifting.owl",
    "settlements.owl",
    "subclass_chain.owl",
    "symmetric_equivalent.owl",
    "symmetric_property.owl",
    "transitive_property.owl",
];

#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    pub max_classes: usize,
    pub max_properties: usize,
    pub max_predicates: usize,
}

pub const ACCEPTANCE_LIMITS: GenLimits = GenLimits {
    max_classes: 10,
    max_properties: 4,
    max_predicates: 4,
};

fn class(i: usize) -> String {
    format!("C{i}")
}

/// A random pre-normalization model. Includes subclass cycles, self pairs,
/// equivalences and every kind of modifier.
pub fn random_model(seed: u64, limits: GenLimits) -> OntologyModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=limits.max_classes);
    let mut m = OntologyModel::new();
    for i in 0..n {
        m.ensure_class(&class(i));
    }
    let pick = |rng: &mut ChaCha8Rng| class(rng.gen_range(0..n));

    let properties = rng.gen_range(0..=limits.max_properties);
    for p in 0..properties {
        let name = format!("d{p}");
        m.declare_property(&name, PropertyKind::Datatype);
        for _ in 0..rng.gen_range(1..=4) {
            let holder = pick(&mut rng);
            m.insert_holding(PropertyHolding::new(&name, holder), Origin::Asserted);
        }
    }

    let predicates = rng.gen_range(0..=limits.max_predicates);
    let names: Vec<String> = (0..predicates).map(|p| format!("r{p}")).collect();
    for name in &names {
        m.declare_property(name, PropertyKind::Object);
        for _ in 0..rng.gen_range(0..=4) {
            let (s, o) = (pick(&mut rng), pick(&mut rng));
            m.insert_relation(RelationAssertion::new(name, s, o), Origin::Asserted);
        }
        if rng.gen_bool(0.25) {
            m.modifiers.insert(RawModifier::symmetric(name));
        }
        if rng.gen_bool(0.25) {
            m.modifiers.insert(RawModifier::transitive(name));
        }
    }
    if !names.is_empty() && rng.gen_bool(0.3) {
        let p = names.choose(&mut rng).unwrap().clone();
        let q = if rng.gen_bool(0.7) {
            names.choose(&mut rng).unwrap().clone()
        } else {
            "inv_undeclared".to_owned()
        };
        m.modifiers.insert(RawModifier::inverse(p, q));
    }

    for _ in 0..rng.gen_range(0..=6) {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        m.insert_subclass(SubclassAxiom::new(a, b), Origin::Asserted);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        m.insert_equivalence(Equivalence::new(a, b), Origin::Asserted);
    }
    for _ in 0..rng.gen_range(0..=1) {
        let target = pick(&mut rng);
        let members: Vec<String> = (0..rng.gen_range(0..=3)).map(|_| pick(&mut rng)).collect();
        m.modifiers.insert(RawModifier::intersection(target, members));
    }
    m
}

/// Random directed graph on at most `max_nodes` nodes, as named edges.
pub fn random_graph(seed: u64, max_nodes: usize) -> (Vec<String>, Vec<(String, String)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let n = rng.gen_range(1..=max_nodes);
    let nodes: Vec<String> = (0..n).map(|i| format!("N{i:02}")).collect();
    let density = rng.gen_range(0.05..0.35);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                edges.push((nodes[a].clone(), nodes[b].clone()));
            }
        }
    }
    (nodes, edges)
}

// ---------------------------------------------------------------------------
// Oracles. These deliberately avoid the library's own algorithms.

/// Pairs `(a, b)` with a path of one or more edges from `a` to `b` (Warshall).
pub fn reachability(edges: &[(String, String)]) -> BTreeSet<(String, String)> {
    let nodes: Vec<&String> = edges
        .iter()
        .flat_map(|(a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let idx: BTreeMap<&String, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let k = nodes.len();
    let mut reach = vec![vec![false; k]; k];
    for (a, b) in edges {
        reach[idx[a]][idx[b]] = true;
    }
    for via in 0..k {
        for i in 0..k {
            if reach[i][via] {
                for j in 0..k {
                    if reach[via][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            if reach[i][j] {
                out.insert((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    out
}

/// Whether `a` and `b` are linked by a chain of equivalence pairs (or equal).
pub fn equivalent(m: &OntologyModel, a: &str, b: &str) -> bool {
    if a == b {
        return true;
    }
    let mut seen = BTreeSet::from([a.to_owned()]);
    let mut frontier = vec![a.to_owned()];
    while let Some(x) = frontier.pop() {
        for e in m.equivalences.keys() {
            let other = if e.first() == x {
                e.second()
            } else if e.second() == x {
                e.first()
            } else {
                continue;
            };
            if other == b {
                return true;
            }
            if seen.insert(other.to_owned()) {
                frontier.push(other.to_owned());
            }
        }
    }
    false
}

/// Number of equivalence classes among `classes`, by pairwise comparison.
pub fn count_up_to_equivalence(m: &OntologyModel, classes: &BTreeSet<String>) -> usize {
    let list: Vec<&String> = classes.iter().collect();
    (0..list.len())
        .filter(|&i| !(0..i).any(|j| equivalent(m, list[i], list[j])))
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OracleKey {
    Property(String),
    PartOf(String),
    Relation(String, String),
}

/// Every key with its determiners, enumerated by scanning each candidate
/// (name, class) combination against the raw element sets.
pub fn brute_force_determiners(m: &OntologyModel) -> BTreeMap<OracleKey, BTreeSet<String>> {
    let classes: BTreeSet<String> = m
        .classes
        .keys()
        .cloned()
        .chain(m.holdings.keys().map(|h| h.holder.clone()))
        .chain(m.relations.keys().flat_map(|r| [r.subject.clone(), r.object.clone()]))
        .chain(m.subclass_axioms.keys().flat_map(|s| [s.sub.clone(), s.sup.clone()]))
        .collect();
    let props: BTreeSet<&String> = m.holdings.keys().map(|h| &h.property).collect();
    let preds: BTreeSet<&String> = m.relations.keys().map(|r| &r.predicate).collect();

    let mut out = BTreeMap::new();
    for p in &props {
        let holders: BTreeSet<String> = classes
            .iter()
            .filter(|c| m.holdings.contains_key(&PropertyHolding::new(*p, *c)))
            .cloned()
            .collect();
        if !holders.is_empty() {
            out.insert(OracleKey::Property((*p).clone()), holders);
        }
    }
    for t in &classes {
        let subs: BTreeSet<String> = classes
            .iter()
            .filter(|s| m.subclass_axioms.contains_key(&SubclassAxiom::new(*s, t)))
            .cloned()
            .collect();
        if !subs.is_empty() {
            out.insert(OracleKey::PartOf(t.clone()), subs);
        }
        for r in &preds {
            let subjects: BTreeSet<String> = classes
                .iter()
                .filter(|s| m.relations.contains_key(&RelationAssertion::new(*r, *s, t)))
                .cloned()
                .collect();
            if !subjects.is_empty() {
                out.insert(OracleKey::Relation((*r).clone(), t.clone()), subjects);
            }
        }
    }
    out
}
