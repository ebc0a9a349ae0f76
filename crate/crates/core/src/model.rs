//! In-memory ontology graph.
//!
//! Every element collection is a map keyed by the element itself, so sets are
//! deduplicated and iterate in a canonical (lexicographic) order. The value
//! records where the element came from: asserted in the source document or
//! derived by a normalization rule. Re-deriving an element that already exists
//! never changes its recorded origin.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Identifies one of the eight normalization rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RuleId {
    /// Copy datatype-property holdings across equivalent classes.
    EquivalentProperties,
    /// Copy subject-side relations across equivalent classes.
    EquivalentRelations,
    /// Transitive closure of the subclass hierarchy.
    SubclassClosure,
    /// Lift a relation's object along subClassOf.
    RelationLifting,
    /// Symmetric property to a pair of object properties.
    Symmetric,
    /// Inverse property to a pair of object properties.
    Inverse,
    /// Intersection class to subclass axioms.
    Intersection,
    /// Transitive property to its closed relation set.
    Transitive,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::EquivalentProperties,
        RuleId::EquivalentRelations,
        RuleId::SubclassClosure,
        RuleId::RelationLifting,
        RuleId::Symmetric,
        RuleId::Inverse,
        RuleId::Intersection,
        RuleId::Transitive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::EquivalentProperties => "T1.1",
            RuleId::EquivalentRelations => "T1.2",
            RuleId::SubclassClosure => "T1.3",
            RuleId::RelationLifting => "T1.4",
            RuleId::Symmetric => "T2.1",
            RuleId::Inverse => "T2.2",
            RuleId::Intersection => "T2.3",
            RuleId::Transitive => "T2.4",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule id `{s}`"))
    }
}

impl From<RuleId> for String {
    fn from(r: RuleId) -> Self {
        r.as_str().to_owned()
    }
}

impl TryFrom<String> for RuleId {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Where an element came from. Serialized as `"asserted"` or as the rule id (`"T1.3"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Origin {
    Asserted,
    Derived(RuleId),
}

impl Origin {
    pub fn is_asserted(self) -> bool {
        self == Origin::Asserted
    }
}

impl From<Origin> for String {
    fn from(o: Origin) -> Self {
        match o {
            Origin::Asserted => "asserted".to_owned(),
            Origin::Derived(r) => r.as_str().to_owned(),
        }
    }
}

impl TryFrom<String> for Origin {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        if s == "asserted" {
            Ok(Origin::Asserted)
        } else {
            s.parse().map(Origin::Derived)
        }
    }
}

/// A named class. `iri` keeps the full identifier when the source gave one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassRef {
    pub name: String,
    #[serde(default)]
    pub iri: Option<String>,
}

impl ClassRef {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            iri: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    Object,
    Datatype,
}

/// A class holding a datatype property.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PropertyHolding {
    pub property: String,
    pub holder: String,
}

impl PropertyHolding {
    pub fn new(property: impl Into<String>, holder: impl Into<String>) -> Self {
        Self {
            property: property.into(),
            holder: holder.into(),
        }
    }
}

/// An object relation `subject --predicate--> object`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RelationAssertion {
    pub predicate: String,
    pub subject: String,
    pub object: String,
}

impl RelationAssertion {
    pub fn new(
        predicate: impl Into<String>,
        subject: impl Into<String>,
        object: impl Into<String>,
    ) -> Self {
        Self {
            predicate: predicate.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }
}

/// `sub ⊑ sup`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubclassAxiom {
    pub sub: String,
    #[serde(rename = "super")]
    pub sup: String,
}

impl SubclassAxiom {
    pub fn new(sub: impl Into<String>, sup: impl Into<String>) -> Self {
        Self {
            sub: sub.into(),
            sup: sup.into(),
        }
    }
}

/// An unordered pair of equivalent classes, stored with `first <= second`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Equivalence {
    first: String,
    second: String,
}

impl Equivalence {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Self {
                first: a,
                second: b,
            }
        } else {
            Self {
                first: b,
                second: a,
            }
        }
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn second(&self) -> &str {
        &self.second
    }

    pub fn is_reflexive(&self) -> bool {
        self.first == self.second
    }
}

impl<'de> Deserialize<'de> for Equivalence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            first: String,
            second: String,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Equivalence::new(raw.first, raw.second))
    }
}

/// A redundant OWL construct that normalization replaces with standard elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModifierKind {
    Symmetric,
    Transitive,
    Inverse { counterpart: String },
    Intersection { members: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RawModifier {
    /// Property name, or class name for intersections.
    pub target: String,
    #[serde(flatten)]
    pub kind: ModifierKind,
}

impl RawModifier {
    pub fn symmetric(target: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            kind: ModifierKind::Symmetric,
        }
    }

    pub fn transitive(target: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            kind: ModifierKind::Transitive,
        }
    }

    pub fn inverse(target: impl Into<String>, counterpart: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            kind: ModifierKind::Inverse {
                counterpart: counterpart.into(),
            },
        }
    }

    pub fn intersection<I, S>(target: impl Into<String>, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            target: target.into(),
            kind: ModifierKind::Intersection {
                members: members.into_iter().map(Into::into).collect(),
            },
        }
    }
}

/// Any single element of a model, used in rewrite traces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "element", rename_all = "lowercase")]
pub enum Element {
    Holding(PropertyHolding),
    Relation(RelationAssertion),
    Subclass(SubclassAxiom),
    Equivalence(Equivalence),
    Property { name: String, kind: PropertyKind },
    Modifier(RawModifier),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Holding(h) => write!(f, "{} has {}", h.holder, h.property),
            Element::Relation(r) => write!(f, "{} {} {}", r.subject, r.predicate, r.object),
            Element::Subclass(s) => write!(f, "{} subClassOf {}", s.sub, s.sup),
            Element::Equivalence(e) => write!(f, "{} equivalentClass {}", e.first, e.second),
            Element::Property { name, .. } => write!(f, "property {name}"),
            Element::Modifier(m) => write!(f, "{:?} modifier on {}", m.kind, m.target),
        }
    }
}

/// Element counts, used for reports and the fixpoint bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCounts {
    pub classes: usize,
    pub properties: usize,
    pub holdings: usize,
    pub relations: usize,
    pub subclass: usize,
    pub equivalences: usize,
    pub modifiers: usize,
}

impl ElementCounts {
    pub fn total(&self) -> usize {
        self.classes
            + self.properties
            + self.holdings
            + self.relations
            + self.subclass
            + self.equivalences
            + self.modifiers
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OntologyModel {
    pub classes: BTreeMap<String, ClassRef>,
    pub properties: BTreeMap<String, PropertyKind>,
    pub holdings: BTreeMap<PropertyHolding, Origin>,
    pub relations: BTreeMap<RelationAssertion, Origin>,
    pub subclass_axioms: BTreeMap<SubclassAxiom, Origin>,
    pub equivalences: BTreeMap<Equivalence, Origin>,
    pub modifiers: BTreeSet<RawModifier>,
    pub normalized: bool,
}

impl OntologyModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name` to the class set if absent.
    pub fn ensure_class(&mut self, name: &str) {
        if !self.classes.contains_key(name) {
            self.classes
                .insert(name.to_owned(), ClassRef::named(name));
        }
    }

    /// Adds a class, filling in the IRI if an earlier mention lacked one.
    pub fn declare_class(&mut self, class: ClassRef) {
        match self.classes.get_mut(&class.name) {
            Some(existing) => {
                if existing.iri.is_none() {
                    existing.iri = class.iri;
                }
            }
            None => {
                self.classes.insert(class.name.clone(), class);
            }
        }
    }

    pub fn declare_property(&mut self, name: &str, kind: PropertyKind) {
        self.properties.entry(name.to_owned()).or_insert(kind);
    }

    // The insert_* helpers keep the class-closure invariant and return whether
    // the element is new. An existing element keeps its first origin.

    pub fn insert_holding(&mut self, h: PropertyHolding, origin: Origin) -> bool {
        self.ensure_class(&h.holder);
        insert_new(&mut self.holdings, h, origin)
    }

    pub fn insert_relation(&mut self, r: RelationAssertion, origin: Origin) -> bool {
        self.ensure_class(&r.subject);
        self.ensure_class(&r.object);
        insert_new(&mut self.relations, r, origin)
    }

    pub fn insert_subclass(&mut self, s: SubclassAxiom, origin: Origin) -> bool {
        self.ensure_class(&s.sub);
        self.ensure_class(&s.sup);
        insert_new(&mut self.subclass_axioms, s, origin)
    }

    pub fn insert_equivalence(&mut self, e: Equivalence, origin: Origin) -> bool {
        self.ensure_class(e.first());
        self.ensure_class(e.second());
        insert_new(&mut self.equivalences, e, origin)
    }

    pub fn is_empty(&self) -> bool {
        self.counts().total() == 0
    }

    pub fn counts(&self) -> ElementCounts {
        ElementCounts {
            classes: self.classes.len(),
            properties: self.properties.len(),
            holdings: self.holdings.len(),
            relations: self.relations.len(),
            subclass: self.subclass_axioms.len(),
            equivalences: self.equivalences.len(),
            modifiers: self.modifiers.len(),
        }
    }

    /// Relations whose predicate is `predicate`.
    pub fn relations_of<'a>(
        &'a self,
        predicate: &'a str,
    ) -> impl Iterator<Item = &'a RelationAssertion> + 'a {
        self.relations.keys().filter(move |r| r.predicate == predicate)
    }

    /// Every element that a normalization rule added, with the rule.
    pub fn derived_elements(&self) -> Vec<(Element, RuleId)> {
        fn derived<K: Clone>(
            map: &BTreeMap<K, Origin>,
            wrap: fn(K) -> Element,
        ) -> impl Iterator<Item = (Element, RuleId)> + '_ {
            map.iter().filter_map(move |(k, o)| match o {
                Origin::Derived(r) => Some((wrap(k.clone()), *r)),
                Origin::Asserted => None,
            })
        }
        derived(&self.holdings, Element::Holding)
            .chain(derived(&self.relations, Element::Relation))
            .chain(derived(&self.subclass_axioms, Element::Subclass))
            .chain(derived(&self.equivalences, Element::Equivalence))
            .collect()
    }

    /// Compares the element sets of two models, ignoring origins, IRIs and the
    /// `normalized` flag.
    pub fn same_elements(&self, other: &OntologyModel) -> bool {
        self.classes.keys().eq(other.classes.keys())
            && self.properties == other.properties
            && self.holdings.keys().eq(other.holdings.keys())
            && self.relations.keys().eq(other.relations.keys())
            && self.subclass_axioms.keys().eq(other.subclass_axioms.keys())
            && self.equivalences.keys().eq(other.equivalences.keys())
            && self.modifiers == other.modifiers
    }

    /// Copy of the model restricted to asserted elements.
    pub fn asserted_only(&self) -> OntologyModel {
        fn keep<K: Ord + Clone>(map: &BTreeMap<K, Origin>) -> BTreeMap<K, Origin> {
            map.iter()
                .filter(|(_, o)| o.is_asserted())
                .map(|(k, o)| (k.clone(), *o))
                .collect()
        }
        OntologyModel {
            classes: self.classes.clone(),
            properties: self.properties.clone(),
            holdings: keep(&self.holdings),
            relations: keep(&self.relations),
            subclass_axioms: keep(&self.subclass_axioms),
            equivalences: keep(&self.equivalences),
            modifiers: self.modifiers.clone(),
            normalized: self.normalized,
        }
    }
}

fn insert_new<K: Ord>(map: &mut BTreeMap<K, Origin>, key: K, origin: Origin) -> bool {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(origin);
            true
        }
        Entry::Occupied(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalence_is_unordered() {
        assert_eq!(Equivalence::new("B", "A"), Equivalence::new("A", "B"));
        assert!(Equivalence::new("A", "A").is_reflexive());
    }

    #[test]
    fn first_origin_wins() {
        let mut m = OntologyModel::new();
        let r = RelationAssertion::new("owns", "Human", "Plane");
        assert!(m.insert_relation(r.clone(), Origin::Asserted));
        assert!(!m.insert_relation(r.clone(), Origin::Derived(RuleId::Inverse)));
        assert_eq!(m.relations[&r], Origin::Asserted);
        assert!(m.classes.contains_key("Human") && m.classes.contains_key("Plane"));
    }

    #[test]
    fn origin_strings() {
        for r in RuleId::ALL {
            let s: String = Origin::Derived(r).into();
            assert_eq!(Origin::try_from(s).unwrap(), Origin::Derived(r));
        }
        assert_eq!(Origin::try_from("asserted".to_owned()).unwrap(), Origin::Asserted);
        assert!(Origin::try_from("T9.9".to_owned()).is_err());
    }

    #[test]
    fn declare_class_keeps_first_iri() {
        let mut m = OntologyModel::new();
        m.ensure_class("Paris");
        m.declare_class(ClassRef {
            name: "Paris".into(),
            iri: Some("http://example.org/geo#Paris".into()),
        });
        m.declare_class(ClassRef {
            name: "Paris".into(),
            iri: Some("http://other.org/#Paris".into()),
        });
        assert_eq!(
            m.classes["Paris"].iri.as_deref(),
            Some("http://example.org/geo#Paris")
        );
    }
}
