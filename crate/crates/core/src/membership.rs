//! Membership values for the elements of a normalized ontology.
//!
//! A datatype property gets `μ = 1/n` where `n` counts the classes holding it.
//! A complex, i.e. a relation together with its resulting class (`part_of
//! France`), gets `μ = 1/n` where `n` counts the classes determining it. Classes
//! in the same equivalence group count once. After the values are computed,
//! every member of an equivalence group is listed wherever one member is.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use crate::groups::EquivalenceGroups;
use crate::model::OntologyModel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MembershipError {
    #[error("membership value {num}/{den} is outside (0, 1]")]
    OutOfRange { num: u64, den: u64 },
    #[error("`{0}` does not occur in the model")]
    KeyAbsent(String),
}

/// An exact membership grade in `(0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MembershipValue(Ratio<u64>);

impl MembershipValue {
    pub fn new(num: u64, den: u64) -> Result<Self, MembershipError> {
        if num == 0 || den == 0 || num > den {
            return Err(MembershipError::OutOfRange { num, den });
        }
        Ok(Self(Ratio::new(num, den)))
    }

    /// `1/n`; `n` must be positive.
    pub fn reciprocal(n: usize) -> Self {
        assert!(n > 0, "membership denominator must be positive");
        Self(Ratio::new(1, n as u64))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    /// Exact product `μ × n`.
    pub fn times(&self, n: usize) -> Ratio<u64> {
        self.0 * Ratio::from_integer(n as u64)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }

    /// Six fractional digits, rounded half to even.
    pub fn decimal(&self) -> String {
        const SCALE: u128 = 1_000_000;
        let num = self.numerator() as u128;
        let den = self.denominator() as u128;
        let scaled = num * SCALE;
        let mut q = scaled / den;
        let r = scaled % den;
        if 2 * r > den || (2 * r == den && q % 2 == 1) {
            q += 1;
        }
        format!("{}.{:06}", q / SCALE, q % SCALE)
    }
}

impl fmt::Display for MembershipValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl Serialize for MembershipValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            num: u64,
            den: u64,
            decimal: String,
        }
        Repr {
            num: self.numerator(),
            den: self.denominator(),
            decimal: self.decimal(),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexKind {
    /// Built from subClassOf axioms.
    PartOf,
    Relation(String),
}

/// A relation paired with its resulting class, carrying a single membership value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexKey {
    pub kind: ComplexKind,
    pub resulting_class: String,
}

impl ComplexKey {
    pub fn part_of(class: impl Into<String>) -> Self {
        Self {
            kind: ComplexKind::PartOf,
            resulting_class: class.into(),
        }
    }

    pub fn relation(predicate: impl Into<String>, class: impl Into<String>) -> Self {
        Self {
            kind: ComplexKind::Relation(predicate.into()),
            resulting_class: class.into(),
        }
    }
}

impl fmt::Display for ComplexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ComplexKind::PartOf => write!(f, "part_of {}", self.resulting_class),
            ComplexKind::Relation(p) => write!(f, "{p} {}", self.resulting_class),
        }
    }
}

/// Anything that carries a membership value: a datatype property or a complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MembershipKey {
    Property(String),
    Complex(ComplexKey),
}

impl fmt::Display for MembershipKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipKey::Property(p) => f.write_str(p),
            MembershipKey::Complex(c) => c.fmt(f),
        }
    }
}

/// Determining classes of a key, and their count over equivalence groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Determiners {
    pub n: usize,
    pub classes: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipEntry {
    pub mu: MembershipValue,
    /// Classes found determining the key in the model.
    pub determiners: BTreeSet<String>,
    /// One representative per equivalence group among `determiners`; its size is the denominator.
    pub representatives: BTreeSet<String>,
    /// `determiners` widened to whole equivalence groups.
    pub exported: BTreeSet<String>,
}

impl MembershipEntry {
    fn from_determiners(d: Determiners, groups: &EquivalenceGroups) -> Self {
        let representatives: BTreeSet<String> = d
            .classes
            .iter()
            .map(|c| groups.representative(c).to_owned())
            .collect();
        debug_assert_eq!(representatives.len(), d.n);
        Self {
            mu: MembershipValue::reciprocal(d.n),
            exported: d.classes.clone(),
            determiners: d.classes,
            representatives,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MembershipTable {
    pub property_mu: BTreeMap<String, MembershipEntry>,
    pub complex_mu: BTreeMap<ComplexKey, MembershipEntry>,
}

impl MembershipTable {
    pub fn len(&self) -> usize {
        self.property_mu.len() + self.complex_mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries in key order: properties first, then complexes.
    pub fn entries(&self) -> impl Iterator<Item = (MembershipKey, &MembershipEntry)> {
        self.property_mu
            .iter()
            .map(|(p, e)| (MembershipKey::Property(p.clone()), e))
            .chain(
                self.complex_mu
                    .iter()
                    .map(|(c, e)| (MembershipKey::Complex(c.clone()), e)),
            )
    }

    pub fn get(&self, key: &MembershipKey) -> Option<&MembershipEntry> {
        match key {
            MembershipKey::Property(p) => self.property_mu.get(p),
            MembershipKey::Complex(c) => self.complex_mu.get(c),
        }
    }
}

/// A normalized model with its membership table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedOntology {
    pub model: OntologyModel,
    pub table: MembershipTable,
    pub groups: EquivalenceGroups,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AssignOptions {
    /// Count only asserted holdings, axioms and relations.
    pub asserted_only: bool,
}

pub fn build_equivalence_groups(m: &OntologyModel) -> EquivalenceGroups {
    EquivalenceGroups::build(m)
}

fn determiners_of<'a>(m: &'a OntologyModel, key: &'a MembershipKey) -> BTreeSet<&'a str> {
    match key {
        MembershipKey::Property(p) => m
            .holdings
            .keys()
            .filter(|h| &h.property == p)
            .map(|h| h.holder.as_str())
            .collect(),
        MembershipKey::Complex(ComplexKey {
            kind: ComplexKind::PartOf,
            resulting_class,
        }) => m
            .subclass_axioms
            .keys()
            .filter(|s| &s.sup == resulting_class)
            .map(|s| s.sub.as_str())
            .collect(),
        MembershipKey::Complex(ComplexKey {
            kind: ComplexKind::Relation(pred),
            resulting_class,
        }) => m
            .relations
            .keys()
            .filter(|r| &r.predicate == pred && &r.object == resulting_class)
            .map(|r| r.subject.as_str())
            .collect(),
    }
}

pub fn count_determiners(
    m: &OntologyModel,
    groups: &EquivalenceGroups,
    key: &MembershipKey,
) -> Result<Determiners, MembershipError> {
    let classes = determiners_of(m, key);
    if classes.is_empty() {
        return Err(MembershipError::KeyAbsent(key.to_string()));
    }
    let n = classes
        .iter()
        .map(|c| groups.representative(c))
        .collect::<BTreeSet<_>>()
        .len();
    Ok(Determiners {
        n,
        classes: classes.into_iter().map(str::to_owned).collect(),
    })
}

fn entry_for(m: &OntologyModel, groups: &EquivalenceGroups, key: &MembershipKey) -> MembershipEntry {
    let d = count_determiners(m, groups, key).expect("key taken from the model");
    MembershipEntry::from_determiners(d, groups)
}

/// `μ(P) = 1/n`, `n` = classes holding `P`, equivalent classes counted once.
pub fn assign_property_mu(
    m: &OntologyModel,
    groups: &EquivalenceGroups,
) -> BTreeMap<String, MembershipEntry> {
    let properties: BTreeSet<&String> = m.holdings.keys().map(|h| &h.property).collect();
    properties
        .into_iter()
        .map(|p| {
            let key = MembershipKey::Property(p.clone());
            (p.clone(), entry_for(m, groups, &key))
        })
        .collect()
}

/// `μ(part_of T) = 1/n`, `n` = subclasses of `T`, equivalent classes counted once.
pub fn assign_partof_mu(
    m: &OntologyModel,
    groups: &EquivalenceGroups,
) -> BTreeMap<ComplexKey, MembershipEntry> {
    let targets: BTreeSet<&String> = m.subclass_axioms.keys().map(|s| &s.sup).collect();
    targets
        .into_iter()
        .map(|t| {
            let key = ComplexKey::part_of(t.clone());
            let entry = entry_for(m, groups, &MembershipKey::Complex(key.clone()));
            (key, entry)
        })
        .collect()
}

/// `μ(r T) = 1/n`, `n` = subjects of `r` towards `T`, equivalent classes counted once.
pub fn assign_relation_mu(
    m: &OntologyModel,
    groups: &EquivalenceGroups,
) -> BTreeMap<ComplexKey, MembershipEntry> {
    let keys: BTreeSet<(&String, &String)> = m
        .relations
        .keys()
        .map(|r| (&r.predicate, &r.object))
        .collect();
    keys.into_iter()
        .map(|(p, t)| {
            let key = ComplexKey::relation(p.clone(), t.clone());
            let entry = entry_for(m, groups, &MembershipKey::Complex(key.clone()));
            (key, entry)
        })
        .collect()
}

/// Widens every exported determining set to whole equivalence groups; μ is untouched.
pub fn copy_to_equivalents(mut a: AnnotatedOntology) -> AnnotatedOntology {
    let groups = &a.groups;
    let widen = |entry: &mut MembershipEntry| {
        entry.exported = entry
            .determiners
            .iter()
            .flat_map(|c| groups.group_of(c))
            .collect();
    };
    a.table.property_mu.values_mut().for_each(widen);
    a.table.complex_mu.values_mut().for_each(widen);
    a
}

pub fn assign_all(m: &OntologyModel) -> AnnotatedOntology {
    assign_all_with(m, AssignOptions::default())
}

/// Properties, then part_of complexes, then the remaining relations, then the
/// copy across equivalent classes.
pub fn assign_all_with(m: &OntologyModel, options: AssignOptions) -> AnnotatedOntology {
    let restricted;
    let view = if options.asserted_only {
        restricted = m.asserted_only();
        &restricted
    } else {
        m
    };
    let groups = build_equivalence_groups(view);
    let mut table = MembershipTable {
        property_mu: assign_property_mu(view, &groups),
        complex_mu: assign_partof_mu(view, &groups),
    };
    table.complex_mu.extend(assign_relation_mu(view, &groups));
    copy_to_equivalents(AnnotatedOntology {
        model: m.clone(),
        table,
        groups,
    })
}
