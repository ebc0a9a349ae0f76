//! Identifying fuzzy rules.
//!
//! Each membership key becomes the premise of one rule per exported determining
//! class: `IF <key> (mu=1/n) THEN <class>`. Because the exported set covers
//! exactly `n` equivalence groups, the number of rules sharing a premise,
//! counted over group representatives, is the denominator of its μ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::membership::{AnnotatedOntology, MembershipKey, MembershipValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleCategory {
    Identifying,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzyRule {
    pub premise: MembershipKey,
    pub conclusion: String,
    pub mu: MembershipValue,
    pub category: RuleCategory,
}

impl fmt::Display for FuzzyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IF {} (mu={}) THEN {}",
            self.premise,
            self.mu.decimal(),
            self.conclusion
        )
    }
}

/// Rules sorted by `(premise, conclusion)`.
pub fn generate_rules(a: &AnnotatedOntology) -> Vec<FuzzyRule> {
    let mut rules: Vec<FuzzyRule> = a
        .table
        .entries()
        .flat_map(|(key, entry)| {
            entry.exported.iter().map(move |class| FuzzyRule {
                premise: key.clone(),
                conclusion: class.clone(),
                mu: entry.mu,
                category: RuleCategory::Identifying,
            })
        })
        .collect();
    rules.sort_by(|x, y| {
        (&x.premise, &x.conclusion).cmp(&(&y.premise, &y.conclusion))
    });
    rules
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `μ × n_rep ≠ 1` for a premise.
    Reciprocity {
        premise: MembershipKey,
        mu: MembershipValue,
        representatives: usize,
    },
    /// Rules sharing a premise disagree on μ.
    InconsistentMu { premise: MembershipKey },
    /// A rule's μ differs from the table entry of its premise.
    TableMismatch {
        premise: MembershipKey,
        rule: MembershipValue,
        table: MembershipValue,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reciprocity {
                premise,
                mu,
                representatives,
            } => write!(
                f,
                "premise `{premise}` has mu={mu} but {representatives} representative conclusion(s)"
            ),
            Violation::InconsistentMu { premise } => {
                write!(f, "rules with premise `{premise}` carry different mu values")
            }
            Violation::TableMismatch {
                premise,
                rule,
                table,
            } => write!(f, "premise `{premise}`: rule mu={rule}, table mu={table}"),
        }
    }
}

/// Checks `μ(premise) × |representative conclusions| = 1` for every premise.
/// Conclusions are collapsed to their equivalence-group representatives first.
pub fn check_consistency(rules: &[FuzzyRule], a: &AnnotatedOntology) -> Vec<Violation> {
    let mut by_premise: BTreeMap<&MembershipKey, (BTreeSet<MembershipValue>, BTreeSet<&str>)> =
        BTreeMap::new();
    for r in rules {
        let slot = by_premise.entry(&r.premise).or_default();
        slot.0.insert(r.mu);
        slot.1.insert(a.groups.representative(&r.conclusion));
    }

    let mut out = Vec::new();
    for (premise, (mus, reps)) in by_premise {
        if mus.len() > 1 {
            out.push(Violation::InconsistentMu {
                premise: premise.clone(),
            });
            continue;
        }
        let mu = *mus.iter().next().expect("at least one rule");
        if mu.times(reps.len()) != Ratio::from_integer(1) {
            out.push(Violation::Reciprocity {
                premise: premise.clone(),
                mu,
                representatives: reps.len(),
            });
        }
        if let Some(entry) = a.table.get(premise) {
            if entry.mu != mu {
                out.push(Violation::TableMismatch {
                    premise: premise.clone(),
                    rule: mu,
                    table: entry.mu,
                });
            }
        }
    }
    out
}
