//! Two-stage normalization into standard form.
//!
//! Stage 1 adds elements that are implied but absent: holdings and relations
//! copied across equivalent classes, the transitive subclass closure, and
//! relations lifted along subClassOf on the object side. Stage 2 replaces the
//! redundant constructs (symmetric, inverse and transitive properties,
//! intersection classes) with plain relations and subclass axioms.
//!
//! [`normalize`] runs stage 1 then stage 2 and repeats both until a pass adds
//! nothing. Modifiers are taken out of the model before the first pass, but
//! their rewrites stay in force for every pass, so relations derived late (say
//! through an equivalence) still get their symmetric or inverse partner.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diag::{codes, Diagnostic};
use crate::groups::EquivalenceGroups;
use crate::ingest::drop_self_equivalences;
use crate::model::{
    Element, Equivalence, ModifierKind, OntologyModel, Origin, PropertyHolding, PropertyKind,
    RawModifier, RelationAssertion, RuleId, SubclassAxiom,
};

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteTrace {
    pub rule: RuleId,
    pub produced: Element,
    pub sources: Vec<Element>,
}

/// Traces and warnings accumulated by rewrites.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteLog {
    pub traces: Vec<RewriteTrace>,
    pub warnings: Vec<Diagnostic>,
}

impl RewriteLog {
    /// Number of elements each rule produced. Every rule id is present.
    pub fn tally(&self) -> BTreeMap<RuleId, usize> {
        let mut out: BTreeMap<RuleId, usize> = RuleId::ALL.iter().map(|r| (*r, 0)).collect();
        for t in &self.traces {
            *out.entry(t.rule).or_default() += 1;
        }
        out
    }

    fn warn(&mut self, d: Diagnostic) {
        if !self.warnings.contains(&d) {
            self.warnings.push(d);
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("fixpoint overflow: {count} elements exceed the bound of {limit}")]
    FixpointOverflow { count: usize, limit: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct NormalizeOptions {
    pub max_elements: usize,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        Self {
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Normalized {
    pub model: OntologyModel,
    pub log: RewriteLog,
    /// Full stage-1 + stage-2 passes run, including the final quiet one.
    pub passes: usize,
    pub stage1_time: Duration,
    pub stage2_time: Duration,
}

/// Stage-2 rewrites pulled out of a model's modifiers.
#[derive(Debug, Default)]
struct Redundancies {
    symmetric: BTreeSet<String>,
    transitive: BTreeSet<String>,
    inverse: BTreeSet<(String, String)>,
    intersections: BTreeMap<String, BTreeSet<String>>,
    carriers: BTreeMap<String, RawModifier>,
}

struct Ctx<'a> {
    model: &'a mut OntologyModel,
    log: &'a mut RewriteLog,
    limit: usize,
}

impl Ctx<'_> {
    fn check(&self) -> Result<(), NormalizeError> {
        let count = self.model.counts().total();
        if count > self.limit {
            Err(NormalizeError::FixpointOverflow {
                count,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    fn relation(
        &mut self,
        r: RelationAssertion,
        rule: RuleId,
        sources: Vec<Element>,
    ) -> Result<bool, NormalizeError> {
        let added = self.model.insert_relation(r.clone(), Origin::Derived(rule));
        if added {
            self.trace(rule, Element::Relation(r), sources);
            self.check()?;
        }
        Ok(added)
    }

    fn holding(
        &mut self,
        h: PropertyHolding,
        rule: RuleId,
        sources: Vec<Element>,
    ) -> Result<bool, NormalizeError> {
        let added = self.model.insert_holding(h.clone(), Origin::Derived(rule));
        if added {
            self.trace(rule, Element::Holding(h), sources);
            self.check()?;
        }
        Ok(added)
    }

    fn subclass(
        &mut self,
        s: SubclassAxiom,
        rule: RuleId,
        sources: Vec<Element>,
    ) -> Result<bool, NormalizeError> {
        let added = self.model.insert_subclass(s.clone(), Origin::Derived(rule));
        if added {
            self.trace(rule, Element::Subclass(s), sources);
            self.check()?;
        }
        Ok(added)
    }

    fn equivalence(
        &mut self,
        e: Equivalence,
        rule: RuleId,
        sources: Vec<Element>,
    ) -> Result<bool, NormalizeError> {
        let added = self.model.insert_equivalence(e.clone(), Origin::Derived(rule));
        if added {
            self.trace(rule, Element::Equivalence(e), sources);
            self.check()?;
        }
        Ok(added)
    }

    fn trace(&mut self, rule: RuleId, produced: Element, sources: Vec<Element>) {
        self.log.traces.push(RewriteTrace {
            rule,
            produced,
            sources,
        });
    }
}

/// Removes the modifiers accepted by `wanted` from the model and turns them
/// into rewrite instructions.
fn extract(
    model: &mut OntologyModel,
    log: &mut RewriteLog,
    wanted: impl Fn(&ModifierKind) -> bool,
) -> Redundancies {
    let (taken, kept): (BTreeSet<_>, BTreeSet<_>) = std::mem::take(&mut model.modifiers)
        .into_iter()
        .partition(|m| wanted(&m.kind));
    model.modifiers = kept;

    let mut red = Redundancies::default();
    for md in taken {
        match &md.kind {
            ModifierKind::Symmetric => {
                red.symmetric.insert(md.target.clone());
            }
            ModifierKind::Transitive => {
                red.transitive.insert(md.target.clone());
            }
            ModifierKind::Inverse { counterpart } => {
                if !model.properties.contains_key(counterpart) {
                    log.warn(Diagnostic::warning(
                        codes::UNDECLARED_INVERSE,
                        format!(
                            "inverse `{counterpart}` of `{}` was not declared; created as an object property",
                            md.target
                        ),
                    ));
                    model.declare_property(counterpart, PropertyKind::Object);
                    log.traces.push(RewriteTrace {
                        rule: RuleId::Inverse,
                        produced: Element::Property {
                            name: counterpart.clone(),
                            kind: PropertyKind::Object,
                        },
                        sources: vec![Element::Modifier(md.clone())],
                    });
                }
                red.inverse
                    .insert((md.target.clone(), counterpart.clone()));
            }
            ModifierKind::Intersection { members } => {
                if members.is_empty() {
                    log.warn(Diagnostic::warning(
                        codes::EMPTY_INTERSECTION,
                        format!("empty intersection defining `{}` dropped", md.target),
                    ));
                    continue;
                }
                red.intersections
                    .entry(md.target.clone())
                    .or_default()
                    .extend(members.iter().cloned());
                red.carriers
                    .insert(md.target.clone(), md.clone());
            }
        }
    }
    red
}

fn apply_symmetric(ctx: &mut Ctx, predicates: &BTreeSet<String>) -> Result<usize, NormalizeError> {
    let mut added = 0;
    for p in predicates {
        let current: Vec<RelationAssertion> = ctx.model.relations_of(p).cloned().collect();
        for r in current {
            let mirrored = RelationAssertion::new(p, &r.object, &r.subject);
            if ctx.relation(mirrored, RuleId::Symmetric, vec![Element::Relation(r)])? {
                added += 1;
            }
        }
    }
    Ok(added)
}

fn apply_inverse(
    ctx: &mut Ctx,
    pairs: &BTreeSet<(String, String)>,
) -> Result<usize, NormalizeError> {
    let mut added = 0;
    for (p, q) in pairs {
        // Inverse is mutual: p-edges give reversed q-edges and vice versa.
        for (from, to) in [(p, q), (q, p)] {
            let current: Vec<RelationAssertion> = ctx.model.relations_of(from).cloned().collect();
            for r in current {
                let inverse = RelationAssertion::new(to, &r.object, &r.subject);
                if ctx.relation(inverse, RuleId::Inverse, vec![Element::Relation(r)])? {
                    added += 1;
                }
            }
        }
    }
    Ok(added)
}

fn apply_intersection(ctx: &mut Ctx, red: &Redundancies) -> Result<usize, NormalizeError> {
    let mut added = 0;
    for (class, members) in &red.intersections {
        let source = red
            .carriers
            .get(class)
            .map(|m| vec![Element::Modifier(m.clone())])
            .unwrap_or_default();
        for member in members.iter().filter(|m| *m != class) {
            let axiom = SubclassAxiom::new(class, member);
            if ctx.subclass(axiom, RuleId::Intersection, source.clone())? {
                added += 1;
            }
        }
    }
    Ok(added)
}

/// Pairs `(a, c)` reachable through two edges `(a, b), (b, c)` that are not yet edges.
/// Returns each new pair with the two edges composing it.
fn compose_once(
    edges: &BTreeSet<(String, String)>,
) -> Vec<((String, String), (String, String), (String, String))> {
    let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        succ.entry(a).or_default().push(b);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in edges {
        for c in succ.get(b.as_str()).into_iter().flatten() {
            let pair = (a.clone(), (*c).to_owned());
            if !edges.contains(&pair) && seen.insert(pair.clone()) {
                out.push((pair, (a.clone(), b.clone()), (b.clone(), (*c).to_owned())));
            }
        }
    }
    out
}

fn apply_transitive(ctx: &mut Ctx, predicates: &BTreeSet<String>) -> Result<usize, NormalizeError> {
    let mut added = 0;
    for p in predicates {
        let mut edges: BTreeSet<(String, String)> = ctx
            .model
            .relations_of(p)
            .map(|r| (r.subject.clone(), r.object.clone()))
            .collect();
        loop {
            let fresh = compose_once(&edges);
            if fresh.is_empty() {
                break;
            }
            for ((a, c), (a1, b1), (b2, c2)) in fresh {
                let sources = vec![
                    Element::Relation(RelationAssertion::new(p, a1, b1)),
                    Element::Relation(RelationAssertion::new(p, b2, c2)),
                ];
                if ctx.relation(RelationAssertion::new(p, &a, &c), RuleId::Transitive, sources)? {
                    added += 1;
                }
                edges.insert((a, c));
            }
        }
    }
    Ok(added)
}

fn drop_self_subclass(model: &mut OntologyModel, log: &mut RewriteLog) {
    let selfs: Vec<SubclassAxiom> = model
        .subclass_axioms
        .keys()
        .filter(|s| s.sub == s.sup)
        .cloned()
        .collect();
    for s in selfs {
        model.subclass_axioms.remove(&s);
        log.warn(Diagnostic::warning(
            codes::SELF_SUBCLASS,
            format!("self subclass axiom `{0}` subClassOf `{0}` dropped", s.sub),
        ));
    }
}

fn apply_subclass_closure(ctx: &mut Ctx) -> Result<usize, NormalizeError> {
    let mut added = 0;
    let mut edges: BTreeSet<(String, String)> = ctx
        .model
        .subclass_axioms
        .keys()
        .map(|s| (s.sub.clone(), s.sup.clone()))
        .collect();
    let mut cyclic: BTreeSet<String> = BTreeSet::new();
    loop {
        let fresh: Vec<_> = compose_once(&edges);
        let mut progressed = false;
        for ((a, c), (a1, b1), (b2, c2)) in fresh {
            if a == c {
                cyclic.insert(a);
                continue;
            }
            let sources = vec![
                Element::Subclass(SubclassAxiom::new(a1, b1)),
                Element::Subclass(SubclassAxiom::new(b2, c2)),
            ];
            if ctx.subclass(SubclassAxiom::new(&a, &c), RuleId::SubclassClosure, sources)? {
                added += 1;
            }
            progressed |= edges.insert((a, c));
        }
        if !progressed {
            break;
        }
    }

    // Mutually reachable classes on a cycle become equivalent instead of self-subclasses.
    for class in &cyclic {
        ctx.log.warn(Diagnostic::warning(
            codes::CYCLIC_HIERARCHY,
            format!("`{class}` lies on a subClassOf cycle; cycle members recorded as equivalent"),
        ));
    }
    let mutual: Vec<(String, String)> = edges
        .iter()
        .filter(|(a, b)| a < b && edges.contains(&(b.clone(), a.clone())))
        .cloned()
        .collect();
    for (a, b) in mutual {
        let sources = vec![
            Element::Subclass(SubclassAxiom::new(&a, &b)),
            Element::Subclass(SubclassAxiom::new(&b, &a)),
        ];
        if ctx.equivalence(Equivalence::new(a, b), RuleId::SubclassClosure, sources)? {
            added += 1;
        }
    }
    Ok(added)
}

fn apply_equivalents(ctx: &mut Ctx) -> Result<usize, NormalizeError> {
    let groups = EquivalenceGroups::build(ctx.model);
    let mut added = 0;
    for group in groups.nontrivial() {
        let holdings: Vec<PropertyHolding> = ctx
            .model
            .holdings
            .keys()
            .filter(|h| group.contains(&h.holder))
            .cloned()
            .collect();
        for h in holdings {
            for member in group {
                let copy = PropertyHolding::new(&h.property, member);
                if ctx.holding(
                    copy,
                    RuleId::EquivalentProperties,
                    vec![Element::Holding(h.clone())],
                )? {
                    added += 1;
                }
            }
        }

        let relations: Vec<RelationAssertion> = ctx
            .model
            .relations
            .keys()
            .filter(|r| group.contains(&r.subject))
            .cloned()
            .collect();
        for r in relations {
            for member in group {
                let copy = RelationAssertion::new(&r.predicate, member, &r.object);
                if ctx.relation(
                    copy,
                    RuleId::EquivalentRelations,
                    vec![Element::Relation(r.clone())],
                )? {
                    added += 1;
                }
            }
        }
    }
    Ok(added)
}

fn apply_lifting(ctx: &mut Ctx) -> Result<usize, NormalizeError> {
    let mut supers: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for s in ctx.model.subclass_axioms.keys() {
        supers.entry(&s.sub).or_default().push(&s.sup);
    }
    let mut pending = Vec::new();
    for r in ctx.model.relations.keys() {
        for sup in supers.get(r.object.as_str()).into_iter().flatten() {
            let lifted = RelationAssertion::new(&r.predicate, &r.subject, *sup);
            if !ctx.model.relations.contains_key(&lifted) {
                pending.push((
                    lifted,
                    vec![
                        Element::Relation(r.clone()),
                        Element::Subclass(SubclassAxiom::new(&r.object, *sup)),
                    ],
                ));
            }
        }
    }
    let mut added = 0;
    for (lifted, sources) in pending {
        if ctx.relation(lifted, RuleId::RelationLifting, sources)? {
            added += 1;
        }
    }
    Ok(added)
}

fn unbounded<T>(r: Result<T, NormalizeError>) -> T {
    r.expect("single rewrites run without an element bound")
}

fn single(
    mut m: OntologyModel,
    f: impl FnOnce(&mut Ctx) -> Result<usize, NormalizeError>,
) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    let mut ctx = Ctx {
        model: &mut m,
        log: &mut log,
        limit: usize::MAX,
    };
    unbounded(f(&mut ctx));
    (m, log)
}

/// Symmetric property `p`: every `(p, A, B)` gains its mirror `(p, B, A)`.
pub fn rewrite_symmetric(mut m: OntologyModel) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    let red = extract(&mut m, &mut log, |k| matches!(k, ModifierKind::Symmetric));
    let (m, more) = single(m, |ctx| apply_symmetric(ctx, &red.symmetric));
    log.traces.extend(more.traces);
    (m, log)
}

/// Inverse pair `(p, q)`: `(p, A, B)` yields `(q, B, A)` and vice versa. An
/// undeclared `q` is created with a warning.
pub fn rewrite_inverse(mut m: OntologyModel) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    let red = extract(&mut m, &mut log, |k| matches!(k, ModifierKind::Inverse { .. }));
    let (m, more) = single(m, |ctx| apply_inverse(ctx, &red.inverse));
    log.traces.extend(more.traces);
    (m, log)
}

/// Intersection class `C = M1 ∩ … ∩ Mk` becomes `C ⊑ Mi` for every member.
pub fn rewrite_intersection(mut m: OntologyModel) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    let red = extract(&mut m, &mut log, |k| {
        matches!(k, ModifierKind::Intersection { .. })
    });
    let (m, more) = single(m, |ctx| apply_intersection(ctx, &red));
    log.traces.extend(more.traces);
    (m, log)
}

/// Transitive property `p`: its relation set is replaced by its transitive closure.
pub fn rewrite_transitive(mut m: OntologyModel) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    let red = extract(&mut m, &mut log, |k| matches!(k, ModifierKind::Transitive));
    let (m, more) = single(m, |ctx| apply_transitive(ctx, &red.transitive));
    log.traces.extend(more.traces);
    (m, log)
}

pub fn close_subclass_hierarchy(mut m: OntologyModel) -> (OntologyModel, RewriteLog) {
    let mut log = RewriteLog::default();
    drop_self_subclass(&mut m, &mut log);
    let (m, more) = single(m, apply_subclass_closure);
    log.traces.extend(more.traces);
    log.warnings.extend(more.warnings);
    (m, log)
}

pub fn propagate_equivalents(m: OntologyModel) -> (OntologyModel, RewriteLog) {
    single(m, apply_equivalents)
}

/// One lifting step over the current subclass axioms; close the hierarchy first
/// to lift along whole chains.
pub fn lift_relations(m: OntologyModel) -> (OntologyModel, RewriteLog) {
    single(m, apply_lifting)
}

pub fn normalize(m: &OntologyModel, options: NormalizeOptions) -> Result<Normalized, NormalizeError> {
    let mut model = m.clone();
    let mut log = RewriteLog::default();

    let dropped = drop_self_equivalences(&mut model);
    if dropped > 0 {
        log.warn(Diagnostic::warning(
            codes::SELF_EQUIVALENCE,
            format!("{dropped} self-equivalence(s) dropped"),
        ));
    }
    drop_self_subclass(&mut model, &mut log);
    let red = extract(&mut model, &mut log, |_| true);

    let mut ctx = Ctx {
        model: &mut model,
        log: &mut log,
        limit: options.max_elements,
    };
    ctx.check()?;

    let mut passes = 0;
    let mut stage1_time = Duration::ZERO;
    let mut stage2_time = Duration::ZERO;
    loop {
        passes += 1;
        let t = Instant::now();
        let mut added = apply_equivalents(&mut ctx)?;
        added += apply_subclass_closure(&mut ctx)?;
        added += apply_lifting(&mut ctx)?;
        stage1_time += t.elapsed();

        let t = Instant::now();
        added += apply_symmetric(&mut ctx, &red.symmetric)?;
        added += apply_inverse(&mut ctx, &red.inverse)?;
        added += apply_intersection(&mut ctx, &red)?;
        added += apply_transitive(&mut ctx, &red.transitive)?;
        stage2_time += t.elapsed();

        if added == 0 {
            break;
        }
    }

    model.normalized = true;
    Ok(Normalized {
        model,
        log,
        passes,
        stage1_time,
        stage2_time,
    })
}
