use std::collections::BTreeSet;

use crate::diag::{codes, Diagnostic};
use crate::model::{ModifierKind, OntologyModel};

/// Structural checks over a model. Never fails; returns findings in a stable order.
pub fn validate_model(m: &OntologyModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut referenced: BTreeSet<(&str, String)> = BTreeSet::new();
    for h in m.holdings.keys() {
        referenced.insert((&h.holder, format!("holding of `{}`", h.property)));
    }
    for r in m.relations.keys() {
        let ctx = format!("relation `{}` {} `{}`", r.subject, r.predicate, r.object);
        referenced.insert((&r.subject, ctx.clone()));
        referenced.insert((&r.object, ctx));
    }
    for s in m.subclass_axioms.keys() {
        let ctx = format!("axiom `{}` subClassOf `{}`", s.sub, s.sup);
        referenced.insert((&s.sub, ctx.clone()));
        referenced.insert((&s.sup, ctx));
    }
    for e in m.equivalences.keys() {
        let ctx = format!("equivalence `{}` / `{}`", e.first(), e.second());
        referenced.insert((e.first(), ctx.clone()));
        referenced.insert((e.second(), ctx));
    }
    for md in &m.modifiers {
        if let ModifierKind::Intersection { members } = &md.kind {
            let ctx = format!("intersection defining `{}`", md.target);
            referenced.insert((&md.target, ctx.clone()));
            for member in members {
                referenced.insert((member, ctx.clone()));
            }
        }
    }
    for (name, ctx) in referenced {
        if !m.classes.contains_key(name) {
            out.push(
                Diagnostic::error(
                    codes::DANGLING_CLASS,
                    format!("class `{name}` is referenced but not declared"),
                )
                .at(ctx),
            );
        }
    }

    let used: BTreeSet<&str> = m
        .holdings
        .keys()
        .map(|h| h.property.as_str())
        .chain(m.relations.keys().map(|r| r.predicate.as_str()))
        .collect();
    for name in &used {
        if !m.properties.contains_key(*name) {
            out.push(Diagnostic::warning(
                codes::UNDECLARED_PROPERTY,
                format!("property `{name}` is used but never declared"),
            ));
        }
    }
    for name in m.properties.keys() {
        if !used.contains(name.as_str()) {
            out.push(Diagnostic::warning(
                codes::NO_DOMAIN_RANGE,
                format!("property `{name}` has no domain/range and holds no classes"),
            ));
        }
    }

    for e in m.equivalences.keys().filter(|e| e.is_reflexive()) {
        out.push(Diagnostic::warning(
            codes::SELF_EQUIVALENCE,
            format!("self-equivalence dropped for `{}`", e.first()),
        ));
    }

    for md in &m.modifiers {
        if let ModifierKind::Inverse { counterpart } = &md.kind {
            if !m.properties.contains_key(counterpart) {
                out.push(Diagnostic::warning(
                    codes::UNDECLARED_INVERSE,
                    format!(
                        "`{}` is declared inverse of undeclared property `{counterpart}`",
                        md.target
                    ),
                ));
            }
        }
    }
    out
}

/// Removes `A ≡ A` pairs, returning how many were dropped.
pub fn drop_self_equivalences(m: &mut OntologyModel) -> usize {
    let before = m.equivalences.len();
    m.equivalences.retain(|e, _| !e.is_reflexive());
    before - m.equivalences.len()
}
