use std::collections::BTreeMap;

use roxmltree::{Document, Node};

use super::{local_name, IngestError, ParseOptions, Parsed};
use crate::diag::{codes, Diagnostic};
use crate::model::{
    ClassRef, Equivalence, OntologyModel, Origin, PropertyHolding, PropertyKind, RawModifier,
    RelationAssertion, SubclassAxiom,
};

pub(crate) const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub(crate) const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub(crate) const OWL: &str = "http://www.w3.org/2002/07/owl#";
const XML: &str = "http://www.w3.org/XML/1998/namespace";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DeclKind {
    Class,
    ObjectProperty,
    DatatypeProperty,
}

impl DeclKind {
    fn label(self) -> &'static str {
        match self {
            DeclKind::Class => "a class",
            DeclKind::ObjectProperty => "an object property",
            DeclKind::DatatypeProperty => "a datatype property",
        }
    }
}

pub(super) fn parse(bytes: &[u8], options: ParseOptions) -> Result<Parsed, IngestError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| IngestError::MalformedDocument(format!("invalid UTF-8: {e}")))?;
    let doc = Document::parse(text).map_err(|e| IngestError::MalformedDocument(e.to_string()))?;
    let root = doc.root_element();
    if !is(root, RDF, "RDF") {
        return Err(IngestError::MalformedDocument(format!(
            "root element must be rdf:RDF, found `{}`",
            root.tag_name().name()
        )));
    }

    let mut reader = Reader {
        doc: &doc,
        strict: options.strict,
        base: root.attribute((XML, "base")).map(str::to_owned),
        model: OntologyModel::new(),
        warnings: Vec::new(),
        decls: BTreeMap::new(),
    };
    for node in root.children().filter(Node::is_element) {
        reader.top_level(node)?;
    }
    Ok(Parsed {
        model: reader.model,
        warnings: reader.warnings,
    })
}

fn is(node: Node, ns: &str, name: &str) -> bool {
    node.tag_name().namespace() == Some(ns) && node.tag_name().name() == name
}

struct Reader<'a, 'input> {
    doc: &'a Document<'input>,
    strict: bool,
    base: Option<String>,
    model: OntologyModel,
    warnings: Vec<Diagnostic>,
    decls: BTreeMap<String, DeclKind>,
}

/// Accumulated contents of one property declaration block.
#[derive(Default)]
struct PropertyBlock {
    kind: Option<DeclKind>,
    symmetric: bool,
    transitive: bool,
    domains: Vec<String>,
    ranges: Vec<String>,
    inverses: Vec<String>,
}

impl<'a, 'input> Reader<'a, 'input> {
    fn location(&self, node: Node) -> String {
        let pos = self.doc.text_pos_at(node.range().start);
        format!("line {}, column {}", pos.row, pos.col)
    }

    fn unsupported(&mut self, node: Node, what: &str) -> Result<(), IngestError> {
        let location = self.location(node);
        if self.strict {
            return Err(IngestError::UnsupportedConstruct {
                construct: what.to_owned(),
                location,
            });
        }
        self.warnings.push(
            Diagnostic::warning(
                codes::UNSUPPORTED_CONSTRUCT,
                format!("`{what}` is outside the supported subset and was skipped"),
            )
            .at(location),
        );
        Ok(())
    }

    fn tag_label(node: Node) -> String {
        let tag = node.tag_name();
        let prefix = match tag.namespace() {
            Some(RDF) => "rdf:",
            Some(RDFS) => "rdfs:",
            Some(OWL) => "owl:",
            _ => "",
        };
        format!("{prefix}{}", tag.name())
    }

    /// Resolves a reference attribute value to a class, registering it in the model.
    fn class_ref(&mut self, node: Node, reference: &str) -> Result<String, IngestError> {
        let name = local_name(reference);
        if name.is_empty() {
            return Err(IngestError::MalformedDocument(format!(
                "empty identifier `{reference}` at {}",
                self.location(node)
            )));
        }
        let iri = if !reference.starts_with('#') && reference.contains(':') {
            Some(reference.to_owned())
        } else {
            self.base
                .as_ref()
                .map(|b| format!("{}#{name}", b.trim_end_matches('#')))
        };
        self.model.declare_class(ClassRef {
            name: name.to_owned(),
            iri,
        });
        Ok(name.to_owned())
    }

    /// The identifier declared by `rdf:ID` or `rdf:about`.
    fn declared_id<'n>(&self, node: Node<'n, 'input>) -> Result<&'n str, IngestError>
    where
        'input: 'n,
    {
        node.attribute((RDF, "ID"))
            .or_else(|| node.attribute((RDF, "about")))
            .ok_or_else(|| {
                IngestError::MalformedDocument(format!(
                    "`{}` without rdf:ID or rdf:about at {}",
                    Self::tag_label(node),
                    self.location(node)
                ))
            })
    }

    fn declare(&mut self, name: &str, kind: DeclKind) -> Result<(), IngestError> {
        match self.decls.get(name) {
            Some(&prev) if prev != kind => Err(IngestError::DuplicateIdentifier {
                name: name.to_owned(),
                first: prev.label(),
                second: kind.label(),
            }),
            Some(_) => Ok(()),
            None => {
                self.decls.insert(name.to_owned(), kind);
                Ok(())
            }
        }
    }

    /// Resource named by `rdf:resource`, or by a nested `<owl:Class rdf:about>`.
    fn referenced(&self, node: Node<'_, 'input>) -> Option<String> {
        if let Some(r) = node.attribute((RDF, "resource")) {
            return Some(r.to_owned());
        }
        let mut children = node.children().filter(Node::is_element);
        let child = children.next()?;
        if children.next().is_some() {
            return None;
        }
        if is(child, OWL, "Class") || is(child, RDF, "Description") {
            child
                .attribute((RDF, "about"))
                .or_else(|| child.attribute((RDF, "ID")))
                .map(str::to_owned)
        } else {
            None
        }
    }

    fn top_level(&mut self, node: Node<'_, 'input>) -> Result<(), IngestError> {
        if node.tag_name().namespace() == Some(OWL) {
            match node.tag_name().name() {
                "Ontology" => return self.ontology_header(node),
                "Class" => return self.class_block(node),
                "ObjectProperty" => {
                    return self.property_block(node, Some(DeclKind::ObjectProperty), false, false)
                }
                "DatatypeProperty" => {
                    return self.property_block(node, Some(DeclKind::DatatypeProperty), false, false)
                }
                "SymmetricProperty" => {
                    return self.property_block(node, Some(DeclKind::ObjectProperty), true, false)
                }
                "TransitiveProperty" => {
                    return self.property_block(node, Some(DeclKind::ObjectProperty), false, true)
                }
                _ => {}
            }
        }
        self.unsupported(node, &Self::tag_label(node))
    }

    fn ontology_header(&mut self, node: Node) -> Result<(), IngestError> {
        for child in node.children().filter(Node::is_element) {
            if is(child, OWL, "imports") {
                let target = child.attribute((RDF, "resource")).unwrap_or("?");
                self.warnings.push(
                    Diagnostic::warning(
                        codes::IGNORED_IMPORT,
                        format!("owl:imports of `{target}` ignored"),
                    )
                    .at(self.location(child)),
                );
            }
        }
        Ok(())
    }

    fn class_block(&mut self, node: Node<'_, 'input>) -> Result<(), IngestError> {
        let id = self.declared_id(node)?.to_owned();
        let name = self.class_ref(node, &id)?;
        self.declare(&name, DeclKind::Class)?;

        for child in node.children().filter(Node::is_element) {
            let ns = child.tag_name().namespace();
            let local = child.tag_name().name();
            match (ns, local) {
                (Some(RDFS), "subClassOf") => match self.referenced(child) {
                    Some(r) => {
                        let sup = self.class_ref(child, &r)?;
                        self.model
                            .insert_subclass(SubclassAxiom::new(&name, sup), Origin::Asserted);
                    }
                    None => self.unsupported(child, "rdfs:subClassOf with anonymous class")?,
                },
                (Some(OWL), "equivalentClass") => match self.referenced(child) {
                    Some(r) => {
                        let other = self.class_ref(child, &r)?;
                        self.model
                            .insert_equivalence(Equivalence::new(&name, other), Origin::Asserted);
                    }
                    None => self.unsupported(child, "owl:equivalentClass with anonymous class")?,
                },
                (Some(OWL), "intersectionOf") => self.intersection(&name, child)?,
                (Some(RDFS), "label" | "comment" | "seeAlso" | "isDefinedBy") | (Some(RDF), "type") => {}
                (Some(RDF | RDFS | OWL), _) => {
                    let label = Self::tag_label(child);
                    self.unsupported(child, &label)?
                }
                _ => {
                    // Class-nested relation or datatype-property value.
                    if let Some(r) = child.attribute((RDF, "resource")) {
                        let object = self.class_ref(child, r)?;
                        self.model.insert_relation(
                            RelationAssertion::new(local, &name, object),
                            Origin::Asserted,
                        );
                    } else {
                        self.model
                            .insert_holding(PropertyHolding::new(local, &name), Origin::Asserted);
                    }
                }
            }
        }
        Ok(())
    }

    fn intersection(&mut self, class: &str, node: Node<'_, 'input>) -> Result<(), IngestError> {
        if node.attribute((RDF, "parseType")) != Some("Collection") {
            return self.unsupported(node, "owl:intersectionOf without rdf:parseType=\"Collection\"");
        }
        let mut members = Vec::new();
        for member in node.children().filter(Node::is_element) {
            let reference = if is(member, OWL, "Class") || is(member, RDF, "Description") {
                member
                    .attribute((RDF, "about"))
                    .or_else(|| member.attribute((RDF, "resource")))
            } else {
                None
            };
            match reference {
                Some(r) => {
                    let m = self.class_ref(member, r)?;
                    if !members.contains(&m) {
                        members.push(m);
                    }
                }
                None => {
                    let label = format!("{} inside owl:intersectionOf", Self::tag_label(member));
                    self.unsupported(member, &label)?
                }
            }
        }
        self.model
            .modifiers
            .insert(RawModifier::intersection(class, members));
        Ok(())
    }

    fn property_block(
        &mut self,
        node: Node<'_, 'input>,
        kind: Option<DeclKind>,
        symmetric: bool,
        transitive: bool,
    ) -> Result<(), IngestError> {
        let id = self.declared_id(node)?;
        let name = local_name(id).to_owned();
        if name.is_empty() {
            return Err(IngestError::MalformedDocument(format!(
                "empty property identifier at {}",
                self.location(node)
            )));
        }
        let mut block = PropertyBlock {
            kind,
            symmetric,
            transitive,
            ..PropertyBlock::default()
        };

        for child in node.children().filter(Node::is_element) {
            let ns = child.tag_name().namespace();
            match (ns, child.tag_name().name()) {
                (Some(RDFS), which @ ("domain" | "range")) => match self.referenced(child) {
                    Some(r) => {
                        if which == "domain" {
                            block.domains.push(r)
                        } else {
                            block.ranges.push(r)
                        }
                    }
                    None => {
                        let label = format!("rdfs:{which} with anonymous class");
                        self.unsupported(child, &label)?
                    }
                },
                (Some(OWL), "inverseOf") => {
                    let counterpart = child.attribute((RDF, "resource")).or_else(|| {
                        child
                            .children()
                            .find(Node::is_element)
                            .and_then(|c| c.attribute((RDF, "about")))
                    });
                    match counterpart {
                        Some(c) => block.inverses.push(local_name(c).to_owned()),
                        None => self.unsupported(child, "owl:inverseOf without a named property")?,
                    }
                }
                (Some(RDF), "type") => {
                    let target = child.attribute((RDF, "resource")).unwrap_or_default();
                    let owl_local = target.strip_prefix(OWL);
                    match owl_local {
                        Some("ObjectProperty") => {
                            block.kind.get_or_insert(DeclKind::ObjectProperty);
                        }
                        Some("DatatypeProperty") => match block.kind {
                            Some(DeclKind::ObjectProperty) => {
                                return Err(IngestError::DuplicateIdentifier {
                                    name,
                                    first: DeclKind::ObjectProperty.label(),
                                    second: DeclKind::DatatypeProperty.label(),
                                })
                            }
                            _ => block.kind = Some(DeclKind::DatatypeProperty),
                        },
                        Some("SymmetricProperty") => block.symmetric = true,
                        Some("TransitiveProperty") => block.transitive = true,
                        _ => {
                            let label = format!("rdf:type {target}");
                            self.unsupported(child, &label)?
                        }
                    }
                }
                (Some(RDFS), "label" | "comment" | "seeAlso" | "isDefinedBy") => {}
                _ => {
                    let label = Self::tag_label(child);
                    self.unsupported(child, &label)?
                }
            }
        }

        let kind = block.kind.unwrap_or(DeclKind::ObjectProperty);
        if kind == DeclKind::DatatypeProperty && (block.symmetric || block.transitive) {
            return Err(IngestError::DuplicateIdentifier {
                name,
                first: DeclKind::DatatypeProperty.label(),
                second: DeclKind::ObjectProperty.label(),
            });
        }
        self.declare(&name, kind)?;
        let location = self.location(node);
        match kind {
            DeclKind::DatatypeProperty => {
                self.model.declare_property(&name, PropertyKind::Datatype);
                for d in &block.domains {
                    let holder = self.class_ref(node, d)?;
                    self.model
                        .insert_holding(PropertyHolding::new(&name, holder), Origin::Asserted);
                }
            }
            _ => {
                self.model.declare_property(&name, PropertyKind::Object);
                let domains = block
                    .domains
                    .iter()
                    .map(|d| self.class_ref(node, d))
                    .collect::<Result<Vec<_>, _>>()?;
                let ranges = block
                    .ranges
                    .iter()
                    .map(|r| self.class_ref(node, r))
                    .collect::<Result<Vec<_>, _>>()?;
                if domains.is_empty() != ranges.is_empty() {
                    self.warnings.push(
                        Diagnostic::warning(
                            codes::NO_DOMAIN_RANGE,
                            format!(
                                "object property `{name}` has a domain or a range but not both; no relation materialized"
                            ),
                        )
                        .at(location),
                    );
                }
                for d in &domains {
                    for r in &ranges {
                        self.model.insert_relation(
                            RelationAssertion::new(&name, d, r),
                            Origin::Asserted,
                        );
                    }
                }
                if block.symmetric {
                    self.model.modifiers.insert(RawModifier::symmetric(&name));
                }
                if block.transitive {
                    self.model.modifiers.insert(RawModifier::transitive(&name));
                }
                for q in block.inverses {
                    self.model.modifiers.insert(RawModifier::inverse(&name, q));
                }
            }
        }
        Ok(())
    }
}
