//! Export the standard form as RDF/XML using only plain OWL constructs.

use fuzzonto::emit::emit_normalized_rdf;
use fuzzonto::ingest::{parse_document, Format, ParseOptions};
use fuzzonto::normalize::{normalize, NormalizeOptions};

const INPUT: &str = r##"<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#">
  <owl:Class rdf:about="#Latgale"/>
  <owl:Class rdf:about="#Latvia"/>
  <owl:Class rdf:about="#EU"/>
  <owl:TransitiveProperty rdf:about="#subAreaOf">
    <rdf:type rdf:resource="http://www.w3.org/2002/07/owl#ObjectProperty"/>
    <rdfs:domain rdf:resource="#Latgale"/>
    <rdfs:range rdf:resource="#Latvia"/>
  </owl:TransitiveProperty>
  <owl:ObjectProperty rdf:about="#subAreaOf">
    <rdfs:domain rdf:resource="#Latvia"/>
    <rdfs:range rdf:resource="#EU"/>
  </owl:ObjectProperty>
</rdf:RDF>
"##;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let parsed = parse_document(INPUT.as_bytes(), Format::RdfXml, ParseOptions { strict: true })?;
    let normalized = normalize(&parsed.model, NormalizeOptions::default())?.model;
    let rdf = emit_normalized_rdf(&normalized)?;
    print!("{}", String::from_utf8(rdf)?);
    Ok(())
}
