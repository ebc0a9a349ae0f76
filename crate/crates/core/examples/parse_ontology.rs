//! Parse an RDF/XML ontology and inspect what was read.
//!
//! ```bash
//! cargo run --example parse_ontology [path/to/file.owl]
//! ```

use fuzzonto::ingest::{parse_document, validate_model, Format, ParseOptions};

const SAMPLE: &str = r##"<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xml:base="http://example.org/geo">
  <owl:Class rdf:about="#City"><rdfs:subClassOf rdf:resource="#Country"/></owl:Class>
  <owl:Class rdf:about="#Country"/>
  <owl:DatatypeProperty rdf:about="#population"><rdfs:domain rdf:resource="#City"/></owl:DatatypeProperty>
  <owl:Restriction/>
</rdf:RDF>
"##;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bytes = match std::env::args().nth(1) {
        Some(path) => std::fs::read(path)?,
        None => SAMPLE.as_bytes().to_vec(),
    };
    // Lenient mode: unsupported constructs become warnings.
    let parsed = parse_document(&bytes, Format::RdfXml, ParseOptions::default())?;
    for w in parsed.warnings.iter().chain(&validate_model(&parsed.model)) {
        println!("{w}");
    }
    print!("{}", fuzzonto::emit::model_text(&parsed.model));
    println!("counts: {:?}", parsed.model.counts());
    Ok(())
}
