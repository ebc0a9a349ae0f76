//! Drive the command-line pipeline in-process, as the `fuzzonto` binary does.

use std::io;

fn main() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/settlements.owl");
    let code = fuzzonto::cli::run_pipeline(
        ["fuzzonto", "rules", fixture, "--format", "text"],
        &mut io::stdout(),
        &mut io::stderr(),
    );
    std::process::exit(code);
}
