//! Writes the bundled fixtures as JSON documents.
//!
//! `cargo run --example write_corpus [DIR]` (default: the crate's `fixtures/`).

use std::fs;
use std::path::PathBuf;

use itermon::corpus::fixture_documents;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    for (path, doc) in fixture_documents() {
        let full = dir.join(&path);
        if let Some(parent) = full.parent() {
            fs::create_dir_all(parent)?;
        }
        doc.write(&full)?;
        println!("{}", full.display());
    }
    Ok(())
}
