//! Regenerates `data/connected_n*.g6`.
//!
//! cargo run --release -p ippkit-core --example gen_corpus -- crates/core/data

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    for n in 1..=ippkit::corpus::BUNDLED_MAX_N {
        let lines = ippkit::corpus::generate_connected(n)?;
        let mut text = lines.join("\n");
        text.push('\n');
        std::fs::write(dir.join(format!("connected_n{n}.g6")), text)?;
        eprintln!("n={n}: {} graphs", lines.len());
    }
    Ok(())
}
