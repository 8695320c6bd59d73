//! Lists the statement families and writes the registry as JSON.
//!
//!     cargo run --example export_registry -- registry.json

use gini_refine::registry::{self, all_statements, family_counts};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (family, n) in family_counts() {
        println!("{family:<6} {n}");
    }
    let s = registry::get("g1.10").expect("registered");
    println!("{s}\n  from: {}", s.source);

    let path = std::env::args().nth(1).unwrap_or_else(|| "registry.json".into());
    registry::export_json(path.as_ref())?;
    let back = registry::import_json(path.as_ref())?;
    assert_eq!(back, all_statements());
    println!("wrote {} statements to {path}", back.len());
    Ok(())
}
