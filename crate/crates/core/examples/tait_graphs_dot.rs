//! Prints the weighted Tait graphs of a catalog knot in DOT format.
//!
//! cargo run --example tait_graphs_dot -- K7a1 | dot -Tsvg > k7a1.svg

use cwr_knots::catalog::Catalog;
use cwr_knots::tait::{build_tait, consolidate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "K7a1".into());
    let d = Catalog::bundled().resolve(&name)?;
    let (black, white) = build_tait(&d)?;
    for g in [&black, &white] {
        let c = consolidate(g);
        println!(
            "// {name}: {} faces, {} crossings, {} consolidated edges",
            c.vertices.len(),
            g.edges.len(),
            c.edges.len()
        );
        print!("{}", c.to_dot());
    }
    Ok(())
}
