//! Recovers the length-2 and length-3 cycle sums from traces of the weighted
//! adjacency matrices and compares them with direct cycle enumeration.

use cwr_knots::catalog::Catalog;
use cwr_knots::cwr::{cb_cw, consolidated_graphs};
use cwr_knots::matrix_oracle::{cross_check, trace_components, WeightedAdjMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "K7a1".into());
    let d = Catalog::bundled().resolve(&name)?;
    let (black, white) = consolidated_graphs(&d)?;
    for g in [&black, &white] {
        println!(
            "{:?} graph adjacency matrix:\n{}",
            g.color,
            WeightedAdjMatrix::of_graph(g)
        );
        let (two, three) = trace_components(g)?;
        println!("  traces  i=2: {two}   i=3: {three}");
        println!("  cycles  i=2: {}   i=3: {}", cb_cw(g, 2), cb_cw(g, 3));
        cross_check(g)?;
    }
    println!("oracle agrees");
    Ok(())
}
