//! Computes the invariant of a PD code given on the command line, or of the
//! trefoil by default.
//!
//! cargo run --example compute_invariant -- "PD[X(1,5,2,4), X(3,1,4,6), ...]"

use cwr_knots::cwr::{compute_cwr, crossing_number, derive_wrp, writhe};
use cwr_knots::diagram::parse_pd;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pd = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "PD[X(3,1,4,6), X(1,5,2,4), X(5,3,6,2)]".into());
    let d = parse_pd(&pd)?;
    let v = compute_cwr(&d)?;
    println!("CWR     {v}");
    println!("WRP     {}", derive_wrp(&v));
    println!("crossings {}, writhe {}", crossing_number(&v)?, writhe(&v)?);
    for i in 2..=v.max_index() {
        println!("  CB{i} = {}   CW{i} = {}", v.cb(i), v.cw(i));
    }
    Ok(())
}
