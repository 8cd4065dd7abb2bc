//! Pairs of knots that share simpler invariants, compared by this one.

use cwr_knots::catalog::{distinguishing_report, Catalog};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Catalog::bundled();
    for (a, b) in [
        ("K12a24", "K12a299"),
        ("K11a75", "K11a102"),
        ("K12a29", "K12a113m"),
    ] {
        print!("{}", distinguishing_report(&c, a, b)?.render_text());
        println!();
    }
    Ok(())
}
