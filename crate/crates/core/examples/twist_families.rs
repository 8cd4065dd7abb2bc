//! Builds families of diagrams by adding pairs of half-twists at a crossing
//! and checks the twist relations on each.

use cwr_knots::catalog::Catalog;
use cwr_knots::diagram::CrossingSign;
use cwr_knots::skein::{build_family, verify_relations};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Catalog::bundled();
    let families = [
        ("K3a1", 1, CrossingSign::Positive),
        ("K6a1", 8, CrossingSign::Negative),
        ("K6a1", 3, CrossingSign::Positive),
    ];
    for (name, site, sign) in families {
        let family = build_family(&c.resolve(name)?, site, sign, 2)?;
        let report = verify_relations(&family, 6)?;
        println!("{name}, edge {site}, {sign:?} twists");
        print!("{}", report.render_text());
        for (n, v) in report.values.iter().enumerate() {
            println!("  +{} twists: {v}", 2 * n);
        }
        println!();
    }
    Ok(())
}
