//! Builds a small catalog in memory, writes it as TOML, reads it back and
//! resolves names, including mirror names with an `m` suffix.

use cwr_knots::catalog::{parse_catalog, serialize_catalog, Catalog, KnotRecord};
use cwr_knots::cwr::compute_cwr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = vec![KnotRecord {
        name: "K3a1".into(),
        rolfsen: Some("3_1".into()),
        pd: Some("PD[X(3,1,4,6), X(1,5,2,4), X(5,3,6,2)]".into()),
        expected_cwr: Some("((3w, w^3), (w^3, 0))".into()),
        mirrored: false,
    }];
    let text = serialize_catalog(&records);
    print!("{text}");
    let c = Catalog::new(parse_catalog(&text)?);
    for name in ["K3a1", "K3a1m", "unknot"] {
        println!("{name}: {}", compute_cwr(&c.resolve(name)?)?);
    }
    Ok(())
}
