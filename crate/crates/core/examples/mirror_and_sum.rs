//! Mirror images and connected sums: the invariant of a mirror swaps colours
//! and variables, and the invariant of a connected sum is the componentwise sum.

use cwr_knots::catalog::Catalog;
use cwr_knots::cwr::{compute_cwr, mirror_value};
use cwr_knots::diagram::{connected_sum, mirror};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Catalog::bundled();
    for name in ["K3a1", "K4a1", "K7a1"] {
        let d = c.resolve(name)?;
        let v = compute_cwr(&d)?;
        let m = compute_cwr(&mirror(&d))?;
        let verdict = if v == m {
            "self-mirror-equal"
        } else {
            "mirror-distinct"
        };
        println!(
            "{name}: {v}\n  mirror {m} ({verdict}, formula holds: {})",
            m == mirror_value(&v)
        );
    }
    for (a, b) in [("K3a1", "K3a1"), ("K3a1", "K3a1m"), ("K4a1", "K5a2")] {
        let (da, db) = (c.resolve(a)?, c.resolve(b)?);
        let sum = compute_cwr(&connected_sum(&da, &db)?)?;
        let expected = &compute_cwr(&da)? + &compute_cwr(&db)?;
        println!("{a} # {b} = {sum} (additive: {})", sum == expected);
    }
    Ok(())
}
