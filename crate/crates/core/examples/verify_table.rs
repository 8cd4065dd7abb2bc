//! Recomputes every bundled record and compares with its stored value.

use cwr_knots::catalog::{verify_against_expected, Catalog};

fn main() {
    let c = Catalog::bundled();
    let report = verify_against_expected(c.records(), true);
    print!("{}", report.render_text());
    if !report.all_passed() {
        std::process::exit(1);
    }
}
