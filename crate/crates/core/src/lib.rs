//! Cycle-weight invariant of alternating links.
//!
//! A diagram is read from a PD code ([`diagram::parse_pd`]), its faces are
//! checkerboard coloured, and the black and white Tait graphs are built and
//! consolidated ([`tait`]). The invariant ([`cwr::compute_cwr`]) sums weight
//! products over edges and simple cycles of each length in both graphs.
//!
//! ```
//! use cwr_knots::{cwr::compute_cwr, diagram::parse_pd};
//!
//! let trefoil = parse_pd("PD[X(3,1,4,6), X(1,5,2,4), X(5,3,6,2)]").unwrap();
//! assert_eq!(compute_cwr(&trefoil).unwrap().to_string(), "((3w, w^3), (w^3, 0))");
//! ```

pub mod catalog;
pub mod cli;
pub mod cwr;
pub mod diagram;
pub mod matrix_oracle;
pub mod poly;
pub mod skein;
pub mod tait;
