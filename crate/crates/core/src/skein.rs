//! Twist families and the recursive relations they satisfy.
//!
//! Start from a diagram whose site crossing belongs to a twist region of `m`
//! crossings of one sign. Adding `2n` crossings to the region multiplies the
//! consolidated edge of that region by `x^{2n}` (`x = w` for positive twists,
//! in the white graph; `x = r` for negative ones, in the black graph). Cycles
//! avoiding the edge are those of `t_a`, the diagram with the whole region
//! smoothed along the orientation. Hence, in the relevant graph,
//!
//! ```text
//! C_k(D + 2n twists) = x^{2n} C_k(D) + (1 - x^{2n}) C_k(t_a)
//! ```
//!
//! for every index `k`. [`verify_relations`] checks this by computing every
//! term independently, for both colourings, and reports which one holds.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cwr::{compute_cwr, consolidated_graphs, CwrError, CwrValue};
use crate::diagram::{
    check_alternating, insert_twists, nugatory_crossing, smooth_oriented, Color, CrossingSign,
    DiagramError, FaceMap, PlanarDiagram,
};
use crate::poly::{BivarPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Cwr(#[from] CwrError),
    #[error("member with {crossings} twist crossings is invalid: {source}")]
    Member {
        crossings: usize,
        source: DiagramError,
    },
    #[error("smoothing the twist region gives an invalid diagram: {0}")]
    Base(DiagramError),
}

/// Diagrams that differ only in the length of one twist region.
#[derive(Debug, Clone)]
pub struct TwistFamily {
    /// The region smoothed away; may be a crossingless unlink.
    pub base: PlanarDiagram,
    /// The starting diagram, containing the site crossing.
    pub start: PlanarDiagram,
    pub site: u32,
    pub sign: CrossingSign,
    /// Crossing index of the site in `start` and in every member.
    pub site_crossing: usize,
    /// Crossings in the twist region of `start`.
    pub region: Vec<usize>,
    /// `members[n]` has `2n` crossings added to the region.
    pub members: Vec<PlanarDiagram>,
}

impl TwistFamily {
    /// Colour of the graph in which the region is a single edge.
    pub fn relevant_color(&self) -> Color {
        relevant_color(self.sign)
    }

    /// `w` for positive twists, `r` for negative.
    pub fn variable(&self) -> Monomial {
        match self.sign {
            CrossingSign::Positive => Monomial::W,
            CrossingSign::Negative => Monomial::R,
        }
    }

    /// True when the smoothed base has no crossings left.
    pub fn base_is_degenerate(&self) -> bool {
        self.base.num_crossings() == 0
    }

    pub fn region_size(&self, n: usize) -> usize {
        self.region.len() + 2 * n
    }
}

fn relevant_color(sign: CrossingSign) -> Color {
    match sign {
        CrossingSign::Positive => Color::White,
        CrossingSign::Negative => Color::Black,
    }
}

fn validate(d: &PlanarDiagram) -> Result<(), DiagramError> {
    if !check_alternating(d) {
        return Err(DiagramError::NotAlternating);
    }
    match nugatory_crossing(&FaceMap::compute(d)?) {
        Some(crossing) => Err(DiagramError::NotReduced { crossing }),
        None => Ok(()),
    }
}

/// Builds the family `start + 2n` twists for `n = 0..=n_max`, twisting next
/// to the crossing that edge `site` runs into.
pub fn build_family(
    start: &PlanarDiagram,
    site: u32,
    sign: CrossingSign,
    n_max: usize,
) -> Result<TwistFamily, SkeinError> {
    validate(start)?;
    insert_twists(start, site, 0, sign)?;
    let site_crossing = start
        .arc(site)
        .ok_or(DiagramError::InvalidSite { label: site })?
        .head
        .crossing;
    let (black, white) = consolidated_graphs(start)?;
    let graph = match relevant_color(sign) {
        Color::Black => black,
        Color::White => white,
    };
    let region = graph
        .edges
        .iter()
        .find(|e| e.crossings.contains(&site_crossing))
        .map(|e| e.crossings.clone())
        .expect("every crossing has an edge");

    let base = smooth_oriented(start, &region).map_err(SkeinError::Base)?;
    if base.num_crossings() > 0 {
        validate(&base).map_err(SkeinError::Base)?;
    }

    let members = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let crossings = region.len() + 2 * n;
            let d = insert_twists(start, site, 2 * n, sign)
                .map_err(|source| SkeinError::Member { crossings, source })?;
            validate(&d).map_err(|source| SkeinError::Member { crossings, source })?;
            Ok(d)
        })
        .collect::<Result<Vec<_>, SkeinError>>()?;
    Ok(TwistFamily {
        base,
        start: start.clone(),
        site,
        sign,
        site_crossing,
        region,
        members,
    })
}

/// One index of one member, checked in both colourings.
#[derive(Debug, Clone, Serialize)]
pub struct RelationRow {
    pub n: usize,
    pub k: usize,
    pub black_holds: bool,
    pub white_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeinReport {
    pub sign: CrossingSign,
    pub region_size: usize,
    pub degenerate_base: bool,
    pub expected_color: Color,
    /// Colourings in which every row holds.
    pub matched: Vec<Color>,
    pub rows: Vec<RelationRow>,
    /// Per member: the region consolidates to one edge of weight `x^{m+2n}`.
    pub single_edge: Vec<bool>,
    pub values: Vec<CwrValue>,
    pub base_value: CwrValue,
}

impl SkeinReport {
    pub fn all_passed(&self) -> bool {
        self.matched.contains(&self.expected_color) && self.single_edge.iter().all(|b| *b)
    }

    pub fn render_text(&self) -> String {
        let name = |c: Color| match c {
            Color::Black => "CB",
            Color::White => "CW",
        };
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        let mut out = String::new();
        let sign = match self.sign {
            CrossingSign::Positive => "positive",
            CrossingSign::Negative => "negative",
        };
        writeln!(
            out,
            "{sign} twists, region of {} crossing(s)",
            self.region_size
        )
        .unwrap();
        writeln!(
            out,
            "t_a = {}{}",
            self.base_value,
            if self.degenerate_base {
                " (crossingless)"
            } else {
                ""
            }
        )
        .unwrap();
        for (n, v) in self.values.iter().enumerate() {
            writeln!(out, "n={n}  {v}").unwrap();
        }
        writeln!(out, "{:>3} {:>3}  {:>4}  {:>4}", "n", "k", "CB", "CW").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:>3} {:>3}  {:>4}  {:>4}",
                r.n,
                r.k,
                verdict(r.black_holds),
                verdict(r.white_holds)
            )
            .unwrap();
        }
        let matched: Vec<&str> = self.matched.iter().map(|&c| name(c)).collect();
        writeln!(
            out,
            "relation holds for: {}",
            if matched.is_empty() {
                "none".into()
            } else {
                matched.join(", ")
            }
        )
        .unwrap();
        writeln!(
            out,
            "single consolidated edge: {}",
            verdict(self.single_edge.iter().all(|b| *b))
        )
        .unwrap();
        out.push_str(if self.all_passed() {
            "PASS\n"
        } else {
            "FAIL\n"
        });
        out
    }
}

/// Right-hand side `x^{2n} a + (1 - x^{2n}) b`.
pub fn relation_rhs(x: Monomial, n: usize, start: &BivarPoly, base: &BivarPoly) -> BivarPoly {
    let scale = x.pow(2 * n as u32);
    start.mul_monomial(scale) + (BivarPoly::one() - BivarPoly::from(scale)) * base
}

/// Checks the relation for every member and every `2 <= k <= k_max`.
pub fn verify_relations(f: &TwistFamily, k_max: usize) -> Result<SkeinReport, SkeinError> {
    let values = f
        .members
        .par_iter()
        .map(compute_cwr)
        .collect::<Result<Vec<_>, _>>()?;
    let base_value = if f.base_is_degenerate() {
        CwrValue::zero()
    } else {
        compute_cwr(&f.base)?
    };
    let x = f.variable();
    let start = &values[0];
    let mut rows = Vec::new();
    for (n, v) in values.iter().enumerate() {
        for k in 2..=k_max {
            let (b, w) = v.get(k);
            let black_holds = b == relation_rhs(x, n, &start.cb(k), &base_value.cb(k));
            let white_holds = w == relation_rhs(x, n, &start.cw(k), &base_value.cw(k));
            rows.push(RelationRow {
                n,
                k,
                black_holds,
                white_holds,
            });
        }
    }
    let matched = [Color::Black, Color::White]
        .into_iter()
        .filter(|&c| {
            rows.iter().all(|r| {
                if c == Color::Black {
                    r.black_holds
                } else {
                    r.white_holds
                }
            })
        })
        .collect();

    let single_edge = f
        .members
        .iter()
        .enumerate()
        .map(|(n, d)| -> Result<bool, SkeinError> {
            let (b, w) = consolidated_graphs(d)?;
            let g = if f.relevant_color() == Color::Black {
                b
            } else {
                w
            };
            let size = f.region_size(n);
            Ok(g.edges.iter().any(|e| {
                e.crossings.contains(&f.site_crossing)
                    && e.crossings.len() == size
                    && e.weight == x.pow(size as u32)
            }))
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SkeinReport {
        sign: f.sign,
        region_size: f.region.len(),
        degenerate_base: f.base_is_degenerate(),
        expected_color: f.relevant_color(),
        matched,
        rows,
        single_edge,
        values,
        base_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwr::parse_cwr;
    use crate::diagram::mirror;
    use crate::diagram::tests::{figure_eight, trefoil};

    #[test]
    fn trefoil_family_is_torus_family() {
        let f = build_family(&trefoil(), 1, CrossingSign::Positive, 2).unwrap();
        assert_eq!(f.region, vec![0, 1, 2]);
        assert!(f.base_is_degenerate());
        assert_eq!(f.base.n_components(), 2);
        let r = verify_relations(&f, 6).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
        assert_eq!(
            r.values[1],
            parse_cwr("((5w, w^5), (0,0), (0,0), (w^5, 0))").unwrap()
        );
        assert_eq!(
            r.values[2],
            parse_cwr("((7w, w^7), (0,0), (0,0), (0,0), (0,0), (w^7, 0))").unwrap()
        );
    }

    #[test]
    fn mirrored_trefoil_family_uses_black_graph() {
        let f = build_family(&mirror(&trefoil()), 1, CrossingSign::Negative, 2).unwrap();
        let r = verify_relations(&f, 6).unwrap();
        assert_eq!(r.expected_color, Color::Black);
        assert!(r.all_passed(), "{}", r.render_text());
    }

    fn k6a1() -> PlanarDiagram {
        crate::catalog::Catalog::bundled().resolve("K6a1").unwrap()
    }

    #[test]
    fn n_max_zero_is_identity() {
        let f = build_family(&k6a1(), 3, CrossingSign::Positive, 0).unwrap();
        assert_eq!(f.members.len(), 1);
        let r = verify_relations(&f, 4).unwrap();
        assert!(r.rows.iter().all(|row| row.black_holds && row.white_holds));
    }

    #[test]
    fn single_crossing_sites_of_both_signs() {
        for (site, sign, color) in [
            (3, CrossingSign::Positive, Color::White),
            (8, CrossingSign::Negative, Color::Black),
        ] {
            let f = build_family(&k6a1(), site, sign, 2).unwrap();
            assert_eq!(f.region.len(), 1);
            assert_eq!(f.base.num_crossings(), 5);
            let r = verify_relations(&f, 6).unwrap();
            assert_eq!(r.matched, vec![color]);
            assert!(r.all_passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn unreduced_base_is_rejected() {
        // the figure-eight's clasp smooths to a kinked diagram
        let d = figure_eight();
        let bad = d.arcs().find_map(|a| {
            let sign = d.crossing_sign(a.head.crossing);
            build_family(&d, a.label, sign, 1).err()
        });
        assert!(matches!(
            bad,
            Some(SkeinError::Base(DiagramError::NotReduced { .. }))
        ));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            build_family(&trefoil(), 99, CrossingSign::Positive, 1),
            Err(SkeinError::Diagram(DiagramError::InvalidSite { label: 99 }))
        ));
        assert!(matches!(
            build_family(&trefoil(), 1, CrossingSign::Negative, 1),
            Err(SkeinError::Diagram(DiagramError::TwistSignMismatch { .. }))
        ));
    }

    #[test]
    fn rhs_at_n_zero_is_start() {
        let a: BivarPoly = "3w + r".parse().unwrap();
        let b: BivarPoly = "w^2".parse().unwrap();
        assert_eq!(relation_rhs(Monomial::R, 0, &a, &b), a);
    }
}
