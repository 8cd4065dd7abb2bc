//! Second- and third-index components via weighted adjacency matrices.
//!
//! `CB_2 = trace(Ā·A)/2` and `CB_3 = trace(Ā³)/6`, where `Ā` holds the
//! consolidated edge weights and `A` is its 0/1 pattern. These are computed
//! without any cycle search and serve as a cross-check on it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cwr::cb_cw;
use crate::diagram::Color;
use crate::poly::{BivarPoly, PolyError};
use crate::tait::ConsolidatedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex order is not a permutation of the graph's vertices")]
    BadVertexOrder,
    #[error("trace {trace} is not divisible by {divisor}")]
    Indivisible { trace: BivarPoly, divisor: i64 },
    #[error("matrix sizes {0} and {1} differ")]
    SizeMismatch(usize, usize),
    #[error("{color:?} graph, index {index}: traces give {oracle}, cycles give {cycles}")]
    Mismatch {
        color: Color,
        index: usize,
        oracle: BivarPoly,
        cycles: BivarPoly,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dense symmetric matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAdjMatrix {
    n: usize,
    entries: Vec<BivarPoly>,
}

impl WeightedAdjMatrix {
    pub fn zero(n: usize) -> Self {
        WeightedAdjMatrix {
            n,
            entries: vec![BivarPoly::zero(); n * n],
        }
    }

    /// Rows and columns follow `vertex_order`, which must list each vertex of
    /// `g` exactly once.
    pub fn from_graph(g: &ConsolidatedGraph, vertex_order: &[usize]) -> Result<Self, OracleError> {
        let pos: BTreeMap<usize, usize> = vertex_order
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut sorted = vertex_order.to_vec();
        sorted.sort_unstable();
        let mut expected = g.vertices.clone();
        expected.sort_unstable();
        if sorted != expected || pos.len() != vertex_order.len() {
            return Err(OracleError::BadVertexOrder);
        }
        let mut m = WeightedAdjMatrix::zero(vertex_order.len());
        for e in &g.edges {
            let (i, j) = (pos[&e.u], pos[&e.v]);
            m.set(i, j, e.weight.into());
            m.set(j, i, e.weight.into());
        }
        Ok(m)
    }

    /// Rows and columns in the graph's own vertex order.
    pub fn of_graph(g: &ConsolidatedGraph) -> Self {
        WeightedAdjMatrix::from_graph(g, &g.vertices).expect("own vertex list is a permutation")
    }

    pub fn from_rows(rows: Vec<Vec<BivarPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        WeightedAdjMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BivarPoly {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, p: BivarPoly) {
        self.entries[i * self.n + j] = p;
    }

    /// Every nonzero entry replaced by 1.
    pub fn unit(&self) -> Self {
        WeightedAdjMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        BivarPoly::zero()
                    } else {
                        BivarPoly::one()
                    }
                })
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, OracleError> {
        if self.n != other.n {
            return Err(OracleError::SizeMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = WeightedAdjMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BivarPoly::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(b)?)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> BivarPoly {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl fmt::Display for WeightedAdjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn exact(trace: BivarPoly, divisor: i64) -> Result<BivarPoly, OracleError> {
    trace
        .exact_div(divisor)
        .ok_or(OracleError::Indivisible { trace, divisor })
}

/// `trace(Ā·A)/2`.
pub fn cwr2_via_trace(
    b: &WeightedAdjMatrix,
    unit_b: &WeightedAdjMatrix,
) -> Result<BivarPoly, OracleError> {
    exact(b.checked_mul(unit_b)?.trace(), 2)
}

/// `trace(Ā³)/6`.
pub fn cwr3_via_trace(b: &WeightedAdjMatrix) -> Result<BivarPoly, OracleError> {
    exact(b.checked_mul(b)?.checked_mul(b)?.trace(), 6)
}

/// Both trace components of one graph.
pub fn trace_components(g: &ConsolidatedGraph) -> Result<(BivarPoly, BivarPoly), OracleError> {
    let m = WeightedAdjMatrix::of_graph(g);
    Ok((cwr2_via_trace(&m, &m.unit())?, cwr3_via_trace(&m)?))
}

/// Compares the trace formulas with cycle enumeration on one graph.
pub fn cross_check(g: &ConsolidatedGraph) -> Result<(), OracleError> {
    let (two, three) = trace_components(g)?;
    for (index, oracle) in [(2, two), (3, three)] {
        let cycles = cb_cw(g, index);
        if oracle != cycles {
            return Err(OracleError::Mismatch {
                color: g.color,
                index,
                oracle,
                cycles,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwr::consolidated_graphs;
    use crate::diagram::parse_pd;
    use crate::poly::{parse_poly, Monomial};
    use proptest::prelude::*;

    const K7A1: &str = "PD[X(3,1,4,14), X(1,8,2,9), X(7,2,8,3), X(9,5,10,4), X(5,12,6,13), X(11,6,12,7), X(13,11,14,10)]";

    fn matrix(rows: &[&[&str]]) -> WeightedAdjMatrix {
        WeightedAdjMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s).unwrap()).collect())
                .collect(),
        )
    }

    fn reference_black() -> WeightedAdjMatrix {
        matrix(&[
            &["0", "0", "r", "r", "0"],
            &["0", "0", "0", "r", "r"],
            &["r", "0", "0", "w", "w"],
            &["r", "r", "w", "0", "w"],
            &["0", "r", "w", "w", "0"],
        ])
    }

    fn reference_white() -> WeightedAdjMatrix {
        matrix(&[
            &["0", "r^2", "r^2", "w"],
            &["r^2", "0", "0", "w"],
            &["r^2", "0", "0", "w"],
            &["w", "w", "w", "0"],
        ])
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Finds a vertex order under which `g` has exactly the matrix `m`.
    fn realizes(g: &ConsolidatedGraph, m: &WeightedAdjMatrix) -> bool {
        permutations(g.vertices.len()).into_iter().any(|p| {
            let order: Vec<usize> = p.iter().map(|&i| g.vertices[i]).collect();
            WeightedAdjMatrix::from_graph(g, &order).unwrap() == *m
        })
    }

    #[test]
    fn k7a1_graphs_match_reference_matrices() {
        let (b, w) = consolidated_graphs(&parse_pd(K7A1).unwrap()).unwrap();
        assert!(realizes(&b, &reference_black()));
        assert!(realizes(&w, &reference_white()));
    }

    #[test]
    fn k7a1_traces() {
        let b = reference_black();
        let w = reference_white();
        assert_eq!(
            cwr2_via_trace(&b, &b.unit()).unwrap(),
            parse_poly("4r + 3w").unwrap()
        );
        assert_eq!(
            cwr2_via_trace(&w, &w.unit()).unwrap(),
            parse_poly("2r^2 + 3w").unwrap()
        );
        assert_eq!(
            cwr3_via_trace(&b).unwrap(),
            parse_poly("2r^2w + w^3").unwrap()
        );
        assert_eq!(cwr3_via_trace(&w).unwrap(), parse_poly("2r^2w^2").unwrap());
    }

    #[test]
    fn k7a1_white_cube_matches_reference() {
        let w = reference_white();
        let cube = w.checked_mul(&w).unwrap().checked_mul(&w).unwrap();
        let expected = matrix(&[
            &[
                "4r^2w^2",
                "2r^6 + 3r^2w^2",
                "2r^6 + 3r^2w^2",
                "2r^4w + 3w^3",
            ],
            &["2r^6 + 3r^2w^2", "2r^2w^2", "2r^2w^2", "2r^4w + 3w^3"],
            &["2r^6 + 3r^2w^2", "2r^2w^2", "2r^2w^2", "2r^4w + 3w^3"],
            &["2r^4w + 3w^3", "2r^4w + 3w^3", "2r^4w + 3w^3", "4r^2w^2"],
        ]);
        assert_eq!(cube.trace(), expected.trace());
    }

    #[test]
    fn zero_and_triangle() {
        let z = WeightedAdjMatrix::zero(3);
        assert!(cwr2_via_trace(&z, &z.unit()).unwrap().is_zero());
        assert!(cwr3_via_trace(&z).unwrap().is_zero());
        let tri = ConsolidatedGraph::from_edges(
            vec![0, 1, 2],
            [
                (0, 1, Monomial::W),
                (1, 2, Monomial::W),
                (0, 2, Monomial::W),
            ],
        );
        let (two, three) = trace_components(&tri).unwrap();
        assert_eq!(two, parse_poly("3w").unwrap());
        assert_eq!(three, parse_poly("w^3").unwrap());
    }

    #[test]
    fn edgeless_graph_gives_zero_matrix() {
        let g = ConsolidatedGraph::from_edges(vec![4, 7], []);
        assert_eq!(WeightedAdjMatrix::of_graph(&g), WeightedAdjMatrix::zero(2));
    }

    #[test]
    fn indivisible_trace_is_reported() {
        let m = matrix(&[&["w", "0"], &["0", "0"]]);
        assert!(matches!(
            cwr2_via_trace(&m, &m.unit()),
            Err(OracleError::Indivisible { .. })
        ));
    }

    #[test]
    fn bad_vertex_order() {
        let g = ConsolidatedGraph::from_edges(vec![0, 1], [(0, 1, Monomial::W)]);
        assert_eq!(
            WeightedAdjMatrix::from_graph(&g, &[0, 0]).unwrap_err(),
            OracleError::BadVertexOrder
        );
        assert_eq!(
            WeightedAdjMatrix::from_graph(&g, &[0]).unwrap_err(),
            OracleError::BadVertexOrder
        );
    }

    fn arb_graph() -> impl Strategy<Value = ConsolidatedGraph> {
        (2usize..8).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 0u32..3, 0u32..3), 0..20).prop_map(move |es| {
                ConsolidatedGraph::from_edges(
                    (0..n).collect(),
                    es.into_iter()
                        .map(|(u, v, a, b)| (u, v, Monomial::new(a + 1, b))),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn traces_agree_with_cycles(g in arb_graph()) {
            prop_assert!(cross_check(&g).is_ok());
            let m = WeightedAdjMatrix::of_graph(&g);
            prop_assert!(m.is_symmetric());
        }

        #[test]
        fn independent_of_vertex_order(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut order = g.vertices.clone();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let m = WeightedAdjMatrix::from_graph(&g, &order).unwrap();
            prop_assert_eq!((cwr2_via_trace(&m, &m.unit()).unwrap(), cwr3_via_trace(&m).unwrap()), trace_components(&g).unwrap());
        }

        #[test]
        fn product_matches_pointwise_evaluation(g in arb_graph(), x in -3i64..4, y in -3i64..4) {
            let m = WeightedAdjMatrix::of_graph(&g);
            let sq = m.checked_mul(&m).unwrap();
            let n = m.n();
            for i in 0..n {
                for j in 0..n {
                    let expect = (0..n).try_fold(0i128, |acc, k| {
                        let p = m.get(i, k).eval(x, y)?.checked_mul(m.get(k, j).eval(x, y)?)?;
                        acc.checked_add(p)
                    });
                    prop_assume!(expect.is_some());
                    prop_assert_eq!(sq.get(i, j).eval(x, y), expect);
                }
            }
        }
    }
}
