#![allow(dead_code)]

use std::collections::BTreeMap;

use cwr_knots::poly::{BivarPoly, Monomial};
use cwr_knots::tait::ConsolidatedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cycle weight sums and counts by length, from a dynamic program over
/// vertex subsets: paths from the smallest vertex of each subset through all
/// of it, closed back to the start. Every cycle is found once per direction.
pub fn subset_cycle_sums(g: &ConsolidatedGraph) -> BTreeMap<usize, (BivarPoly, u64)> {
    let n = g.vertices.len();
    let index: BTreeMap<usize, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut weight = vec![vec![None; n]; n];
    for e in &g.edges {
        let (a, b) = (index[&e.u], index[&e.v]);
        weight[a][b] = Some(e.weight);
        weight[b][a] = Some(e.weight);
    }
    let mut totals: BTreeMap<usize, (BivarPoly, u64)> = BTreeMap::new();
    for s in 0..n {
        let mut dp: BTreeMap<(u32, usize), (BivarPoly, u64)> = BTreeMap::new();
        dp.insert((1 << s, s), (BivarPoly::one(), 1));
        let higher: Vec<usize> = (s + 1..n).collect();
        let full = 1u32 << n;
        for mask in 0..full {
            if mask & (1 << s) == 0 || mask & ((1 << s) - 1) != 0 {
                continue;
            }
            for (v, row) in weight.iter().enumerate() {
                let Some((p, c)) = dp.get(&(mask, v)).cloned() else {
                    continue;
                };
                let len = mask.count_ones() as usize;
                if len >= 3 {
                    if let Some(w) = row[s] {
                        let entry = totals.entry(len).or_default();
                        entry.0 = &entry.0 + &p.mul_monomial(w);
                        entry.1 += c;
                    }
                }
                for &u in &higher {
                    if mask & (1 << u) != 0 {
                        continue;
                    }
                    if let Some(w) = row[u] {
                        let entry = dp.entry((mask | 1 << u, u)).or_default();
                        entry.0 = &entry.0 + &p.mul_monomial(w);
                        entry.1 += c;
                    }
                }
            }
        }
    }
    totals
        .into_iter()
        .map(|(len, (p, c))| {
            assert_eq!(c % 2, 0, "each cycle is found in both directions");
            (len, (p.exact_div(2).expect("even coefficients"), c / 2))
        })
        .collect()
}

/// Random simple graph on `n` vertices with monomial weights of degree 1..=3.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> ConsolidatedGraph {
    let p: f64 = rng.random_range(0.2..0.9);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                let w = rng.random_range(0..=2);
                let r = rng.random_range(0..=2);
                let m = if w + r == 0 {
                    Monomial::W
                } else {
                    Monomial::new(w, r)
                };
                edges.push((a, b, m));
            }
        }
    }
    ConsolidatedGraph::from_edges((0..n).collect(), edges)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
