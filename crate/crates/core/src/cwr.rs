//! The cycle-weight invariant of a reduced alternating diagram.
//!
//! For each length `i >= 3`, `CB_i` sums the weight products of all simple
//! cycles of length `i` in the consolidated black graph, and `CB_2` is the sum
//! of its edge weights. `CW_i` is the same for the white graph. The invariant
//! is the sequence of pairs `(CB_i, CW_i)` from `i = 2`, with trailing zero
//! pairs dropped. The `i = 2` pair is always kept.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{DiagramError, PlanarDiagram};
use crate::poly::{parse_poly, BivarPoly, Monomial, PolyError, Var};
use crate::tait::{build_tait, consolidate, ConsolidatedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwrError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("cannot parse invariant value: {0}")]
    Parse(String),
    #[error("{quantity} from the black graph ({black}) disagrees with the white graph ({white})")]
    Inconsistent {
        quantity: &'static str,
        black: i64,
        white: i64,
    },
}

/// `((CB_2, CW_2), (CB_3, CW_3), ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CwrValue {
    pairs: Vec<(BivarPoly, BivarPoly)>,
}

impl CwrValue {
    /// Builds a value from the pairs for `i = 2, 3, ...`, dropping trailing
    /// zero pairs.
    pub fn new(mut pairs: Vec<(BivarPoly, BivarPoly)>) -> Self {
        while pairs.len() > 1
            && pairs
                .last()
                .is_some_and(|(b, w)| b.is_zero() && w.is_zero())
        {
            pairs.pop();
        }
        if pairs.is_empty() {
            pairs.push((BivarPoly::zero(), BivarPoly::zero()));
        }
        CwrValue { pairs }
    }

    /// The unknot value `((0, 0))`.
    pub fn zero() -> Self {
        CwrValue::new(Vec::new())
    }

    pub fn pairs(&self) -> &[(BivarPoly, BivarPoly)] {
        &self.pairs
    }

    /// Largest index with a stored pair.
    pub fn max_index(&self) -> usize {
        self.pairs.len() + 1
    }

    /// `(CB_i, CW_i)`, zero beyond the stored range.
    pub fn get(&self, i: usize) -> (BivarPoly, BivarPoly) {
        i.checked_sub(2)
            .and_then(|k| self.pairs.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn cb(&self, i: usize) -> BivarPoly {
        self.get(i).0
    }

    pub fn cw(&self, i: usize) -> BivarPoly {
        self.get(i).1
    }

    /// Smallest index at which the two values differ.
    pub fn first_difference(&self, other: &CwrValue) -> Option<usize> {
        let top = self.max_index().max(other.max_index());
        (2..=top).find(|&i| self.get(i) != other.get(i))
    }
}

impl Add for &CwrValue {
    type Output = CwrValue;

    fn add(self, rhs: &CwrValue) -> CwrValue {
        let top = self.max_index().max(rhs.max_index());
        CwrValue::new(
            (2..=top)
                .map(|i| {
                    let (a, b) = (self.get(i), rhs.get(i));
                    (a.0 + b.0, a.1 + b.1)
                })
                .collect(),
        )
    }
}

impl Add for CwrValue {
    type Output = CwrValue;

    fn add(self, rhs: CwrValue) -> CwrValue {
        &self + &rhs
    }
}

impl fmt::Display for CwrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, (b, w)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({b}, {w})")?;
        }
        f.write_str(")")
    }
}

/// Parses `((cb2, cw2), (cb3, cw3), ...)`. The outer parentheses are
/// optional and term order inside each polynomial is free.
///
/// ```text
/// value := "(" pairs ")" | pairs
/// pairs := pair ("," pair)*
/// pair  := "(" poly "," poly ")"
/// ```
pub fn parse_cwr(text: &str) -> Result<CwrValue, CwrError> {
    let t = text.trim();
    let inner = if t.starts_with("((") && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    };
    let mut pairs = Vec::new();
    let mut rest = inner.trim();
    loop {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| CwrError::Parse(format!("expected '(' at \"{rest}\"")))?;
        let close = body
            .find(')')
            .ok_or_else(|| CwrError::Parse("unclosed pair".into()))?;
        let pair = &body[..close];
        let (b, w) = pair
            .split_once(',')
            .ok_or_else(|| CwrError::Parse(format!("pair \"({pair})\" needs two entries")))?;
        if pair.contains('(') || w.contains(',') {
            return Err(CwrError::Parse(format!("malformed pair \"({pair})\"")));
        }
        pairs.push((parse_poly(b)?, parse_poly(w)?));
        rest = body[close + 1..].trim_start();
        match rest.strip_prefix(',') {
            Some(r) => rest = r.trim_start(),
            None if rest.is_empty() => break,
            None => return Err(CwrError::Parse(format!("unexpected \"{rest}\""))),
        }
    }
    Ok(CwrValue::new(pairs))
}

impl FromStr for CwrValue {
    type Err = CwrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cwr(s)
    }
}

impl Serialize for CwrValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CwrValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_cwr(&text).map_err(serde::de::Error::custom)
    }
}

/// Calls `visit` once per simple cycle of length `3..=max_len`, with the
/// cycle's edge indices.
///
/// A cycle is reported from its smallest vertex, walking first towards the
/// smaller of its two neighbours there.
pub fn for_each_cycle(g: &ConsolidatedGraph, max_len: usize, mut visit: impl FnMut(&[usize])) {
    let adj = g.adjacency();
    let n = adj.len();
    let mut on_path = vec![false; n];
    let mut edges = Vec::new();
    for start in 0..n {
        on_path[start] = true;
        for &(u, e) in &adj[start] {
            if u < start {
                continue;
            }
            on_path[u] = true;
            edges.push(e);
            extend(
                &adj,
                start,
                u,
                u,
                max_len,
                &mut on_path,
                &mut edges,
                &mut visit,
            );
            edges.pop();
            on_path[u] = false;
        }
        on_path[start] = false;
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    first: usize,
    v: usize,
    max_len: usize,
    on_path: &mut [bool],
    edges: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    for &(u, e) in &adj[v] {
        if u == start {
            if edges.len() >= 2 && first < v {
                edges.push(e);
                visit(edges);
                edges.pop();
            }
        } else if u > start && !on_path[u] && edges.len() + 1 < max_len {
            on_path[u] = true;
            edges.push(e);
            extend(adj, start, first, u, max_len, on_path, edges, visit);
            edges.pop();
            on_path[u] = false;
        }
    }
}

/// All simple cycles with exactly `length` edges, each as a sorted list of
/// edge indices.
pub fn enumerate_cycles(g: &ConsolidatedGraph, length: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_cycle(g, length, |edges| {
        if edges.len() == length {
            let mut c = edges.to_vec();
            c.sort_unstable();
            out.push(c);
        }
    });
    out.sort();
    out
}

/// `CB_i` or `CW_i` of a consolidated graph.
pub fn cb_cw(g: &ConsolidatedGraph, i: usize) -> BivarPoly {
    match i {
        0 | 1 => BivarPoly::zero(),
        2 => g.edges.iter().map(|e| BivarPoly::from(e.weight)).sum(),
        _ => {
            let mut acc = BivarPoly::zero();
            for_each_cycle(g, i, |edges| {
                if edges.len() == i {
                    let m = edges
                        .iter()
                        .fold(Monomial::ONE, |m, &e| m * g.edges[e].weight);
                    acc = &acc + &BivarPoly::from(m);
                }
            });
            acc
        }
    }
}

/// `[CB_2, CB_3, ..., CB_n]` for a graph on `n` vertices, in one pass.
pub fn cycle_sums(g: &ConsolidatedGraph) -> Vec<BivarPoly> {
    let n = g.vertices.len().max(2);
    let mut sums = vec![BivarPoly::zero(); n - 1];
    sums[0] = cb_cw(g, 2);
    for_each_cycle(g, n, |edges| {
        let m = edges
            .iter()
            .fold(Monomial::ONE, |m, &e| m * g.edges[e].weight);
        let slot = &mut sums[edges.len() - 2];
        *slot = &*slot + &BivarPoly::from(m);
    });
    sums
}

/// Consolidated black and white graphs of a reduced alternating diagram.
pub fn consolidated_graphs(
    d: &PlanarDiagram,
) -> Result<(ConsolidatedGraph, ConsolidatedGraph), CwrError> {
    let (b, w) = build_tait(d)?;
    Ok((consolidate(&b), consolidate(&w)))
}

/// The invariant assembled from the two consolidated graphs.
pub fn cwr_of_graphs(black: &ConsolidatedGraph, white: &ConsolidatedGraph) -> CwrValue {
    let (cb, cw) = rayon::join(|| cycle_sums(black), || cycle_sums(white));
    let len = cb.len().max(cw.len());
    CwrValue::new(
        (0..len)
            .map(|k| {
                (
                    cb.get(k).cloned().unwrap_or_default(),
                    cw.get(k).cloned().unwrap_or_default(),
                )
            })
            .collect(),
    )
}

/// Computes the invariant of a reduced, alternating, non-split diagram.
pub fn compute_cwr(d: &PlanarDiagram) -> Result<CwrValue, CwrError> {
    let (b, w) = consolidated_graphs(d)?;
    Ok(cwr_of_graphs(&b, &w))
}

/// An unordered pair, stored with the smaller polynomial first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wrp(pub BivarPoly, pub BivarPoly);

impl Wrp {
    pub fn new(a: BivarPoly, b: BivarPoly) -> Self {
        if b < a {
            Wrp(b, a)
        } else {
            Wrp(a, b)
        }
    }
}

impl Serialize for Wrp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.0.to_string(), self.1.to_string()).serialize(s)
    }
}

impl fmt::Display for Wrp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

/// The older unordered-pair invariant: `CWR_2(w^2, r^2) + 2 * sum_{i>2} CWR_i`.
pub fn derive_wrp(v: &CwrValue) -> Wrp {
    let fold = |pick: fn(&(BivarPoly, BivarPoly)) -> &BivarPoly| {
        let rest: BivarPoly = v.pairs()[1..].iter().map(pick).sum();
        pick(&v.pairs()[0]).substitute_squares()
            + rest.checked_scale(2).expect("small coefficients")
    };
    Wrp::new(fold(|p| &p.0), fold(|p| &p.1))
}

fn derivative_pair(p: &BivarPoly) -> (i64, i64) {
    (p.partial_eval_deriv(Var::W), p.partial_eval_deriv(Var::R))
}

fn checked_quantity(
    v: &CwrValue,
    quantity: &'static str,
    f: impl Fn(i64, i64) -> i64,
) -> Result<i64, CwrError> {
    let (cb, cw) = v.get(2);
    let (bw, br) = derivative_pair(&cb);
    let (ww, wr) = derivative_pair(&cw);
    let (black, white) = (f(bw, br), f(ww, wr));
    if black != white {
        return Err(CwrError::Inconsistent {
            quantity,
            black,
            white,
        });
    }
    Ok(black)
}

/// Crossing number read off `CB_2`, checked against `CW_2`.
pub fn crossing_number(v: &CwrValue) -> Result<u32, CwrError> {
    checked_quantity(v, "crossing number", |w, r| w + r).map(|c| c as u32)
}

/// Writhe read off `CB_2`, checked against `CW_2`.
pub fn writhe(v: &CwrValue) -> Result<i64, CwrError> {
    checked_quantity(v, "writhe", |w, r| w - r)
}

/// The value of the mirror image: `(CB_i, CW_i) -> (CW_i(r, w), CB_i(r, w))`.
pub fn mirror_value(v: &CwrValue) -> CwrValue {
    CwrValue::new(
        v.pairs()
            .iter()
            .map(|(b, w)| (w.swap_vars(), b.swap_vars()))
            .collect(),
    )
}

/// Pairwise equality after padding with zero pairs.
pub fn cwr_equal(a: &CwrValue, b: &CwrValue) -> bool {
    a.first_difference(b).is_none()
}
