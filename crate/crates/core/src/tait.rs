//! Tait graphs of a checkerboard-coloured diagram.
//!
//! Each colour class of faces gives a multigraph with one edge per crossing,
//! joining the two faces of that colour which meet there. Edges are weighted
//! `w` for positive crossings and `r` for negative ones. Consolidation merges
//! every parallel class into one edge whose weight is the product.
//!
//! Both graphs can be exported in Graphviz DOT form:
//!
//! ```text
//! graph black {
//!   f0;
//!   f2;
//!   f0 -- f2 [label="w^2"];
//! }
//! ```
//!
//! Vertices are `f<face id>`; each edge line carries its weight as a label.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::diagram::{
    check_alternating, Color, CrossingSign, DiagramError, FaceMap, PlanarDiagram,
};
use crate::poly::Monomial;

/// One crossing seen from one colour class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaitEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Monomial,
    pub crossing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaitMultigraph {
    pub color: Color,
    /// Face ids of this colour, ascending.
    pub vertices: Vec<usize>,
    /// One edge per crossing, in crossing order.
    pub edges: Vec<TaitEdge>,
}

/// A merged parallel class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsolidatedEdge {
    /// Endpoints with `u < v`.
    pub u: usize,
    pub v: usize,
    pub weight: Monomial,
    pub crossings: Vec<usize>,
}

/// Simple weighted graph; edges sorted by endpoint pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsolidatedGraph {
    pub color: Color,
    pub vertices: Vec<usize>,
    pub edges: Vec<ConsolidatedEdge>,
}

/// Black and white Tait multigraphs of a reduced alternating diagram.
pub fn build_tait(d: &PlanarDiagram) -> Result<(TaitMultigraph, TaitMultigraph), DiagramError> {
    if d.is_split() {
        return Err(DiagramError::Disconnected);
    }
    if !check_alternating(d) {
        return Err(DiagramError::NotAlternating);
    }
    let fm = FaceMap::compute(d)?;
    let class = |color: Color| -> Vec<usize> {
        fm.faces()
            .iter()
            .filter(|f| f.color == color)
            .map(|f| f.id)
            .collect()
    };
    let mut black = TaitMultigraph {
        color: Color::Black,
        vertices: class(Color::Black),
        edges: Vec::new(),
    };
    let mut white = TaitMultigraph {
        color: Color::White,
        vertices: class(Color::White),
        edges: Vec::new(),
    };
    for (x, c) in fm.corner_faces().iter().enumerate() {
        if c[1] == c[3] || c[0] == c[2] {
            return Err(DiagramError::NotReduced { crossing: x });
        }
        let weight = match d.crossing_sign(x) {
            CrossingSign::Positive => Monomial::W,
            CrossingSign::Negative => Monomial::R,
        };
        black.edges.push(TaitEdge {
            u: c[1],
            v: c[3],
            weight,
            crossing: x,
        });
        white.edges.push(TaitEdge {
            u: c[0],
            v: c[2],
            weight,
            crossing: x,
        });
    }
    Ok((black, white))
}

/// Merges parallel edges, multiplying their weights.
pub fn consolidate(g: &TaitMultigraph) -> ConsolidatedGraph {
    let mut classes: BTreeMap<(usize, usize), ConsolidatedEdge> = BTreeMap::new();
    for e in &g.edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        let entry = classes.entry(key).or_insert_with(|| ConsolidatedEdge {
            u: key.0,
            v: key.1,
            weight: Monomial::ONE,
            crossings: Vec::new(),
        });
        entry.weight = entry.weight * e.weight;
        entry.crossings.push(e.crossing);
    }
    ConsolidatedGraph {
        color: g.color,
        vertices: g.vertices.clone(),
        edges: classes.into_values().collect(),
    }
}

impl TaitMultigraph {
    pub fn to_dot(&self) -> String {
        dot(
            self.color,
            &self.vertices,
            self.edges.iter().map(|e| (e.u, e.v, e.weight)),
        )
    }
}

impl ConsolidatedGraph {
    /// A simple graph from explicit weighted edges. Loops are dropped and
    /// repeated pairs are merged.
    pub fn from_edges(
        vertices: Vec<usize>,
        edges: impl IntoIterator<Item = (usize, usize, Monomial)>,
    ) -> Self {
        let multi = TaitMultigraph {
            color: Color::Black,
            vertices,
            edges: edges
                .into_iter()
                .filter(|(u, v, _)| u != v)
                .enumerate()
                .map(|(i, (u, v, weight))| TaitEdge {
                    u,
                    v,
                    weight,
                    crossing: i,
                })
                .collect(),
        };
        consolidate(&multi)
    }

    /// Weight of the edge between `u` and `v`, if any.
    pub fn weight(&self, u: usize, v: usize) -> Option<Monomial> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Neighbour lists indexed by position in `vertices`, each holding
    /// `(neighbour position, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let pos: BTreeMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            let (a, b) = (pos[&e.u], pos[&e.v]);
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn to_dot(&self) -> String {
        dot(
            self.color,
            &self.vertices,
            self.edges.iter().map(|e| (e.u, e.v, e.weight)),
        )
    }
}

fn dot(
    color: Color,
    vertices: &[usize],
    edges: impl Iterator<Item = (usize, usize, Monomial)>,
) -> String {
    let name = match color {
        Color::Black => "black",
        Color::White => "white",
    };
    let mut out = format!("graph {name} {{\n");
    for v in vertices {
        writeln!(out, "  f{v};").unwrap();
    }
    for (u, v, weight) in edges {
        writeln!(out, "  f{u} -- f{v} [label=\"{weight}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
