//! Oriented link diagrams given as planar diagram (PD) codes.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand: `a` enters underneath, `c` leaves
//! underneath, `b` and `d` carry the over-strand. Slots are numbered `0..4`
//! in that order, and corner `j` of a crossing is the region between slot `j`
//! and slot `j + 1`.
//!
//! Orientation is recovered from the under-strands (slot 0 is always a head,
//! slot 2 a tail) and propagated straight through each crossing, so label
//! numbering is not trusted for anything but display.

mod construct;
mod faces;
mod pd;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use construct::{connected_sum, insert_twists, mirror, smooth_oriented};
pub use faces::{compute_faces, Color, Face, FaceMap};
pub use pd::parse_pd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("PD syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("edge label {label} appears {count} time(s); every label must appear exactly twice")]
    LabelCount { label: u32, count: usize },
    #[error("edge labels must be positive integers")]
    ZeroLabel,
    #[error("crossing {crossing}: under-strand orientation is inconsistent with the rest of its component")]
    InconsistentOrientation { crossing: usize },
    #[error("diagram projection is disconnected (split)")]
    Disconnected,
    #[error("rotation data is not planar: {faces} faces for {crossings} crossings")]
    NotPlanar { faces: usize, crossings: usize },
    #[error("declared {declared} components but strands close into {found}")]
    ComponentMismatch { declared: usize, found: usize },
    #[error("face traversal failed at crossing {crossing}")]
    Traversal { crossing: usize },
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("crossing {crossing} is nugatory; diagram is not reduced")]
    NotReduced { crossing: usize },
    #[error("edge label {label} is not a valid twist site")]
    InvalidSite { label: u32 },
    #[error("twist sign {requested:?} does not match the {found:?} crossing at the site; insertion would break alternation")]
    TwistSignMismatch {
        requested: CrossingSign,
        found: CrossingSign,
    },
    #[error("splice would break alternation")]
    SpliceBreaksAlternation,
    #[error("crossing index {0} out of range")]
    NoSuchCrossing(usize),
}

/// Sign of a crossing under the right-handed convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn flip(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }
}

impl std::str::FromStr for CrossingSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "pos" | "+" => Ok(CrossingSign::Positive),
            "negative" | "neg" | "-" => Ok(CrossingSign::Negative),
            other => Err(format!(
                "unknown sign '{other}' (expected positive or negative)"
            )),
        }
    }
}

/// A slot of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: u8,
}

impl Port {
    pub fn new(crossing: usize, slot: u8) -> Self {
        Port {
            crossing,
            slot: slot % 4,
        }
    }

    /// The port on the other side of the crossing along the same strand.
    pub fn through(self) -> Port {
        Port::new(self.crossing, self.slot + 2)
    }

    pub fn is_under(self) -> bool {
        self.slot.is_multiple_of(2)
    }
}

/// Oriented edge of the diagram from `tail` to `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub label: u32,
    pub tail: Port,
    pub head: Port,
}

/// A validated, connected, oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    arcs: BTreeMap<u32, Arc>,
    components: Vec<Vec<u32>>,
    circles: usize,
}

impl PlanarDiagram {
    /// Builds and validates a diagram from PD tuples.
    pub fn new(
        crossings: Vec<[u32; 4]>,
        declared_components: Option<usize>,
    ) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return match declared_components.unwrap_or(1) {
                1 => Ok(PlanarDiagram::unknot()),
                _ => Err(DiagramError::Disconnected),
            };
        }
        let mut occurrences: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
        for (x, c) in crossings.iter().enumerate() {
            for (s, &label) in c.iter().enumerate() {
                if label == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                occurrences
                    .entry(label)
                    .or_default()
                    .push(Port::new(x, s as u8));
            }
        }
        if let Some((&label, ports)) = occurrences.iter().find(|(_, p)| p.len() != 2) {
            return Err(DiagramError::LabelCount {
                label,
                count: ports.len(),
            });
        }
        let at = |p: Port| crossings[p.crossing][p.slot as usize];
        let other = |label: u32, p: Port| {
            let o = &occurrences[&label];
            if o[0] == p {
                o[1]
            } else {
                o[0]
            }
        };

        let mut arcs = BTreeMap::new();
        let mut components = Vec::new();
        for &start in occurrences.keys() {
            if arcs.contains_key(&start) {
                continue;
            }
            // walk the strand in an arbitrary direction, then fix it up
            let mut walk: Vec<Arc> = Vec::new();
            let mut label = start;
            let mut from = occurrences[&start][0];
            loop {
                let to = other(label, from);
                walk.push(Arc {
                    label,
                    tail: from,
                    head: to,
                });
                let next_from = to.through();
                label = at(next_from);
                from = next_from;
                if label == start && from == walk[0].tail {
                    break;
                }
                if walk.len() > 4 * crossings.len() {
                    return Err(DiagramError::InconsistentOrientation {
                        crossing: to.crossing,
                    });
                }
            }
            let forward = orientation_of(&walk)?;
            if !forward {
                walk.reverse();
                for a in walk.iter_mut() {
                    std::mem::swap(&mut a.tail, &mut a.head);
                }
            }
            let labels: Vec<u32> = walk.iter().map(|a| a.label).collect();
            for a in walk {
                arcs.insert(a.label, a);
            }
            components.push(rotate_to_min(labels));
        }

        if let Some(declared) = declared_components {
            if declared != components.len() {
                return Err(DiagramError::ComponentMismatch {
                    declared,
                    found: components.len(),
                });
            }
        }

        let d = PlanarDiagram {
            crossings,
            arcs,
            components,
            circles: 0,
        };
        if !d.projection_connected() {
            return Err(DiagramError::Disconnected);
        }
        let faces = FaceMap::compute(&d)?;
        if faces.len() != d.num_crossings() + 2 {
            return Err(DiagramError::NotPlanar {
                faces: faces.len(),
                crossings: d.num_crossings(),
            });
        }
        Ok(d)
    }

    /// The crossingless diagram of the unknot.
    pub fn unknot() -> Self {
        PlanarDiagram::unlink(1)
    }

    /// Crossingless diagram with `circles` disjoint circles. Only the
    /// one-circle case is non-split; the others appear as degenerate
    /// smoothings.
    pub fn unlink(circles: usize) -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            arcs: BTreeMap::new(),
            components: Vec::new(),
            circles,
        }
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len() + self.circles
    }

    pub fn is_knot(&self) -> bool {
        self.n_components() == 1
    }

    /// True for crossingless diagrams with more than one circle.
    pub fn is_split(&self) -> bool {
        self.crossings.is_empty() && self.circles > 1
    }

    /// PD tuples, slot 0 being the incoming under-strand.
    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn label_at(&self, crossing: usize, slot: u8) -> Option<u32> {
        self.crossings.get(crossing).map(|c| c[(slot % 4) as usize])
    }

    pub fn arc(&self, label: u32) -> Option<Arc> {
        self.arcs.get(&label).copied()
    }

    /// All oriented edges in label order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.values().copied()
    }

    /// Edge labels of each component in orientation order, starting from the
    /// smallest label.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Whether the arc at `p` enters the crossing there.
    pub fn is_incoming(&self, p: Port) -> bool {
        let label = self.crossings[p.crossing][p.slot as usize];
        self.arcs[&label].head == p
    }

    pub fn crossing_sign(&self, crossing: usize) -> CrossingSign {
        // over-strand enters at slot 3 and leaves at slot 1 for a positive crossing
        if self.is_incoming(Port::new(crossing, 3)) {
            CrossingSign::Positive
        } else {
            CrossingSign::Negative
        }
    }

    pub fn writhe(&self) -> i32 {
        crossing_signs(self).iter().map(|s| s.as_i32()).sum()
    }

    fn projection_connected(&self) -> bool {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in self.arcs.values() {
            let (x, y) = (
                find(&mut parent, a.tail.crossing),
                find(&mut parent, a.head.crossing),
            );
            parent[x] = y;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }

    /// PD tuples under the lexicographically least relabelling, over all
    /// choices of component order and starting edge. Two diagrams are the
    /// same oriented diagram on the sphere exactly when these agree.
    pub fn canonical_code(&self) -> (usize, Vec<[u32; 4]>) {
        let mut best: Option<Vec<[u32; 4]>> = None;
        let k = self.components.len();
        let mut order: Vec<usize> = (0..k).collect();
        permutations(&mut order, 0, &mut |perm| {
            let mut starts = vec![0usize; k];
            loop {
                let mut relabel = BTreeMap::new();
                let mut next = 1u32;
                for &ci in perm {
                    let comp = &self.components[ci];
                    for i in 0..comp.len() {
                        relabel.insert(comp[(starts[ci] + i) % comp.len()], next);
                        next += 1;
                    }
                }
                let mut code: Vec<[u32; 4]> = self
                    .crossings
                    .iter()
                    .map(|c| c.map(|l| relabel[&l]))
                    .collect();
                code.sort_unstable();
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
                // odometer over starting edges
                let mut i = 0;
                while i < k {
                    starts[i] += 1;
                    if starts[i] < self.components[i].len() {
                        break;
                    }
                    starts[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        });
        (self.circles, best.unwrap_or_default())
    }

    /// Equality up to relabelling of edges and reordering of crossings.
    pub fn same_diagram(&self, other: &PlanarDiagram) -> bool {
        self.num_crossings() == other.num_crossings()
            && self.n_components() == other.n_components()
            && self.canonical_code() == other.canonical_code()
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Decides whether a strand walk runs along the orientation: under-strands
/// must enter at slot 0 and leave at slot 2. Strands that never pass under
/// fall back to increasing label order.
fn orientation_of(walk: &[Arc]) -> Result<bool, DiagramError> {
    let mut verdict: Option<bool> = None;
    for a in walk {
        for (p, is_head) in [(a.head, true), (a.tail, false)] {
            if !p.is_under() {
                continue;
            }
            let forward = (p.slot == 0) == is_head;
            match verdict {
                None => verdict = Some(forward),
                Some(v) if v != forward => {
                    return Err(DiagramError::InconsistentOrientation {
                        crossing: p.crossing,
                    })
                }
                _ => {}
            }
        }
    }
    if let Some(v) = verdict {
        return Ok(v);
    }
    let n = walk.len();
    let ascending = (0..n)
        .filter(|&i| walk[(i + 1) % n].label == walk[i].label + 1)
        .count();
    let descending = (0..n)
        .filter(|&i| walk[i].label == walk[(i + 1) % n].label + 1)
        .count();
    Ok(ascending >= descending)
}

fn rotate_to_min(mut labels: Vec<u32>) -> Vec<u32> {
    if let Some(pos) = labels
        .iter()
        .enumerate()
        .min_by_key(|(_, l)| **l)
        .map(|(i, _)| i)
    {
        labels.rotate_left(pos);
    }
    labels
}

/// Sign of every crossing, in crossing order.
pub fn crossing_signs(d: &PlanarDiagram) -> Vec<CrossingSign> {
    (0..d.num_crossings()).map(|x| d.crossing_sign(x)).collect()
}

/// Over- and under-passes alternate along every component.
pub fn check_alternating(d: &PlanarDiagram) -> bool {
    d.arcs().all(|a| a.tail.is_under() != a.head.is_under())
}

/// No crossing meets the same face at two opposite corners.
pub fn check_reduced(d: &PlanarDiagram) -> bool {
    match FaceMap::compute(d) {
        Ok(fm) => nugatory_crossing(&fm).is_none(),
        Err(_) => false,
    }
}

pub(crate) fn nugatory_crossing(fm: &FaceMap) -> Option<usize> {
    fm.corner_faces()
        .iter()
        .position(|c| c[0] == c[2] || c[1] == c[3])
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "X({},{},{},{})", c[0], c[1], c[2], c[3])?;
        }
        f.write_str("]")?;
        if self.n_components() > 1 {
            write!(f, " components={}", self.n_components())?;
        }
        Ok(())
    }
}
