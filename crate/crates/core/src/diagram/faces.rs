//! Faces of the projection and their checkerboard colouring.
//!
//! Faces are traced corner by corner: arriving at a crossing through slot `k`
//! puts the walker in corner `k`, and it leaves through slot `k + 1`.
//!
//! Black faces are those at corners 1 and 3 of a crossing, the corners swept
//! when the over-strand turns counterclockwise. In an alternating diagram this
//! rule is consistent at every crossing. Otherwise the colouring is still a
//! proper two-colouring, seeded from corner 1 of crossing 0.

use std::collections::VecDeque;

use super::{DiagramError, PlanarDiagram, Port};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A complementary region of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// `(crossing, corner)` incidences in traversal order.
    pub boundary: Vec<(usize, u8)>,
    pub color: Color,
}

/// Faces plus the face at each corner of each crossing.
#[derive(Debug, Clone)]
pub struct FaceMap {
    faces: Vec<Face>,
    corners: Vec<[usize; 4]>,
}

impl FaceMap {
    pub fn compute(d: &PlanarDiagram) -> Result<FaceMap, DiagramError> {
        if d.num_crossings() == 0 {
            let circles = d.n_components().max(1);
            let faces = (0..=circles)
                .map(|id| Face {
                    id,
                    boundary: Vec::new(),
                    color: if id == 0 { Color::Black } else { Color::White },
                })
                .collect();
            return Ok(FaceMap {
                faces,
                corners: Vec::new(),
            });
        }

        let n = d.num_crossings();
        let other_end = |p: Port| -> Port {
            let label = d.crossings[p.crossing][p.slot as usize];
            let a = d.arcs[&label];
            if a.tail == p {
                a.head
            } else {
                a.tail
            }
        };

        let mut corners = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for j in 0..4u8 {
                if corners[x][j as usize] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut cx, mut cj) = (x, j);
                loop {
                    if corners[cx][cj as usize] != usize::MAX {
                        if (cx, cj) == (x, j) {
                            break;
                        }
                        return Err(DiagramError::Traversal { crossing: cx });
                    }
                    corners[cx][cj as usize] = id;
                    boundary.push((cx, cj));
                    let arrive = other_end(Port::new(cx, cj + 1));
                    cx = arrive.crossing;
                    cj = arrive.slot;
                }
                faces.push(Face {
                    id,
                    boundary,
                    color: Color::White,
                });
            }
        }

        // proper two-colouring by breadth-first search across edges
        let mut adjacency = vec![Vec::new(); faces.len()];
        for c in &corners {
            for s in 0..4 {
                let (f, g) = (c[(s + 3) % 4], c[s]);
                adjacency[f].push(g);
                adjacency[g].push(f);
            }
        }
        let mut color: Vec<Option<Color>> = vec![None; faces.len()];
        let seed = corners[0][1];
        color[seed] = Some(Color::Black);
        let mut queue = VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            let cf = color[f].expect("queued faces are coloured");
            for &g in &adjacency[f] {
                match color[g] {
                    None => {
                        color[g] = Some(cf.other());
                        queue.push_back(g);
                    }
                    Some(cg) if cg == cf => {
                        return Err(DiagramError::NotPlanar {
                            faces: faces.len(),
                            crossings: n,
                        })
                    }
                    _ => {}
                }
            }
        }
        for f in faces.iter_mut() {
            f.color = color[f.id].ok_or(DiagramError::Disconnected)?;
        }
        Ok(FaceMap { faces, corners })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Face id at `corner` of `crossing`.
    pub fn face_at(&self, crossing: usize, corner: u8) -> usize {
        self.corners[crossing][(corner % 4) as usize]
    }

    pub fn corner_faces(&self) -> &[[usize; 4]] {
        &self.corners
    }

    pub fn color(&self, face: usize) -> Color {
        self.faces[face].color
    }

    /// True when every crossing has black faces at corners 1 and 3.
    pub fn follows_type_a_rule(&self) -> bool {
        self.corners.iter().all(|c| {
            [1, 3]
                .iter()
                .all(|&j| self.faces[c[j]].color == Color::Black)
                && [0, 2]
                    .iter()
                    .all(|&j| self.faces[c[j]].color == Color::White)
        })
    }
}

/// Faces of the projection with their colours.
pub fn compute_faces(d: &PlanarDiagram) -> Result<Vec<Face>, DiagramError> {
    FaceMap::compute(d).map(|fm| fm.faces)
}
