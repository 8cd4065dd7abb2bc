//! Diagram surgery: mirror image, connected sum, twist insertion and
//! oriented smoothing.
//!
//! The surgeries work on a [`Frame`]: crossings with four ports each, a flag
//! saying which port pair is under, and directed arcs between ports. A frame
//! is turned back into a PD code by relabelling arcs consecutively along each
//! component.

use super::{check_alternating, CrossingSign, DiagramError, PlanarDiagram, Port};

#[derive(Debug, Clone)]
struct Frame {
    /// `0` when ports 0/2 carry the under-strand, `1` for ports 1/3.
    under: Vec<u8>,
    arcs: Vec<Option<(Port, Port)>>,
    circles: usize,
}

impl Frame {
    fn from_diagram(d: &PlanarDiagram, offset: usize) -> Frame {
        let shift = |p: Port| Port::new(p.crossing + offset, p.slot);
        Frame {
            under: vec![0; d.num_crossings()],
            arcs: d
                .arcs()
                .map(|a| Some((shift(a.tail), shift(a.head))))
                .collect(),
            circles: d.circles,
        }
    }

    fn is_over(&self, p: Port) -> bool {
        p.slot % 2 != self.under[p.crossing]
    }

    fn arc_with_tail(&self, p: Port) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| a.is_some_and(|(t, _)| t == p))
    }

    fn arc_with_head(&self, p: Port) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| a.is_some_and(|(_, h)| h == p))
    }

    fn into_diagram(self) -> Result<PlanarDiagram, DiagramError> {
        let n = self.under.len();
        if n == 0 {
            return Ok(PlanarDiagram::unlink(self.circles));
        }
        if self.circles > 0 {
            return Err(DiagramError::Disconnected);
        }
        let arcs: Vec<(Port, Port)> = self.arcs.iter().flatten().copied().collect();
        let mut tail_of = vec![[usize::MAX; 4]; n];
        let mut head_of = vec![[usize::MAX; 4]; n];
        for (i, (t, h)) in arcs.iter().enumerate() {
            tail_of[t.crossing][t.slot as usize] = i;
            head_of[h.crossing][h.slot as usize] = i;
        }
        for x in 0..n {
            for s in 0..4 {
                let is_tail = tail_of[x][s] != usize::MAX;
                let is_head = head_of[x][s] != usize::MAX;
                let through_head = head_of[x][(s + 2) % 4] != usize::MAX;
                if is_tail == is_head || is_tail != through_head {
                    return Err(DiagramError::InconsistentOrientation { crossing: x });
                }
            }
        }

        let mut label = vec![0u32; arcs.len()];
        let mut next = 1u32;
        for start in 0..arcs.len() {
            if label[start] != 0 {
                continue;
            }
            let mut cur = start;
            loop {
                label[cur] = next;
                next += 1;
                let p = arcs[cur].1.through();
                cur = tail_of[p.crossing][p.slot as usize];
                if cur == start {
                    break;
                }
            }
        }

        let label_at = |p: Port| {
            let (x, s) = (p.crossing, p.slot as usize);
            label[if tail_of[x][s] != usize::MAX {
                tail_of[x][s]
            } else {
                head_of[x][s]
            }]
        };
        let crossings = (0..n)
            .map(|x| {
                let u = self.under[x];
                let start = if head_of[x][u as usize] != usize::MAX {
                    u
                } else {
                    u + 2
                };
                [0u8, 1, 2, 3].map(|k| label_at(Port::new(x, start + k)))
            })
            .collect();
        PlanarDiagram::new(crossings, None)
    }

    /// Adds one crossing in corner `j` of crossing `c`, forming a bigon with
    /// it. Both strands at that corner must point the same way (both out of
    /// or both into `c`).
    fn insert_crossing(&mut self, c: usize, j: u8) -> Result<(), DiagramError> {
        let pj = Port::new(c, j);
        let pk = Port::new(c, j + 1);
        let out_j = self.arc_with_tail(pj);
        let out_k = self.arc_with_tail(pk);
        let new = self.under.len();
        let port = |s: u8| Port::new(new, s);
        // ports of the new crossing, counterclockwise: 0 faces slot j+1 of c,
        // 1 faces slot j, 2 continues towards the old far end of slot j,
        // 3 towards the old far end of slot j+1
        let over_j = self.is_over(pj);
        match (out_j, out_k) {
            (Some(aj), Some(ak)) if aj != ak => {
                let (_, far_j) = self.arcs[aj].expect("live arc");
                let (_, far_k) = self.arcs[ak].expect("live arc");
                self.arcs[aj] = Some((pj, port(1)));
                self.arcs[ak] = Some((pk, port(0)));
                self.arcs.push(Some((port(3), far_k)));
                self.arcs.push(Some((port(2), far_j)));
            }
            (None, None) => {
                let aj = self.arc_with_head(pj).expect("port is attached");
                let ak = self.arc_with_head(pk).expect("port is attached");
                if aj == ak {
                    return Err(DiagramError::NotReduced { crossing: c });
                }
                let (far_j, _) = self.arcs[aj].expect("live arc");
                let (far_k, _) = self.arcs[ak].expect("live arc");
                self.arcs[aj] = Some((port(1), pj));
                self.arcs[ak] = Some((port(0), pk));
                self.arcs.push(Some((far_k, port(3))));
                self.arcs.push(Some((far_j, port(2))));
            }
            _ => return Err(DiagramError::NotReduced { crossing: c }),
        }
        // strand through slot j sits on ports 1/3 of the new crossing and
        // must switch level there
        self.under.push(if over_j { 1 } else { 0 });
        Ok(())
    }

    /// Replaces crossing `x` by its orientation-respecting smoothing.
    fn smooth(&mut self, x: usize) {
        for s in 0..4u8 {
            let p = Port::new(x, s);
            let Some(a) = self.arc_with_head(p) else {
                continue;
            };
            let q = [Port::new(x, s + 1), Port::new(x, s + 3)]
                .into_iter()
                .find(|q| self.arc_with_tail(*q).is_some())
                .expect("an adjacent port is outgoing");
            let b = self.arc_with_tail(q).expect("checked above");
            if a == b {
                self.arcs[a] = None;
                self.circles += 1;
            } else {
                let (tail, _) = self.arcs[a].expect("live arc");
                let (_, head) = self.arcs[b].expect("live arc");
                self.arcs[a] = Some((tail, head));
                self.arcs[b] = None;
            }
        }
    }

    fn remove_crossings(&mut self, removed: &[usize]) {
        let n = self.under.len();
        let mut index = vec![usize::MAX; n];
        let mut under = Vec::new();
        for (x, slot) in index.iter_mut().enumerate() {
            if !removed.contains(&x) {
                *slot = under.len();
                under.push(self.under[x]);
            }
        }
        for a in self.arcs.iter_mut().flatten() {
            a.0.crossing = index[a.0.crossing];
            a.1.crossing = index[a.1.crossing];
        }
        self.arcs.retain(Option::is_some);
        self.under = under;
    }
}

/// The mirror image: every crossing switched, projection unchanged.
pub fn mirror(d: &PlanarDiagram) -> PlanarDiagram {
    if d.num_crossings() == 0 {
        return d.clone();
    }
    let crossings = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(x, &[a, b, c, e])| match d.crossing_sign(x) {
            // the old over-strand enters at slot 3 (positive) or slot 1
            CrossingSign::Positive => [e, a, b, c],
            CrossingSign::Negative => [b, c, e, a],
        })
        .collect();
    PlanarDiagram::new(crossings, Some(d.n_components()))
        .expect("mirror of a valid diagram is valid")
}

/// Connected sum of two alternating diagrams.
///
/// The lowest-labelled edge of `d1` is cut, together with the lowest-labelled
/// edge of `d2` that leaves its crossing at the same level, so the spliced
/// strands keep alternating.
pub fn connected_sum(
    d1: &PlanarDiagram,
    d2: &PlanarDiagram,
) -> Result<PlanarDiagram, DiagramError> {
    for (d, other) in [(d1, d2), (d2, d1)] {
        if d.num_crossings() == 0 {
            if d.is_split() {
                return Err(DiagramError::Disconnected);
            }
            return Ok(other.clone());
        }
    }
    if !check_alternating(d1) || !check_alternating(d2) {
        return Err(DiagramError::NotAlternating);
    }
    let mut frame = Frame::from_diagram(d1, 0);
    let second = Frame::from_diagram(d2, d1.num_crossings());
    let n1_arcs = frame.arcs.len();
    frame.under.extend(second.under);
    frame.arcs.extend(second.arcs);

    let (t1, h1) = frame.arcs[0].expect("live arc");
    let level = frame.is_over(t1);
    let e2 = (n1_arcs..frame.arcs.len())
        .find(|&i| frame.arcs[i].is_some_and(|(t, _)| frame.is_over(t) == level))
        .ok_or(DiagramError::SpliceBreaksAlternation)?;
    let (t2, h2) = frame.arcs[e2].expect("live arc");
    frame.arcs[0] = Some((t1, h2));
    frame.arcs[e2] = Some((t2, h1));

    let sum = frame.into_diagram()?;
    if !check_alternating(&sum) {
        return Err(DiagramError::SpliceBreaksAlternation);
    }
    Ok(sum)
}

/// Inserts `k` half-twists next to the crossing that edge `site` runs into.
///
/// The new crossings extend that crossing's twist region along the axis on
/// which both strands run the same way, so they all carry the same sign as
/// the site crossing. Positive twists stack black bigons (their Tait edges
/// become parallel in the white graph); negative twists stack white bigons.
pub fn insert_twists(
    d: &PlanarDiagram,
    site: u32,
    k: usize,
    sign: CrossingSign,
) -> Result<PlanarDiagram, DiagramError> {
    let arc = d
        .arc(site)
        .ok_or(DiagramError::InvalidSite { label: site })?;
    let c = arc.head.crossing;
    let found = d.crossing_sign(c);
    if found != sign {
        return Err(DiagramError::TwistSignMismatch {
            requested: sign,
            found,
        });
    }
    if !check_alternating(d) {
        return Err(DiagramError::NotAlternating);
    }
    if k == 0 {
        return Ok(d.clone());
    }
    let s = arc.head.slot;
    let coherent_parity = match sign {
        CrossingSign::Positive => 1,
        CrossingSign::Negative => 0,
    };
    let j = if s % 2 == coherent_parity {
        s
    } else {
        (s + 3) % 4
    };
    let mut frame = Frame::from_diagram(d, 0);
    for _ in 0..k {
        frame.insert_crossing(c, j)?;
    }
    let out = frame.into_diagram()?;
    if !check_alternating(&out) {
        return Err(DiagramError::NotAlternating);
    }
    Ok(out)
}

/// Smooths the given crossings in the way that respects orientation.
///
/// The result may be a crossingless unlink; a diagram with crossings plus
/// free circles is rejected as split.
pub fn smooth_oriented(
    d: &PlanarDiagram,
    crossings: &[usize],
) -> Result<PlanarDiagram, DiagramError> {
    if let Some(&x) = crossings.iter().find(|&&x| x >= d.num_crossings()) {
        return Err(DiagramError::NoSuchCrossing(x));
    }
    let mut frame = Frame::from_diagram(d, 0);
    for &x in crossings {
        frame.smooth(x);
    }
    frame.remove_crossings(crossings);
    frame.into_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{figure_eight, trefoil, HOPF};
    use crate::diagram::{check_reduced, compute_faces, crossing_signs, parse_pd, Color, FaceMap};

    #[test]
    fn mirror_is_an_involution() {
        for d in [trefoil(), figure_eight(), parse_pd(HOPF).unwrap()] {
            let m = mirror(&d);
            assert_eq!(mirror(&m), d);
            let flipped: Vec<_> = crossing_signs(&d)
                .into_iter()
                .map(CrossingSign::flip)
                .collect();
            assert_eq!(crossing_signs(&m), flipped);
            assert_eq!(check_alternating(&m), check_alternating(&d));
        }
        assert_eq!(
            crossing_signs(&mirror(&trefoil())),
            vec![CrossingSign::Negative; 3]
        );
    }

    #[test]
    fn mirror_swaps_face_colours() {
        let d = trefoil();
        let (a, b) = (
            FaceMap::compute(&d).unwrap(),
            FaceMap::compute(&mirror(&d)).unwrap(),
        );
        for x in 0..3 {
            for j in 0..4 {
                let fa = a.face_at(x, j);
                // the same region sits at a corner shifted by one after mirroring
                let fb = b.face_at(
                    x,
                    (j + if d.crossing_sign(x) == CrossingSign::Positive {
                        1
                    } else {
                        3
                    }) % 4,
                );
                assert_eq!(a.color(fa), b.color(fb).other());
            }
        }
        let blacks = |fm: &FaceMap| {
            fm.faces()
                .iter()
                .filter(|f| f.color == Color::Black)
                .count()
        };
        assert_eq!((blacks(&a), blacks(&b)), (3, 2));
    }

    #[test]
    fn trefoil_sum_trefoil() {
        let s = connected_sum(&trefoil(), &trefoil()).unwrap();
        assert_eq!(s.num_crossings(), 6);
        assert!(s.is_knot());
        assert_eq!(compute_faces(&s).unwrap().len(), 8);
        assert!(check_alternating(&s));
        assert!(check_reduced(&s));
    }

    #[test]
    fn sum_with_unknot_is_identity() {
        let d = figure_eight();
        assert!(connected_sum(&d, &PlanarDiagram::unknot())
            .unwrap()
            .same_diagram(&d));
        assert!(connected_sum(&PlanarDiagram::unknot(), &d)
            .unwrap()
            .same_diagram(&d));
    }

    #[test]
    fn sum_faces_add_minus_two() {
        let (a, b) = (figure_eight(), mirror(&trefoil()));
        let s = connected_sum(&a, &b).unwrap();
        let faces = |d: &PlanarDiagram| compute_faces(d).unwrap().len();
        assert_eq!(faces(&s), faces(&a) + faces(&b) - 2);
    }

    #[test]
    fn sum_rejects_non_alternating() {
        let bad = parse_pd("PD[X(6,3,1,4), X(1,5,2,4), X(5,3,6,2)]").unwrap();
        assert_eq!(
            connected_sum(&bad, &trefoil()).unwrap_err(),
            DiagramError::NotAlternating
        );
    }

    #[test]
    fn twists_on_trefoil() {
        let d = trefoil();
        let t = insert_twists(&d, 1, 2, CrossingSign::Positive).unwrap();
        assert_eq!(t.num_crossings(), 5);
        assert!(t.is_knot());
        assert!(check_alternating(&t) && check_reduced(&t));
        assert!(crossing_signs(&t)
            .iter()
            .all(|s| *s == CrossingSign::Positive));
        // odd insertions turn the (2,3) torus knot into a two-component link
        assert_eq!(
            insert_twists(&d, 1, 1, CrossingSign::Positive)
                .unwrap()
                .n_components(),
            2
        );
    }

    #[test]
    fn zero_twists_is_identity() {
        let d = figure_eight();
        assert_eq!(
            insert_twists(&d, 3, 0, d.crossing_sign(d.arc(3).unwrap().head.crossing)).unwrap(),
            d
        );
    }

    #[test]
    fn twist_insertion_composes() {
        let d = trefoil();
        let site = d.arc(1).unwrap().head;
        let two = insert_twists(&d, 1, 2, CrossingSign::Positive).unwrap();
        // the site crossing keeps its index and slot 0 orientation
        let site2 = two.label_at(site.crossing, site.slot).unwrap();
        let four_stepwise = insert_twists(&two, site2, 2, CrossingSign::Positive).unwrap();
        let four = insert_twists(&d, 1, 4, CrossingSign::Positive).unwrap();
        assert!(four.same_diagram(&four_stepwise));
    }

    #[test]
    fn twist_errors() {
        let d = trefoil();
        assert_eq!(
            insert_twists(&d, 1, 2, CrossingSign::Negative).unwrap_err(),
            DiagramError::TwistSignMismatch {
                requested: CrossingSign::Negative,
                found: CrossingSign::Positive
            }
        );
        assert_eq!(
            insert_twists(&d, 99, 2, CrossingSign::Positive).unwrap_err(),
            DiagramError::InvalidSite { label: 99 }
        );
    }

    #[test]
    fn twists_keep_signs_on_every_edge() {
        let d = figure_eight();
        for a in d.arcs() {
            let sign = d.crossing_sign(a.head.crossing);
            let t = insert_twists(&d, a.label, 2, sign).unwrap();
            assert_eq!(t.num_crossings(), 6);
            assert!(check_alternating(&t) && check_reduced(&t));
            let before = crossing_signs(&d);
            let after = crossing_signs(&t);
            assert_eq!(&after[..4], &before[..]);
            assert!(after[4..].iter().all(|s| *s == sign));
        }
    }

    #[test]
    fn smoothing_the_trefoil_gives_seifert_circles() {
        let s = smooth_oriented(&trefoil(), &[0, 1, 2]).unwrap();
        assert_eq!(s.num_crossings(), 0);
        assert_eq!(s.n_components(), 2);
        assert!(s.is_split());
    }

    #[test]
    fn smoothing_one_crossing() {
        // one crossing of the trefoil smoothed: Hopf link
        let s = smooth_oriented(&trefoil(), &[0]).unwrap();
        assert_eq!(s.num_crossings(), 2);
        assert_eq!(s.n_components(), 2);
        assert!(check_alternating(&s));
        assert!(smooth_oriented(&trefoil(), &[7]).is_err());
    }
}
