//! Large bifurcation supports.
//!
//! The extended large bifurcation support of the degenerate field is the
//! union of its non-hyperbolic singular points and cycles together with
//! the closure of all orbits whose two limit sets are both interesting.
//! For a PC-HC skeleton the interesting sets are the saddles, the
//! saddle-node, and the parabolic cycle provided separatrices wind onto it
//! from both sides. For PC-HC families the large bifurcation support
//! coincides with the extended one, so [`compute_lbs`] returns
//! [`compute_elbs`] and is kept as a separate entry point for API
//! fidelity.

use super::faces::{face_walks, WalkStep};
use super::{Attach, CycleId, EdgeId, Side, SideBehavior, SkeletonGraph, VertexId, VertexKind};
use std::collections::BTreeSet;

/// A subgraph of the skeleton plus the winding-region faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub cycles: BTreeSet<CycleId>,
    /// Indices into `face_walks(g).walks` of the faces filled by orbits
    /// running from the parabolic cycle to the saddle-node.
    pub g_faces: Vec<usize>,
}

impl Support {
    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

fn parabolic_cycle_interesting(g: &SkeletonGraph) -> bool {
    let rot = &g.cycle_rotation[g.designated.parabolic_cycle.0];
    !rot.outer.is_empty() && !rot.inner.is_empty()
}

fn attach_interesting(g: &SkeletonGraph, a: &Attach, gamma_interesting: bool) -> bool {
    match a {
        Attach::Vertex(v) => matches!(
            g.vertex(*v).map(|x| x.kind),
            Some(VertexKind::Saddle) | Some(VertexKind::SaddleNode)
        ),
        Attach::Cycle { cycle, .. } => *cycle == g.designated.parabolic_cycle && gamma_interesting,
    }
}

/// Extended large bifurcation support.
pub fn compute_elbs(g: &SkeletonGraph) -> Support {
    let d = &g.designated;
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut cycles = BTreeSet::new();
    vertices.insert(d.saddle_node);
    cycles.insert(d.parabolic_cycle);
    cycles.insert(d.homoclinic_cycle);
    edges.insert(d.homoclinic_edge);

    let gamma_interesting = parabolic_cycle_interesting(g);
    let beta1 = g.edge(d.beta1);
    let a2 = beta1
        .map(|e| e.source == Attach::Cycle { cycle: d.parabolic_cycle, side: Side::Outer })
        .unwrap_or(false);
    if a2 {
        edges.insert(d.beta1);
    }

    for (eid, e) in g.edges.iter().enumerate() {
        let id = EdgeId(eid);
        if id == d.homoclinic_edge || id == d.beta1 {
            continue;
        }
        if attach_interesting(g, &e.source, gamma_interesting)
            && attach_interesting(g, &e.target, gamma_interesting)
        {
            edges.insert(id);
        }
    }
    for &id in &edges {
        let e = &g.edges[id.0];
        for a in [&e.source, &e.target] {
            if let Attach::Vertex(v) = a {
                vertices.insert(*v);
            }
        }
    }

    // Winding-region faces: bounded by a stretch of the parabolic cycle on
    // its repelling side and by a corner inside the saddle-node's
    // parabolic (arrival) sector.
    let mut g_faces = Vec::new();
    if let Ok((l1, l2)) = g.saddle_node_arrivals() {
        let repelling_side = {
            let c = &g.cycles[d.parabolic_cycle.0];
            if c.outer == SideBehavior::Repels {
                Some(Side::Outer)
            } else if c.inner == SideBehavior::Repels {
                Some(Side::Inner)
            } else {
                None
            }
        };
        // Ends whose corner-successor still lies in the parabolic sector:
        // beta2, every arrival, and the loop's incoming end, except the
        // last arrival slot before beta1 is allowed as an arrive end too
        // (its departure is beta1, the sector's boundary).
        let mut sector_arrive: BTreeSet<super::EdgeEnd> = BTreeSet::new();
        let _ = &l1;
        let _ = &l2;
        let rot = &g.vertex_rotation[d.saddle_node.0];
        let m = rot.len();
        let h_src_pos = rot
            .iter()
            .position(|e| e.edge == d.homoclinic_edge && e.end == super::EndKind::Source)
            .unwrap_or(0);
        // Relative positions 1 .. m-2 arrive inside the parabolic sector.
        for r in 1..m.saturating_sub(1) {
            sector_arrive.insert(rot[(h_src_pos + r) % m]);
        }
        let report = face_walks(g);
        for (idx, walk) in report.walks.iter().enumerate() {
            let mut touches_repelling_gamma = false;
            let mut touches_sector = false;
            for step in &walk.steps {
                match step {
                    WalkStep::CycleArc { cycle, side }
                        if *cycle == d.parabolic_cycle && Some(*side) == repelling_side =>
                    {
                        touches_repelling_gamma = true;
                    }
                    WalkStep::VertexCorner { vertex, arrive, .. }
                        if *vertex == d.saddle_node && sector_arrive.contains(arrive) =>
                    {
                        touches_sector = true;
                    }
                    _ => {}
                }
            }
            if touches_repelling_gamma && touches_sector {
                g_faces.push(idx);
            }
        }
    }

    Support { vertices, edges, cycles, g_faces }
}

/// Large bifurcation support; for PC-HC families it equals the extended
/// support.
pub fn compute_lbs(g: &SkeletonGraph) -> Support {
    compute_elbs(g)
}

// BTreeSet<EdgeEnd> needs Ord.
impl Ord for super::EdgeEnd {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.edge, matches!(self.end, super::EndKind::Target))
            .cmp(&(other.edge, matches!(other.end, super::EndKind::Target)))
    }
}

impl PartialOrd for super::EdgeEnd {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::super::testgraphs::base_111;
    use super::*;

    #[test]
    fn base_111_support_contains_beta1_and_g_face() {
        let g = base_111();
        let s = compute_elbs(&g);
        assert!(s.contains_edge(g.designated.beta1));
        assert!(!s.contains_edge(g.designated.beta2));
        assert!(s.edges.contains(&g.designated.homoclinic_edge));
        assert!(s.vertices.contains(&g.designated.saddle_node));
        assert_eq!(s.cycles.len(), 2);
        // The annulus between the cycle and the loop is a winding region.
        assert!(!s.g_faces.is_empty());
    }

    #[test]
    fn lbs_equals_elbs() {
        let g = base_111();
        assert_eq!(compute_lbs(&g), compute_elbs(&g));
    }
}
