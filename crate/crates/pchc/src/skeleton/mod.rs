//! Combinatorial phase portraits.
//!
//! A skeleton is the separatrix skeleton of a PC-HC field encoded as a
//! graph with a rotation system. Singular points are vertices; closed
//! orbits are first-class cycle nodes carrying two attachment sides, so an
//! edge that winds onto a cycle records the side it approaches from and its
//! cyclic position among the other windings (the transversal crossing
//! order). The homoclinic loop through the saddle-node is represented by a
//! loop edge at the saddle-node vertex plus a marker cycle node, since the
//! saddle-node lies on the curve itself.
//!
//! Conventions baked into the data (and enforced by [`validate_skeleton`]):
//!
//! * every rotation list is counterclockwise;
//! * cycle-side attachment lists are stored in increasing time-chart order;
//! * the saddle-node's rotation is the cyclic pattern
//!   `[loop-out, beta2-in, L1 arrivals.., loop-in, L2 arrivals.., beta1-in]`
//!   with each arrival group in increasing transversal coordinate.

mod dot;
mod extract;
mod faces;
mod support;

pub use dot::skeleton_to_dot;
pub use extract::{
    canonical_aminus_values, canonical_aplus_values, canonical_l1_values, canonical_l2_values,
    extract_characteristic_data, extract_configuration, ExtractError,
};
pub use faces::{face_walks, FaceReport, FaceWalk, WalkStep};
pub use support::{compute_elbs, compute_lbs, Support};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Saddle,
    SaddleNode,
    Attractor,
    Repeller,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    Parabolic,
    HomoclinicLoop,
    Hyperbolic,
}

/// The two sides of an embedded cycle. For the parabolic cycle, `Outer` is
/// the side facing the saddle-node annulus and `Inner` the disk side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideBehavior {
    Attracts,
    Repels,
}

/// Time orientation of a cycle, expressed in the standard concentric
/// drawing with the inner disk innermost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Ccw,
    Cw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRole {
    Separatrix,
    Homoclinic,
    Ordinary,
}

/// One endpoint of an orbit edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attach {
    Vertex(VertexId),
    Cycle { cycle: CycleId, side: Side },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub kind: CycleKind,
    pub orientation: Orientation,
    /// Behavior of the outer side: which way nearby orbits move.
    pub outer: SideBehavior,
    pub inner: SideBehavior,
}

/// An oriented orbit edge; `source -> target` is the flow direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub role: EdgeRole,
    pub source: Attach,
    pub target: Attach,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndKind {
    Source,
    Target,
}

/// Reference to one end of an edge, as stored in rotation lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: EndKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRotation {
    pub outer: Vec<EdgeEnd>,
    pub inner: Vec<EdgeEnd>,
}

/// Distinguished elements every PC-HC skeleton must carry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Designated {
    pub saddle_node: VertexId,
    pub parabolic_cycle: CycleId,
    pub homoclinic_cycle: CycleId,
    pub homoclinic_edge: EdgeId,
    pub beta1: EdgeId,
    pub beta2: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub vertices: Vec<Vertex>,
    pub cycles: Vec<Cycle>,
    pub edges: Vec<Edge>,
    /// Counterclockwise edge-end order around each vertex.
    pub vertex_rotation: Vec<Vec<EdgeEnd>>,
    /// Attachment order along each side of each cycle, in increasing
    /// time-chart coordinate.
    pub cycle_rotation: Vec<CycleRotation>,
    pub designated: Designated,
}

impl SkeletonGraph {
    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.get(id.0)
    }

    pub fn cycle(&self, id: CycleId) -> Option<&Cycle> {
        self.cycles.get(id.0)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(id.0)
    }

    pub fn attach_of_end(&self, end: EdgeEnd) -> Option<&Attach> {
        self.edge(end.edge).map(|e| match end.end {
            EndKind::Source => &e.source,
            EndKind::Target => &e.target,
        })
    }

    /// The attachment at the opposite end of `end`'s edge.
    pub fn far_attach(&self, end: EdgeEnd) -> Option<&Attach> {
        self.edge(end.edge).map(|e| match end.end {
            EndKind::Source => &e.target,
            EndKind::Target => &e.source,
        })
    }

    /// Decompose the saddle-node rotation into its designated pattern.
    /// Returns `(l1_arrivals, l2_arrivals)` in stored (increasing) order.
    pub fn saddle_node_arrivals(&self) -> Result<(Vec<EdgeEnd>, Vec<EdgeEnd>), SkeletonViolation> {
        let n = self.designated.saddle_node;
        let rot = self
            .vertex_rotation
            .get(n.0)
            .ok_or(SkeletonViolation::DesignatedMissing("saddle-node rotation"))?;
        let h = self.designated.homoclinic_edge;
        let pos_of = |e: EdgeEnd| rot.iter().position(|&x| x == e);
        let h_src = pos_of(EdgeEnd { edge: h, end: EndKind::Source })
            .ok_or(SkeletonViolation::SaddleNodePattern("missing homoclinic source end"))?;
        let h_tgt = pos_of(EdgeEnd { edge: h, end: EndKind::Target })
            .ok_or(SkeletonViolation::SaddleNodePattern("missing homoclinic target end"))?;
        let b2 = pos_of(EdgeEnd { edge: self.designated.beta2, end: EndKind::Target })
            .ok_or(SkeletonViolation::SaddleNodePattern("missing beta2 end"))?;
        let b1 = pos_of(EdgeEnd { edge: self.designated.beta1, end: EndKind::Target })
            .ok_or(SkeletonViolation::SaddleNodePattern("missing beta1 end"))?;
        let m = rot.len();
        let rel = |p: usize| (p + m - h_src) % m;
        // Counterclockwise pattern: h_src(0), beta1(1), L2 arrivals in
        // decreasing transversal coordinate, h_tgt, L1 arrivals decreasing,
        // beta2(m-1). Returned groups are flipped back to increasing order.
        if rel(b1) != 1 || rel(b2) != m - 1 || !(rel(h_tgt) >= 2 && rel(h_tgt) <= m - 2) {
            return Err(SkeletonViolation::SaddleNodePattern(
                "rotation must read [loop-out, beta1, arrivals, loop-in, arrivals, beta2]",
            ));
        }
        let l2: Vec<EdgeEnd> = (2..rel(h_tgt)).rev().map(|r| rot[(h_src + r) % m]).collect();
        let l1: Vec<EdgeEnd> =
            (rel(h_tgt) + 1..m - 1).rev().map(|r| rot[(h_src + r) % m]).collect();
        Ok((l1, l2))
    }
}

/// Problems reported by [`validate_skeleton`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeletonViolation {
    IdOutOfRange(&'static str, usize),
    DesignatedMissing(&'static str),
    DesignatedKind(&'static str),
    CountMismatch { what: &'static str, expected: usize, found: usize },
    RotationMismatch { detail: String },
    SaddleDegree { vertex: usize, detail: String },
    FlowDirection { detail: String },
    SaddleNodePattern(&'static str),
    HomoclinicLoopAttachment,
    ParabolicSidesEqual,
    HyperbolicSidesDiffer { cycle: usize },
    NotPlanar { component: usize, euler: i64 },
}

impl fmt::Display for SkeletonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SkeletonViolation::*;
        match self {
            IdOutOfRange(what, id) => write!(f, "{what} id {id} out of range"),
            DesignatedMissing(what) => write!(f, "designated {what} missing"),
            DesignatedKind(what) => write!(f, "designated {what} has the wrong kind"),
            CountMismatch { what, expected, found } => {
                write!(f, "expected exactly {expected} {what}, found {found}")
            }
            RotationMismatch { detail } => write!(f, "rotation system inconsistent: {detail}"),
            SaddleDegree { vertex, detail } => write!(f, "saddle {vertex}: {detail}"),
            FlowDirection { detail } => write!(f, "flow inconsistency: {detail}"),
            SaddleNodePattern(detail) => write!(f, "saddle-node rotation: {detail}"),
            HomoclinicLoopAttachment => {
                write!(f, "nothing may attach to the homoclinic loop marker cycle")
            }
            ParabolicSidesEqual => write!(f, "parabolic cycle sides must attract/repel oppositely"),
            HyperbolicSidesDiffer { cycle } => {
                write!(f, "hyperbolic cycle {cycle} must behave the same on both sides")
            }
            NotPlanar { component, euler } => {
                write!(f, "component {component} is not planar (V - E + F = {euler}, want 2)")
            }
        }
    }
}

/// Check all structural invariants: designated elements resolve and have
/// the right kinds and multiplicities, every edge end sits in exactly the
/// rotation list of its attachment, vertex degrees and in/out patterns
/// match the vertex kinds, cycle-side attachments match the side behavior,
/// and the rotation system is planar (every component has Euler
/// characteristic 2 under face traversal).
pub fn validate_skeleton(g: &SkeletonGraph) -> (bool, Vec<SkeletonViolation>) {
    let mut v = Vec::new();
    structural_checks(g, &mut v);
    if v.is_empty() {
        // Only run the deeper checks on structurally sound graphs; the
        // face traversal in particular needs a consistent rotation system.
        rotation_checks(g, &mut v);
        if v.is_empty() {
            kind_checks(g, &mut v);
            planarity_check(g, &mut v);
        }
    }
    (v.is_empty(), v)
}

fn structural_checks(g: &SkeletonGraph, v: &mut Vec<SkeletonViolation>) {
    use SkeletonViolation::*;
    for (i, e) in g.edges.iter().enumerate() {
        for a in [&e.source, &e.target] {
            match a {
                Attach::Vertex(vid) if vid.0 >= g.vertices.len() => {
                    v.push(IdOutOfRange("vertex (edge endpoint)", vid.0));
                }
                Attach::Cycle { cycle, .. } if cycle.0 >= g.cycles.len() => {
                    v.push(IdOutOfRange("cycle (edge endpoint)", cycle.0));
                }
                _ => {}
            }
        }
        let _ = i;
    }
    if g.vertex_rotation.len() != g.vertices.len() {
        v.push(RotationMismatch {
            detail: format!(
                "vertex_rotation has {} entries for {} vertices",
                g.vertex_rotation.len(),
                g.vertices.len()
            ),
        });
    }
    if g.cycle_rotation.len() != g.cycles.len() {
        v.push(RotationMismatch {
            detail: format!(
                "cycle_rotation has {} entries for {} cycles",
                g.cycle_rotation.len(),
                g.cycles.len()
            ),
        });
    }
    for rot in g.vertex_rotation.iter().chain(
        g.cycle_rotation.iter().flat_map(|c| [&c.outer, &c.inner]),
    ) {
        for end in rot {
            if end.edge.0 >= g.edges.len() {
                v.push(IdOutOfRange("edge (rotation entry)", end.edge.0));
            }
        }
    }
    let d = &g.designated;
    if d.saddle_node.0 >= g.vertices.len() {
        v.push(IdOutOfRange("designated saddle-node", d.saddle_node.0));
    } else if g.vertices[d.saddle_node.0].kind != VertexKind::SaddleNode {
        v.push(DesignatedKind("saddle-node"));
    }
    for (name, cid, kind) in [
        ("parabolic cycle", d.parabolic_cycle, CycleKind::Parabolic),
        ("homoclinic loop", d.homoclinic_cycle, CycleKind::HomoclinicLoop),
    ] {
        if cid.0 >= g.cycles.len() {
            v.push(IdOutOfRange(name, cid.0));
        } else if g.cycles[cid.0].kind != kind {
            v.push(DesignatedKind(name));
        }
    }
    for (name, eid) in [
        ("homoclinic edge", d.homoclinic_edge),
        ("beta1", d.beta1),
        ("beta2", d.beta2),
    ] {
        if eid.0 >= g.edges.len() {
            v.push(IdOutOfRange(name, eid.0));
        }
    }
    let count =
        |pred: &dyn Fn(&Vertex) -> bool| g.vertices.iter().filter(|x| pred(x)).count();
    let sn = count(&|x: &Vertex| x.kind == VertexKind::SaddleNode);
    if sn != 1 {
        v.push(CountMismatch { what: "saddle-node vertices", expected: 1, found: sn });
    }
    let par = g.cycles.iter().filter(|c| c.kind == CycleKind::Parabolic).count();
    if par != 1 {
        v.push(CountMismatch { what: "parabolic cycles", expected: 1, found: par });
    }
    let hc = g.cycles.iter().filter(|c| c.kind == CycleKind::HomoclinicLoop).count();
    if hc != 1 {
        v.push(CountMismatch { what: "homoclinic loop cycles", expected: 1, found: hc });
    }
    let hedges = g.edges.iter().filter(|e| e.role == EdgeRole::Homoclinic).count();
    if hedges != 1 {
        v.push(CountMismatch { what: "homoclinic edges", expected: 1, found: hedges });
    }
    if let Some(e) = g.edges.get(d.homoclinic_edge.0) {
        let n = Attach::Vertex(d.saddle_node);
        if e.role != EdgeRole::Homoclinic || e.source != n || e.target != n {
            v.push(DesignatedKind("homoclinic edge"));
        }
    }
    for (name, eid) in [("beta1", d.beta1), ("beta2", d.beta2)] {
        if let Some(e) = g.edges.get(eid.0) {
            if e.target != Attach::Vertex(d.saddle_node) {
                v.push(FlowDirection { detail: format!("{name} must flow into the saddle-node") });
            }
        }
    }
}

fn rotation_checks(g: &SkeletonGraph, v: &mut Vec<SkeletonViolation>) {
    use SkeletonViolation::*;
    // Every edge end must appear exactly once, in the rotation list of the
    // site its attach names.
    let mut seen = vec![[false; 2]; g.edges.len()];
    let mut record = |end: &EdgeEnd, site: &Attach, v: &mut Vec<SkeletonViolation>| {
        let slot = match end.end {
            EndKind::Source => 0,
            EndKind::Target => 1,
        };
        if seen[end.edge.0][slot] {
            v.push(RotationMismatch {
                detail: format!("edge {} end {:?} appears twice", end.edge.0, end.end),
            });
        }
        seen[end.edge.0][slot] = true;
        let expected = g.attach_of_end(*end).expect("id checked");
        if expected != site {
            v.push(RotationMismatch {
                detail: format!(
                    "edge {} end {:?} listed at {:?} but attaches to {:?}",
                    end.edge.0, end.end, site, expected
                ),
            });
        }
    };
    for (vid, rot) in g.vertex_rotation.iter().enumerate() {
        let site = Attach::Vertex(VertexId(vid));
        for end in rot {
            record(end, &site, v);
        }
    }
    for (cid, rot) in g.cycle_rotation.iter().enumerate() {
        for (side, list) in [(Side::Outer, &rot.outer), (Side::Inner, &rot.inner)] {
            let site = Attach::Cycle { cycle: CycleId(cid), side };
            for end in list {
                record(end, &site, v);
            }
        }
    }
    for (eid, ends) in seen.iter().enumerate() {
        for (slot, present) in ends.iter().enumerate() {
            if !present {
                v.push(RotationMismatch {
                    detail: format!(
                        "edge {eid} {} end missing from every rotation list",
                        if slot == 0 { "source" } else { "target" }
                    ),
                });
            }
        }
    }
}

fn kind_checks(g: &SkeletonGraph, v: &mut Vec<SkeletonViolation>) {
    use SkeletonViolation::*;
    for (vid, vertex) in g.vertices.iter().enumerate() {
        let rot = &g.vertex_rotation[vid];
        let outgoing = |e: &EdgeEnd| e.end == EndKind::Source;
        match vertex.kind {
            VertexKind::Saddle => {
                if rot.len() != 4 {
                    v.push(SaddleDegree {
                        vertex: vid,
                        detail: format!("has {} edge ends, want 4", rot.len()),
                    });
                } else if rot[0].end == rot[1].end
                    || rot[1].end == rot[2].end
                    || rot[2].end == rot[3].end
                    || rot[3].end == rot[0].end
                {
                    v.push(SaddleDegree {
                        vertex: vid,
                        detail: "separatrices must alternate in/out around the saddle".into(),
                    });
                }
            }
            VertexKind::Attractor => {
                if rot.iter().any(outgoing) {
                    v.push(FlowDirection {
                        detail: format!("attractor {vid} has an outgoing edge"),
                    });
                }
            }
            VertexKind::Repeller => {
                if rot.iter().any(|e| !outgoing(e)) {
                    v.push(FlowDirection {
                        detail: format!("repeller {vid} has an incoming edge"),
                    });
                }
            }
            VertexKind::SaddleNode => {
                if let Err(e) = g.saddle_node_arrivals() {
                    v.push(e);
                } else {
                    // All non-loop ends must be arrivals (targets).
                    for end in rot {
                        if end.edge != g.designated.homoclinic_edge
                            && end.end != EndKind::Target
                        {
                            v.push(FlowDirection {
                                detail: format!(
                                    "saddle-node has an outgoing non-homoclinic edge {}",
                                    end.edge.0
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    for (cid, cycle) in g.cycles.iter().enumerate() {
        let rot = &g.cycle_rotation[cid];
        match cycle.kind {
            CycleKind::HomoclinicLoop => {
                if !rot.outer.is_empty() || !rot.inner.is_empty() {
                    v.push(HomoclinicLoopAttachment);
                }
            }
            CycleKind::Parabolic => {
                if cycle.outer == cycle.inner {
                    v.push(ParabolicSidesEqual);
                }
            }
            CycleKind::Hyperbolic => {
                if cycle.outer != cycle.inner {
                    v.push(HyperbolicSidesDiffer { cycle: cid });
                }
            }
        }
        for (behavior, list) in [(cycle.outer, &rot.outer), (cycle.inner, &rot.inner)] {
            for end in list {
                let ok = match behavior {
                    // A repelling side is the alpha-limit of its windings:
                    // flow leaves the cycle, so the end is a source.
                    SideBehavior::Repels => end.end == EndKind::Source,
                    SideBehavior::Attracts => end.end == EndKind::Target,
                };
                if !ok {
                    v.push(FlowDirection {
                        detail: format!(
                            "edge {} winds onto cycle {cid} against the side behavior",
                            end.edge.0
                        ),
                    });
                }
            }
        }
    }
    // Endpoint kinds.
    for (eid, e) in g.edges.iter().enumerate() {
        if let Attach::Vertex(vid) = e.source {
            let k = g.vertices[vid.0].kind;
            let ok = matches!(k, VertexKind::Repeller | VertexKind::Saddle)
                || (k == VertexKind::SaddleNode && EdgeId(eid) == g.designated.homoclinic_edge);
            if !ok {
                v.push(FlowDirection {
                    detail: format!("edge {eid} leaves a vertex of kind {k:?}"),
                });
            }
        }
        if let Attach::Vertex(vid) = e.target {
            let k = g.vertices[vid.0].kind;
            let ok = matches!(
                k,
                VertexKind::Attractor | VertexKind::Saddle | VertexKind::SaddleNode
            );
            if !ok {
                v.push(FlowDirection {
                    detail: format!("edge {eid} enters a vertex of kind {k:?}"),
                });
            }
        }
    }
}

fn planarity_check(g: &SkeletonGraph, v: &mut Vec<SkeletonViolation>) {
    let report = face_walks(g);
    for (comp, euler) in report.component_euler.iter().enumerate() {
        if *euler != 2 {
            v.push(SkeletonViolation::NotPlanar { component: comp, euler: *euler });
        }
    }
}


#[cfg(test)]
mod tests {
    use super::testgraphs::base_111;
    use super::*;

    #[test]
    fn base_skeleton_is_valid() {
        let g = base_111();
        let (ok, violations) = validate_skeleton(&g);
        assert!(ok, "{violations:?}");
    }

    #[test]
    fn two_saddle_nodes_rejected() {
        let mut g = base_111();
        g.vertices[1].kind = VertexKind::SaddleNode;
        let (ok, violations) = validate_skeleton(&g);
        assert!(!ok);
        assert!(violations
            .iter()
            .any(|v| matches!(v, SkeletonViolation::CountMismatch { what, .. } if *what == "saddle-node vertices")));
    }

    #[test]
    fn misplaced_rotation_entry_rejected() {
        let mut g = base_111();
        // Claim beta2's source sits on the parabolic cycle's inner side.
        g.vertex_rotation[1].clear();
        g.cycle_rotation[0].inner.push(EdgeEnd { edge: EdgeId(2), end: EndKind::Source });
        let (ok, violations) = validate_skeleton(&g);
        assert!(!ok, "{violations:?}");
    }

    #[test]
    fn side_behavior_vs_flow_checked() {
        let mut g = base_111();
        // beta1 claims to leave the outer side, so the outer side must repel.
        g.cycles[0].outer = SideBehavior::Attracts;
        g.cycles[0].inner = SideBehavior::Repels;
        let (ok, violations) = validate_skeleton(&g);
        assert!(!ok);
        assert!(violations.iter().any(|v| matches!(v, SkeletonViolation::FlowDirection { .. })));
    }
}
