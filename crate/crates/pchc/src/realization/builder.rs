//! Incremental construction of skeleton graphs.
//!
//! "Draw a simple smooth curve" becomes "create an edge whose ends will be
//! spliced into the named rotation slots"; rotation lists are assembled
//! explicitly once all curves of a chart piece exist. Edges may be created
//! with a dangling end that is patched when the piece is glued to the rest
//! of the sphere.

use crate::skeleton::{
    Attach, Cycle, CycleRotation, Designated, Edge, EdgeEnd, EdgeId, EdgeRole, EndKind,
    SkeletonGraph, Vertex, VertexId, VertexKind,
};

#[derive(Debug, Clone)]
pub(crate) struct PendingEdge {
    pub role: EdgeRole,
    pub source: Option<Attach>,
    pub target: Option<Attach>,
}

#[derive(Debug, Default)]
pub(crate) struct Builder {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<PendingEdge>,
    pub rotation: Vec<Vec<EdgeEnd>>,
}

impl Builder {
    pub fn new() -> Self {
        Builder::default()
    }

    pub fn vertex(&mut self, kind: VertexKind, label: Option<&str>) -> VertexId {
        self.vertices.push(Vertex { kind, label: label.map(str::to_string) });
        self.rotation.push(Vec::new());
        VertexId(self.vertices.len() - 1)
    }

    pub fn edge(
        &mut self,
        role: EdgeRole,
        source: Option<Attach>,
        target: Option<Attach>,
    ) -> EdgeId {
        self.edges.push(PendingEdge { role, source, target });
        EdgeId(self.edges.len() - 1)
    }

    pub fn patch_source(&mut self, e: EdgeId, a: Attach) {
        self.edges[e.0].source = Some(a);
    }

    pub fn patch_target(&mut self, e: EdgeId, a: Attach) {
        self.edges[e.0].target = Some(a);
    }

    pub fn set_rotation(&mut self, v: VertexId, ends: Vec<EdgeEnd>) {
        self.rotation[v.0] = ends;
    }

    pub fn append_rotation(&mut self, v: VertexId, end: EdgeEnd) {
        self.rotation[v.0].push(end);
    }

    /// Reverse flow on everything created at or after the given marks:
    /// attractors become repellers, edges reverse, and every rotation
    /// entry referring to a flipped edge swaps its end kind. Cyclic
    /// rotation orders are left untouched (reversing flow does not move
    /// anything in the plane).
    pub fn flip_flow_since(&mut self, vmark: usize, emark: usize) {
        for v in &mut self.vertices[vmark..] {
            v.kind = match v.kind {
                VertexKind::Attractor => VertexKind::Repeller,
                VertexKind::Repeller => VertexKind::Attractor,
                k => k,
            };
        }
        for e in &mut self.edges[emark..] {
            std::mem::swap(&mut e.source, &mut e.target);
        }
        for rot in &mut self.rotation {
            for end in rot.iter_mut() {
                if end.edge.0 >= emark {
                    end.end = match end.end {
                        EndKind::Source => EndKind::Target,
                        EndKind::Target => EndKind::Source,
                    };
                }
            }
        }
    }

    pub fn finish(
        self,
        cycles: Vec<Cycle>,
        cycle_rotation: Vec<CycleRotation>,
        designated: Designated,
    ) -> SkeletonGraph {
        let edges = self
            .edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| Edge {
                role: e.role,
                source: e.source.unwrap_or_else(|| panic!("edge {i} left dangling at source")),
                target: e.target.unwrap_or_else(|| panic!("edge {i} left dangling at target")),
            })
            .collect();
        SkeletonGraph {
            vertices: self.vertices,
            cycles,
            edges,
            vertex_rotation: self.rotation,
            cycle_rotation,
            designated,
        }
    }
}

pub(crate) fn src(e: EdgeId) -> EdgeEnd {
    EdgeEnd { edge: e, end: EndKind::Source }
}

pub(crate) fn tgt(e: EdgeId) -> EdgeEnd {
    EdgeEnd { edge: e, end: EndKind::Target }
}
