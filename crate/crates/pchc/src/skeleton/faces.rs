//! Face traversal for the rotation system.
//!
//! Cycles are expanded into anchor rings: every attachment becomes an
//! anchor vertex on a ring of arc edges laid counterclockwise in stored
//! order (outer attachments first, then inner; the two sides never
//! interact, so their interleaving is immaterial). An outer attachment
//! leaves its anchor radially outward, an inner one radially inward, which
//! fixes the anchor rotations:
//!
//! * outer: `[from-prev, attachment, to-next]`
//! * inner: `[from-prev, to-next, attachment]`
//!
//! Faces are the orbits of `next(h) = successor of twin(h) in the rotation
//! at the head of h`; with counterclockwise rotations this traces the face
//! on the right of the walk, and a ring arc traversed forward borders an
//! outer-side face. Each connected component of a genus-zero rotation
//! system satisfies `V - E + W = 2` where `W` counts its boundary walks.

use super::{Attach, CycleId, EdgeEnd, EndKind, Side, SkeletonGraph, VertexId};

/// One step of a face boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkStep {
    /// The walk passes a singular vertex, arriving and departing through
    /// the named edge ends (rotation-adjacent at that vertex).
    VertexCorner { vertex: VertexId, arrive: EdgeEnd, depart: EdgeEnd },
    /// The walk runs along a stretch of a cycle on the given side.
    CycleArc { cycle: CycleId, side: Side },
    /// An isolated vertex bounds (sits inside) this face.
    IsolatedVertex { vertex: VertexId },
}

#[derive(Debug, Clone)]
pub struct FaceWalk {
    pub steps: Vec<WalkStep>,
    pub component: usize,
}

#[derive(Debug, Clone)]
pub struct FaceReport {
    pub walks: Vec<FaceWalk>,
    /// `V - E + W` per connected component of the expansion; 2 iff planar.
    pub component_euler: Vec<i64>,
    pub components: usize,
    /// Face count when the components are nested into one sphere.
    pub sphere_faces: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ExpTag {
    Original(usize),
    RingArc(usize), // cycle id
}

struct Expansion {
    // node count, edges (u, v, tag); half-edge h = 2 * e + dir.
    nodes: usize,
    edges: Vec<(usize, usize, ExpTag)>,
    rotation: Vec<Vec<usize>>, // per node: half-edge ids originating there
    // node meta: original vertex id or anchor's (cycle, side, attachment)
    node_vertex: Vec<Option<VertexId>>,
    node_anchor_cycle: Vec<Option<CycleId>>,
    // for original edges: the EdgeEnd each half departs from, used to
    // reconstruct corners: half 2e+0 originates at the source end's node.
    original_end: Vec<Option<(EdgeEnd, EdgeEnd)>>, // (source end, target end)
}

fn build_expansion(g: &SkeletonGraph) -> Expansion {
    let mut nodes = g.vertices.len();
    let mut node_vertex: Vec<Option<VertexId>> =
        (0..g.vertices.len()).map(|i| Some(VertexId(i))).collect();
    let mut node_anchor_cycle: Vec<Option<CycleId>> = vec![None; g.vertices.len()];

    // Anchor node for every cycle attachment, keyed by edge end.
    let mut end_anchor: std::collections::HashMap<(usize, u8), usize> =
        std::collections::HashMap::new();
    let mut edges: Vec<(usize, usize, ExpTag)> = Vec::new();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.vertices.len()];
    let mut original_end: Vec<Option<(EdgeEnd, EdgeEnd)>> = Vec::new();

    let end_key = |e: &EdgeEnd| (e.edge.0, matches!(e.end, EndKind::Target) as u8);

    // Lay the anchor rings first so attachment nodes exist before the
    // original edges are wired up.
    struct PendingAnchor {
        node: usize,
        side: Side,
        from_prev: usize, // half id, filled later
        to_next: usize,
    }
    for (cid, rot) in g.cycle_rotation.iter().enumerate() {
        let items: Vec<(Side, EdgeEnd)> = rot
            .outer
            .iter()
            .map(|&e| (Side::Outer, e))
            .chain(rot.inner.iter().map(|&e| (Side::Inner, e)))
            .collect();
        let r = items.len();
        if r == 0 {
            let a = nodes;
            nodes += 1;
            node_vertex.push(None);
            node_anchor_cycle.push(Some(CycleId(cid)));
            rotation.push(Vec::new());
            let e = edges.len();
            edges.push((a, a, ExpTag::RingArc(cid)));
            original_end.push(None);
            rotation[a] = vec![2 * e, 2 * e + 1];
            continue;
        }
        let mut anchors: Vec<PendingAnchor> = Vec::with_capacity(r);
        for (side, end) in &items {
            let a = nodes;
            nodes += 1;
            node_vertex.push(None);
            node_anchor_cycle.push(Some(CycleId(cid)));
            rotation.push(Vec::new());
            end_anchor.insert(end_key(end), a);
            anchors.push(PendingAnchor {
                node: a,
                side: *side,
                from_prev: usize::MAX,
                to_next: usize::MAX,
            });
        }
        // Ring arcs a_t -> a_{t+1}.
        for t in 0..r {
            let e = edges.len();
            let u = anchors[t].node;
            let v = anchors[(t + 1) % r].node;
            edges.push((u, v, ExpTag::RingArc(cid)));
            original_end.push(None);
            anchors[t].to_next = 2 * e; // forward half originates at a_t
            anchors[(t + 1) % r].from_prev = 2 * e + 1; // backward half
        }
        for a in &anchors {
            // Original halves are appended when edges are created below;
            // reserve the ring pattern now and splice the attachment in.
            let att_slot = usize::MAX; // placeholder, patched below
            let rot_list = match a.side {
                Side::Outer => vec![a.from_prev, att_slot, a.to_next],
                Side::Inner => vec![a.from_prev, a.to_next, att_slot],
            };
            rotation[a.node] = rot_list;
        }
    }

    // Original edges.
    let node_of_end = |end: &EdgeEnd, attach: &Attach| -> usize {
        match attach {
            Attach::Vertex(v) => v.0,
            Attach::Cycle { .. } => *end_anchor
                .get(&end_key(end))
                .expect("validated: cycle attachment listed in rotation"),
        }
    };
    let mut original_half: Vec<(usize, usize)> = Vec::with_capacity(g.edges.len());
    for (eid, edge) in g.edges.iter().enumerate() {
        let s_end = EdgeEnd { edge: super::EdgeId(eid), end: EndKind::Source };
        let t_end = EdgeEnd { edge: super::EdgeId(eid), end: EndKind::Target };
        let u = node_of_end(&s_end, &edge.source);
        let v = node_of_end(&t_end, &edge.target);
        let e = edges.len();
        edges.push((u, v, ExpTag::Original(eid)));
        original_end.push(Some((s_end, t_end)));
        original_half.push((2 * e, 2 * e + 1));
    }

    // Vertex rotations: map stored edge ends to half ids.
    for (vid, rot) in g.vertex_rotation.iter().enumerate() {
        rotation[vid] = rot
            .iter()
            .map(|end| {
                let (fwd, bwd) = original_half[end.edge.0];
                match end.end {
                    EndKind::Source => fwd,
                    EndKind::Target => bwd,
                }
            })
            .collect();
    }
    // Patch anchor placeholders.
    for (cid, rot) in g.cycle_rotation.iter().enumerate() {
        let _ = cid;
        for end in rot.outer.iter().chain(rot.inner.iter()) {
            let a = end_anchor[&end_key(end)];
            let (fwd, bwd) = original_half[end.edge.0];
            let half = match end.end {
                EndKind::Source => fwd,
                EndKind::Target => bwd,
            };
            for slot in rotation[a].iter_mut() {
                if *slot == usize::MAX {
                    *slot = half;
                }
            }
        }
    }

    Expansion { nodes, edges, rotation, node_vertex, node_anchor_cycle, original_end }
}

/// Trace all face boundary walks and compute per-component Euler numbers.
pub fn face_walks(g: &SkeletonGraph) -> FaceReport {
    let exp = build_expansion(g);
    let half_count = 2 * exp.edges.len();
    let origin = |h: usize| -> usize {
        let (u, v, _) = exp.edges[h / 2];
        if h % 2 == 0 {
            u
        } else {
            v
        }
    };
    let head = |h: usize| -> usize {
        let (u, v, _) = exp.edges[h / 2];
        if h % 2 == 0 {
            v
        } else {
            u
        }
    };
    let twin = |h: usize| -> usize { h ^ 1 };

    // Position of each half in its origin's rotation.
    let mut pos = vec![usize::MAX; half_count];
    for rot in &exp.rotation {
        for (i, &h) in rot.iter().enumerate() {
            pos[h] = i;
        }
    }
    let next = |h: usize| -> usize {
        let hd = head(h);
        let rot = &exp.rotation[hd];
        let p = pos[twin(h)];
        rot[(p + 1) % rot.len()]
    };

    // Union-find for components.
    let mut parent: Vec<usize> = (0..exp.nodes).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let nxt = parent[c];
            parent[c] = r;
            c = nxt;
        }
        r
    }
    for &(u, v, _) in &exp.edges {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut comp_index: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::new();
    let mut comp_of_node = vec![0usize; exp.nodes];
    for node in 0..exp.nodes {
        let r = find(&mut parent, node);
        let nidx = comp_index.len();
        let idx = *comp_index.entry(r).or_insert(nidx);
        comp_of_node[node] = idx;
    }
    let components = comp_index.len();
    let mut comp_v = vec![0i64; components];
    let mut comp_e = vec![0i64; components];
    let mut comp_w = vec![0i64; components];
    for node in 0..exp.nodes {
        comp_v[comp_of_node[node]] += 1;
    }
    for &(u, _, _) in &exp.edges {
        comp_e[comp_of_node[u]] += 1;
    }

    // Trace orbits.
    let mut walks = Vec::new();
    let mut visited = vec![false; half_count];
    for start in 0..half_count {
        if visited[start] {
            continue;
        }
        let comp = comp_of_node[origin(start)];
        let mut steps = Vec::new();
        let mut h = start;
        loop {
            visited[h] = true;
            // Record the traversal of h, then the corner at its head.
            if let ExpTag::RingArc(cid) = exp.edges[h / 2].2 {
                let side = if h % 2 == 0 { Side::Outer } else { Side::Inner };
                // Merge consecutive arcs of the same stretch.
                let step = WalkStep::CycleArc { cycle: CycleId(cid), side };
                if steps.last() != Some(&step) {
                    steps.push(step);
                }
            }
            let nh = next(h);
            let corner_node = head(h);
            if let Some(vid) = exp.node_vertex[corner_node] {
                let arrive_end = match exp.edges[h / 2].2 {
                    ExpTag::Original(eid) => {
                        let (s, t) = exp.original_end[h / 2].expect("original edge");
                        let _ = eid;
                        if h % 2 == 0 {
                            t
                        } else {
                            s
                        }
                    }
                    ExpTag::RingArc(_) => unreachable!("ring arcs never touch vertices"),
                };
                let depart_end = match exp.edges[nh / 2].2 {
                    ExpTag::Original(_) => {
                        let (s, t) = exp.original_end[nh / 2].expect("original edge");
                        if nh % 2 == 0 {
                            s
                        } else {
                            t
                        }
                    }
                    ExpTag::RingArc(_) => unreachable!("ring arcs never touch vertices"),
                };
                steps.push(WalkStep::VertexCorner {
                    vertex: vid,
                    arrive: arrive_end,
                    depart: depart_end,
                });
            }
            h = nh;
            if h == start {
                break;
            }
        }
        comp_w[comp] += 1;
        walks.push(FaceWalk { steps, component: comp });
    }
    // Isolated nodes: one synthetic walk each.
    for node in 0..exp.nodes {
        if exp.rotation[node].is_empty() {
            let comp = comp_of_node[node];
            comp_w[comp] += 1;
            let steps = match (exp.node_vertex[node], exp.node_anchor_cycle[node]) {
                (Some(vid), _) => vec![WalkStep::IsolatedVertex { vertex: vid }],
                _ => vec![],
            };
            walks.push(FaceWalk { steps, component: comp });
        }
    }

    let component_euler: Vec<i64> =
        (0..components).map(|c| comp_v[c] - comp_e[c] + comp_w[c]).collect();
    let sphere_faces = comp_w.iter().sum::<i64>() - (components as i64 - 1);
    FaceReport { walks, component_euler, components, sphere_faces }
}
