//! Deterministic DOT emission for skeletons.
//!
//! Singular points are plain nodes shaped by kind, cycles are
//! double-circle nodes, and every orbit edge is an arrow in flow
//! direction. Cycle attachments carry a `side#position` label so the
//! transversal crossing order survives rendering. Output is byte-stable:
//! everything is emitted in id order.

use super::{Attach, CycleKind, SkeletonGraph, VertexKind};
use std::fmt::Write;

pub fn skeleton_to_dot(g: &SkeletonGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph skeleton {\n");
    out.push_str("  rankdir=LR;\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let shape = match v.kind {
            VertexKind::Saddle => "diamond",
            VertexKind::SaddleNode => "Msquare",
            VertexKind::Attractor => "point",
            VertexKind::Repeller => "circle",
        };
        let label = v.label.clone().unwrap_or_else(|| format!("v{i}"));
        let _ = writeln!(out, "  v{i} [shape={shape}, label=\"{label}\"];");
    }
    for (i, c) in g.cycles.iter().enumerate() {
        let label = match c.kind {
            CycleKind::Parabolic => "gamma",
            CycleKind::HomoclinicLoop => "loop",
            CycleKind::Hyperbolic => "cycle",
        };
        let _ = writeln!(out, "  c{i} [shape=doublecircle, label=\"{label}{i}\"];");
    }
    let name = |a: &Attach| match a {
        Attach::Vertex(v) => format!("v{}", v.0),
        Attach::Cycle { cycle, .. } => format!("c{}", cycle.0),
    };
    let side_pos = |a: &Attach, eid: usize, end: super::EndKind| -> Option<String> {
        if let Attach::Cycle { cycle, side } = a {
            let rot = &g.cycle_rotation[cycle.0];
            let list = match side {
                super::Side::Outer => &rot.outer,
                super::Side::Inner => &rot.inner,
            };
            let pos = list
                .iter()
                .position(|e| e.edge.0 == eid && e.end == end)
                .map(|p| p.to_string())
                .unwrap_or_else(|| "?".into());
            let s = match side {
                super::Side::Outer => "outer",
                super::Side::Inner => "inner",
            };
            Some(format!("{s}#{pos}"))
        } else {
            None
        }
    };
    for (i, e) in g.edges.iter().enumerate() {
        let mut attrs: Vec<String> = Vec::new();
        match e.role {
            super::EdgeRole::Homoclinic => attrs.push("style=bold".into()),
            super::EdgeRole::Ordinary => attrs.push("style=dashed".into()),
            super::EdgeRole::Separatrix => {}
        }
        let mut labels: Vec<String> = Vec::new();
        if let Some(s) = side_pos(&e.source, i, super::EndKind::Source) {
            labels.push(format!("from {s}"));
        }
        if let Some(s) = side_pos(&e.target, i, super::EndKind::Target) {
            labels.push(format!("to {s}"));
        }
        if i == g.designated.beta1.0 {
            labels.push("beta1".into());
        }
        if i == g.designated.beta2.0 {
            labels.push("beta2".into());
        }
        if !labels.is_empty() {
            attrs.push(format!("label=\"{}\"", labels.join(", ")));
        }
        let attr_str =
            if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        let _ = writeln!(out, "  {} -> {}{};", name(&e.source), name(&e.target), attr_str);
    }
    out.push_str("}\n");
    out
}
