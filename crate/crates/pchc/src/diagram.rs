//! Simple bifurcation diagrams.
//!
//! Over the positive eps half-axis the bifurcation set of a family is a
//! sequence of germ vertices at the saddle-connection values, one per
//! root of the connection equation: degree four (connections between two
//! ordinary saddles have a germ curve crossing the axis on both sides)
//! or degree three (connections involving the beta1 separatrix exist only
//! for non-positive lambda). The vertex pattern repeats with period
//! `n(k+1)` when `a2 = 1` (the beta1 point joins the plus set) and `n k`
//! otherwise, in the order of the ascending difference set.

use crate::characteristic::CharacteristicData;
use crate::dynamics::{enumerate_sparkling, m_min, DynamicsError, SaddleNodeMapFamily};
use crate::marked::{non_synchronized, CirclePoint};
use crate::rational::{mod1, Rat};
use crate::realization::{beta_one_position, check_realizable};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const DIAGRAM_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramVertexKind {
    /// Saddle connection between a cycle-side and a disk-side saddle.
    CdConnection,
    /// Connection involving the beta1 separatrix (marked with a square).
    Beta1Connection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramVertex {
    /// Position in the appearance order (0 = largest eps).
    pub sequence: usize,
    pub i: usize,
    pub j: usize,
    /// Winding index relative to the first emitted period.
    pub m: i64,
    pub kind: DiagramVertexKind,
    pub degree: u8,
    /// Numeric eps when a model family decorates the diagram.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BifurcationDiagram {
    pub schema_version: u32,
    pub config: String,
    pub k: usize,
    pub n: usize,
    /// Vertices per period: `n (k+1)` for `a2 = 1`, `n k` otherwise.
    pub period: usize,
    pub periods: usize,
    pub vertices: Vec<DiagramVertex>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DiagramError {
    #[error("characteristic data is not realizable: cannot lay out its diagram")]
    NotRealizable,
    #[error("circle sets are synchronized; the Malta-Palis condition fails")]
    Synchronized,
    #[error("numeric decoration failed: {0}")]
    Dynamics(#[from] DynamicsError),
    #[error("unknown diagram format {0:?}")]
    UnknownFormat(String),
}

/// Assemble the diagram for `periods` periods, optionally decorated with
/// numeric roots from a map family.
pub fn build_simple_diagram(
    data: &CharacteristicData,
    periods: usize,
    family: Option<&SaddleNodeMapFamily>,
) -> Result<BifurcationDiagram, DiagramError> {
    let report = check_realizable(data);
    if !report.realizable {
        return Err(DiagramError::NotRealizable);
    }
    if !non_synchronized(&data.a_plus, &data.a_minus) {
        return Err(DiagramError::Synchronized);
    }
    let k = data.a_plus.len();
    let n = data.a_minus.len();
    let a2 = data.config.a2();

    // Difference-set order with the beta1 point appended for a2 = 1.
    let mut plus_points: Vec<(usize, CirclePoint)> = data
        .a_plus
        .points()
        .iter()
        .enumerate()
        .map(|(idx, p)| (idx + 1, p.clone()))
        .collect();
    if a2 {
        let q = beta_one_position(data).ok_or(DiagramError::NotRealizable)?;
        plus_points.push((k + 1, q));
    }
    let mut deltas: Vec<(Rat, usize, usize)> = Vec::new();
    for &(i, ref p) in &plus_points {
        for (j0, d) in data.a_minus.points().iter().enumerate() {
            deltas.push((mod1(&(p.value() - d.value())), i, j0 + 1));
        }
    }
    deltas.sort_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
    let period = deltas.len();

    // Numeric decoration: the winding block of each period comes from the
    // smallest admissible index of the model family.
    let numeric: Option<Vec<f64>> = match family {
        Some(fam) if period > 0 && periods > 0 => {
            let delta0 = crate::rational::to_f64(&deltas[0].0);
            let m0 = m_min(fam, delta0, 0.0)?;
            let events = enumerate_sparkling(fam, data, 0.0, m0, m0 + periods as i64 - 1)?;
            Some(events.into_iter().map(|e| e.epsilon).collect())
        }
        _ => None,
    };

    let mut vertices = Vec::with_capacity(period * periods);
    for block in 0..periods {
        for (slot, (_, i, j)) in deltas.iter().enumerate() {
            let sequence = block * period + slot;
            let kind = if *i == k + 1 {
                DiagramVertexKind::Beta1Connection
            } else {
                DiagramVertexKind::CdConnection
            };
            vertices.push(DiagramVertex {
                sequence,
                i: *i,
                j: *j,
                m: block as i64,
                kind,
                degree: if kind == DiagramVertexKind::Beta1Connection { 3 } else { 4 },
                epsilon: numeric.as_ref().map(|eps| eps[sequence]),
            });
        }
    }
    Ok(BifurcationDiagram {
        schema_version: DIAGRAM_SCHEMA_VERSION,
        config: data.config.word(),
        k,
        n,
        period,
        periods,
        vertices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Dot,
    Json,
    SvgLines,
}

impl std::str::FromStr for DiagramFormat {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(DiagramFormat::Dot),
            "json" => Ok(DiagramFormat::Json),
            "svg" | "svg_lines" => Ok(DiagramFormat::SvgLines),
            other => Err(DiagramError::UnknownFormat(other.to_string())),
        }
    }
}

/// Deterministic serialization of a diagram.
pub fn emit_diagram(d: &BifurcationDiagram, format: DiagramFormat) -> Result<Vec<u8>, DiagramError> {
    Ok(match format {
        DiagramFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(d).expect("diagram serializes");
            bytes.push(b'\n');
            bytes
        }
        DiagramFormat::Dot => emit_dot(d).into_bytes(),
        DiagramFormat::SvgLines => emit_svg_lines(d).into_bytes(),
    })
}

fn emit_dot(d: &BifurcationDiagram) -> String {
    let mut out = String::new();
    out.push_str("digraph bifurcation_diagram {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  origin [shape=point, label=\"\"];\n");
    out.push_str("  lambda_axis [shape=none, label=\"lambda axis\"];\n");
    out.push_str("  eps_axis [shape=none, label=\"eps axis\"];\n");
    out.push_str("  origin -> lambda_axis [style=dashed];\n");
    out.push_str("  origin -> eps_axis [style=dashed];\n");
    let mut prev = "eps_axis".to_string();
    // Vertices in increasing eps order so the chain runs away from 0.
    for v in d.vertices.iter().rev() {
        let shape = match v.kind {
            DiagramVertexKind::Beta1Connection => "square",
            DiagramVertexKind::CdConnection => "circle",
        };
        let label = match v.epsilon {
            Some(eps) => format!("({},{}) m+{} eps={eps:.6e}", v.i, v.j, v.m),
            None => format!("({},{}) m+{}", v.i, v.j, v.m),
        };
        let _ = writeln!(
            out,
            "  s{} [shape={shape}, label=\"{label}\", degree={}];",
            v.sequence, v.degree
        );
        let _ = writeln!(out, "  {prev} -> s{};", v.sequence);
        prev = format!("s{}", v.sequence);
    }
    out.push_str("}\n");
    out
}

fn emit_svg_lines(d: &BifurcationDiagram) -> String {
    // Line primitives only: the two axes and one germ glyph per vertex.
    // Degree-four vertices draw a full cross, degree-three ones a tee
    // opening toward negative lambda.
    let width = 80.0 + 60.0 * d.vertices.len() as f64;
    let height = 120.0;
    let y_axis = 60.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\">"
    );
    let _ = writeln!(
        out,
        "<line x1=\"10.0\" y1=\"{y_axis:.1}\" x2=\"{:.1}\" y2=\"{y_axis:.1}\" stroke=\"black\"/>",
        width - 10.0
    );
    let _ = writeln!(
        out,
        "<line x1=\"40.0\" y1=\"10.0\" x2=\"40.0\" y2=\"{:.1}\" stroke=\"black\"/>",
        height - 10.0
    );
    // Vertices ordered by decreasing eps, drawn right to left toward the
    // origin of the eps axis.
    for (idx, v) in d.vertices.iter().enumerate() {
        let x = width - 40.0 - 60.0 * idx as f64;
        let arm = 18.0;
        let _ = writeln!(
            out,
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            y_axis - arm,
            y_axis + arm
        );
        match v.kind {
            DiagramVertexKind::CdConnection => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{:.1}\" y1=\"{y_axis:.1}\" x2=\"{:.1}\" y2=\"{y_axis:.1}\" stroke=\"black\"/>",
                    x - arm,
                    x + arm
                );
            }
            DiagramVertexKind::Beta1Connection => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{:.1}\" y1=\"{y_axis:.1}\" x2=\"{x:.1}\" y2=\"{y_axis:.1}\" stroke=\"black\"/>",
                    x - arm
                );
                // Square marker for the beta1 germ.
                let s = 4.0;
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{s:.1}\" height=\"{s:.1}\" stroke=\"black\" fill=\"none\"/>",
                    x - s / 2.0,
                    y_axis - arm - s
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
