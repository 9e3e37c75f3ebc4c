//! Reading the classifying invariants back out of a skeleton.
//!
//! The skeleton is purely combinatorial, so extraction assigns canonical
//! order-respecting rational coordinates. The scheme is fixed so that the
//! instance generator, the realization, and extraction all agree byte for
//! byte on round trips:
//!
//! * `L1` (size c): `-(c - i) / (c + 1)` for the i-th arrival;
//! * `L2` (size c): `(i + 1) / (c + 1)`;
//! * `A+` (size k): `(i + 1) / (k + 1)` in unroll order;
//! * `A-` (size n): `(j + 1) / ((k + 1)(n + 1))`.
//!
//! The `A-` denominator couples to `k` so that all `k * n` pairwise
//! differences are distinct: canonical coordinates are automatically
//! non-synchronized.

use super::{Attach, EdgeEnd, Side, SideBehavior, SkeletonGraph, VertexId, VertexKind};
use crate::characteristic::{CharacteristicData, CharacteristicError, Liaison};
use crate::config::{Configuration, ConfigurationError};
use crate::marked::{CirclePoint, IntervalPoint, MarkedCircleSet, MarkedIntervalSet, MarkedSetError};
use crate::rational::{rat, Rat};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExtractError {
    #[error("missing designated element: {0}")]
    Missing(&'static str),
    #[error("saddle-node rotation malformed: {0}")]
    SaddleNode(String),
    #[error("inadmissible configuration read from skeleton: {0}")]
    Config(#[from] ConfigurationError),
    #[error("{context}: the far end of edge {edge} is not a saddle")]
    NotASaddle { context: &'static str, edge: usize },
    #[error("extracted data is structurally invalid: {0}")]
    Characteristic(#[from] CharacteristicError),
    #[error("extracted marked set invalid: {0}")]
    Marked(#[from] MarkedSetError),
    #[error("extracted coordinate out of range: {0}")]
    Point(#[from] crate::marked::PointError),
}

/// Read the configuration word off the designated elements: `a1` compares
/// the stored time orientations of the two distinguished closed curves,
/// `a2` asks whether `beta1` winds off the parabolic cycle, and `a3` is
/// the behavior of the cycle's side facing the saddle-node.
pub fn extract_configuration(g: &SkeletonGraph) -> Result<Configuration, ExtractError> {
    let d = &g.designated;
    let gamma = g.cycle(d.parabolic_cycle).ok_or(ExtractError::Missing("parabolic cycle"))?;
    let hloop = g.cycle(d.homoclinic_cycle).ok_or(ExtractError::Missing("homoclinic loop"))?;
    let beta1 = g.edge(d.beta1).ok_or(ExtractError::Missing("beta1"))?;
    let a1 = gamma.orientation == hloop.orientation;
    let a2 = beta1.source == Attach::Cycle { cycle: d.parabolic_cycle, side: Side::Outer };
    let a3 = gamma.outer == SideBehavior::Repels;
    Ok(Configuration::new(a1, a2, a3)?)
}

/// Canonical coordinates (see the module docs).
pub fn canonical_l1_values(c: usize) -> Vec<Rat> {
    (0..c).map(|i| rat(i as i64 - c as i64, c as i64 + 1)).collect()
}

pub fn canonical_l2_values(c: usize) -> Vec<Rat> {
    (0..c).map(|i| rat(i as i64 + 1, c as i64 + 1)).collect()
}

pub fn canonical_aplus_values(k: usize) -> Vec<Rat> {
    (0..k).map(|i| rat(i as i64 + 1, k as i64 + 1)).collect()
}

pub fn canonical_aminus_values(k: usize, n: usize) -> Vec<Rat> {
    (0..n).map(|j| rat(j as i64 + 1, (k as i64 + 1) * (n as i64 + 1))).collect()
}

/// The saddle owning an arrival or winding end: the vertex at the far end
/// of the edge.
fn owner_saddle(
    g: &SkeletonGraph,
    end: EdgeEnd,
    context: &'static str,
) -> Result<VertexId, ExtractError> {
    match g.far_attach(end) {
        Some(Attach::Vertex(v)) if g.vertex(*v).map(|x| x.kind) == Some(VertexKind::Saddle) => {
            Ok(*v)
        }
        _ => Err(ExtractError::NotASaddle { context, edge: end.edge.0 }),
    }
}

/// Group items (in order) into classes by owner: points owned by the same
/// saddle share a class. Class order is first-appearance order.
fn classes_by_owner(owners: &[VertexId]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(VertexId, Vec<usize>)> = Vec::new();
    for (i, &o) in owners.iter().enumerate() {
        if let Some(entry) = classes.iter_mut().find(|(v, _)| *v == o) {
            entry.1.push(i);
        } else {
            classes.push((o, vec![i]));
        }
    }
    classes.into_iter().map(|(_, b)| b).collect()
}

/// Extract the characteristic data at the combinatorial layer.
pub fn extract_characteristic_data(g: &SkeletonGraph) -> Result<CharacteristicData, ExtractError> {
    let config = extract_configuration(g)?;
    let (l1_ends, l2_ends) =
        g.saddle_node_arrivals().map_err(|e| ExtractError::SaddleNode(e.to_string()))?;

    let l1_owners: Result<Vec<VertexId>, _> =
        l1_ends.iter().map(|&e| owner_saddle(g, e, "L1 arrival")).collect();
    let l1_owners = l1_owners?;
    let l2_owners: Result<Vec<VertexId>, _> =
        l2_ends.iter().map(|&e| owner_saddle(g, e, "L2 arrival")).collect();
    let l2_owners = l2_owners?;

    let l1_points: Result<Vec<IntervalPoint>, _> =
        canonical_l1_values(l1_ends.len()).into_iter().map(IntervalPoint::new).collect();
    let l2_points: Result<Vec<IntervalPoint>, _> =
        canonical_l2_values(l2_ends.len()).into_iter().map(IntervalPoint::new).collect();
    let l1 = MarkedIntervalSet::new(l1_points?, classes_by_owner(&l1_owners))?;
    let l2 = MarkedIntervalSet::new(l2_points?, classes_by_owner(&l2_owners))?;

    // Windings on the parabolic cycle. beta1's end is not a characteristic
    // point; when it sits on the outer side it is the unroll origin.
    let outer = &g.cycle_rotation[g.designated.parabolic_cycle.0].outer;
    let beta1_src = EdgeEnd { edge: g.designated.beta1, end: super::EndKind::Source };
    let beta1_pos = outer.iter().position(|&e| e == beta1_src);
    let unrolled: Vec<EdgeEnd> = match beta1_pos {
        Some(p) => (1..outer.len()).map(|i| outer[(p + i) % outer.len()]).collect(),
        None => outer.clone(),
    };
    let ap_owners: Result<Vec<VertexId>, _> =
        unrolled.iter().map(|&e| owner_saddle(g, e, "A+ winding")).collect();
    let ap_owners = ap_owners?;
    let k = unrolled.len();

    let inner = &g.cycle_rotation[g.designated.parabolic_cycle.0].inner;
    let am_owners: Result<Vec<VertexId>, _> =
        inner.iter().map(|&e| owner_saddle(g, e, "A- winding")).collect();
    let am_owners = am_owners?;
    let n = inner.len();

    let ap_points: Result<Vec<CirclePoint>, _> =
        canonical_aplus_values(k).into_iter().map(CirclePoint::new).collect();
    let am_points: Result<Vec<CirclePoint>, _> =
        canonical_aminus_values(k, n).into_iter().map(CirclePoint::new).collect();
    let ap_classes = classes_by_owner(&ap_owners);
    let a_plus = MarkedCircleSet::new(ap_points?, ap_classes.clone())?;
    let a_minus = MarkedCircleSet::new(am_points?, classes_by_owner(&am_owners))?;

    // Liaison: an L2 class and an A+ class owned by the same saddle.
    let l2_classes = l2.classes().clone();
    let mut pairs = Vec::new();
    for (lc, block) in l2_classes.iter().enumerate() {
        let owner = l2_owners[block[0]];
        if let Some(ac) = ap_classes.iter().position(|b| ap_owners[b[0]] == owner) {
            pairs.push((lc, ac));
        }
    }

    Ok(CharacteristicData::new(config, l1, l2, a_plus, a_minus, Liaison { pairs })?)
}
