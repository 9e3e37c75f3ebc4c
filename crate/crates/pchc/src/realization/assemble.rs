//! Assembly of a full skeleton from characteristic data.
//!
//! The sphere is built in the chart pieces of the constructive proof: an
//! annulus carrying the homoclinic loop and the saddle-node; the far disk
//! realizing `L1`; the parabolic cycle with the inner disk realizing `A-`;
//! and the annulus between the cycle and the saddle-node carrying the `L2`
//! and `A+` structure, built step by step per configuration group. Curves
//! become edges, and every rotation list is written in the global
//! counterclockwise convention of the skeleton module.

use super::builder::{src, tgt, Builder};
use super::check::{check_realizable, RealizabilityReport};
use super::disk::{build_disk_outward, ChordForest};
use crate::characteristic::CharacteristicData;
use crate::config::ConfigurationGroup;
use crate::marked::{phi, CirclePoint};
use crate::rational::Rat;
use crate::skeleton::{
    Attach, Cycle, CycleId, CycleKind, CycleRotation, Designated, EdgeEnd, EdgeId, EdgeRole,
    Orientation, Side, SideBehavior, SkeletonGraph, VertexId, VertexKind,
};

#[derive(Debug, Clone, thiserror::Error)]
pub enum RealizeError {
    #[error("characteristic data is not realizable: {}", format_failed(.0))]
    NotRealizable(RealizabilityReport),
}

fn format_failed(r: &RealizabilityReport) -> String {
    r.failed.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; ")
}

const GAMMA: CycleId = CycleId(0);
const LOOP: CycleId = CycleId(1);

/// Output of the inter-cycle annulus construction.
struct UbOut {
    /// `(circle coordinate, end)` for every attachment on the cycle's
    /// outer side, unsorted.
    outer: Vec<(Rat, EdgeEnd)>,
    /// The arrival end at the saddle-node for each `L2` point, by index.
    l2_ends: Vec<Option<EdgeEnd>>,
    beta1: EdgeId,
}

/// Build a skeleton whose characteristic data is order-equivalent to the
/// input. Fails exactly when [`check_realizable`] rejects the datum.
pub fn realize(d: &CharacteristicData) -> Result<SkeletonGraph, RealizeError> {
    let report = check_realizable(d);
    if !report.realizable {
        return Err(RealizeError::NotRealizable(report));
    }
    let q = report.basepoint.clone().expect("realizable data carries a basepoint");
    let a1 = d.config.a1();
    let a3 = d.config.a3();

    let mut b = Builder::new();
    let n = b.vertex(VertexKind::SaddleNode, Some("N"));
    let h = b.edge(EdgeRole::Homoclinic, Some(Attach::Vertex(n)), Some(Attach::Vertex(n)));

    // Far disk: arrivals on the loop's far side. The disk is seen from the
    // far side of the sphere, so its locally counterclockwise rotations
    // appear mirrored from the standard chart.
    let dplus = build_disk_outward(&mut b, d.l1.len(), d.l1.classes());
    let l1_ends: Vec<EdgeEnd> = dplus
        .dangling
        .iter()
        .map(|&e| {
            b.patch_target(e, Attach::Vertex(n));
            tgt(e)
        })
        .collect();
    let beta2 = b.edge(
        EdgeRole::Separatrix,
        Some(Attach::Vertex(dplus.root_point)),
        Some(Attach::Vertex(n)),
    );
    b.append_rotation(dplus.root_point, src(beta2));

    // Inner disk: windings on the cycle's disk side.
    let (vmark, emark) = (b.vertices.len(), b.edges.len());
    let dminus = build_disk_outward(&mut b, d.a_minus.len(), d.a_minus.classes());
    if !a3 {
        b.flip_flow_since(vmark, emark);
    }
    let inner_ends: Vec<EdgeEnd> = dminus
        .dangling
        .iter()
        .map(|&e| {
            let at = Attach::Cycle { cycle: GAMMA, side: Side::Inner };
            if a3 {
                b.patch_target(e, at);
                tgt(e)
            } else {
                b.patch_source(e, at);
                src(e)
            }
        })
        .collect();


    // The annulus between the cycle and the saddle-node.
    let ub = match d.config.group() {
        ConfigurationGroup::A2One | ConfigurationGroup::A2ZeroA3One => {
            build_ub_a3one(&mut b, d, &q, n)
        }
        ConfigurationGroup::A3Zero => build_ub_a3zero(&mut b, d, &q, n),
    };

    // Saddle-node rotation: the transversal reading is [beta2, L1
    // ascending, loop-in, L2 ascending, beta1]; the counterclockwise
    // rotation runs the other way around, so the stored pattern is
    // [loop-out, beta1, L2 descending, loop-in, L1 descending, beta2].
    let mut n_rot = vec![src(h), tgt(beta2)];
    n_rot.extend(l1_ends);
    n_rot.push(tgt(h));
    n_rot.extend(ub.l2_ends.iter().map(|e| e.expect("every L2 point has an arrival")));
    n_rot.push(tgt(ub.beta1));
    n_rot.reverse();
    b.set_rotation(n, n_rot);

    // Cycle attachment lists in chart order.
    let mut outer = ub.outer;
    outer.sort_by(|a, b| a.0.cmp(&b.0));
    let outer_ends: Vec<EdgeEnd> = outer.into_iter().map(|(_, e)| e).collect();

    let cycles = vec![
        Cycle {
            kind: CycleKind::Parabolic,
            orientation: if a1 { Orientation::Ccw } else { Orientation::Cw },
            outer: if a3 { SideBehavior::Repels } else { SideBehavior::Attracts },
            inner: if a3 { SideBehavior::Attracts } else { SideBehavior::Repels },
        },
        Cycle {
            kind: CycleKind::HomoclinicLoop,
            orientation: Orientation::Ccw,
            outer: SideBehavior::Attracts,
            inner: SideBehavior::Attracts,
        },
    ];
    let cycle_rotation = vec![
        CycleRotation { outer: outer_ends, inner: inner_ends },
        CycleRotation::default(),
    ];
    let designated = Designated {
        saddle_node: n,
        parabolic_cycle: GAMMA,
        homoclinic_cycle: LOOP,
        homoclinic_edge: h,
        beta1: ub.beta1,
        beta2,
    };
    Ok(b.finish(cycles, cycle_rotation, designated))
}

/// Annulus construction for the groups with `a3 = 1` (configurations 111,
/// 011, 101, 001): flow runs from the cycle up to the saddle-node. The
/// basepoint `q` is the cut (and, for `a2 = 1`, the `beta1` attachment).
fn build_ub_a3one(b: &mut Builder, d: &CharacteristicData, q: &CirclePoint, n: VertexId) -> UbOut {
    let a2 = d.config.a2();
    let k = d.a_plus.len();
    let m = d.l2.len();

    // Unroll the plus circle at q: original index -> unrolled position.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| phi(q, &d.a_plus.points()[i]).cmp(&phi(q, &d.a_plus.points()[j])));
    let mut unroll = vec![0usize; k];
    for (u, &i) in order.iter().enumerate() {
        unroll[i] = u;
    }

    let bottom = ChordForest::new(d.a_plus.classes(), |i| unroll[i]);
    let top = ChordForest::new(d.l2.classes(), |i| i);

    // Region points: one attractor per bottom lobe, one repeller per top
    // lobe. The strip between the two sides gets no point.
    let bottom_point: Vec<VertexId> =
        bottom.chords.iter().map(|_| b.vertex(VertexKind::Attractor, None)).collect();
    let top_point: Vec<VertexId> =
        top.chords.iter().map(|_| b.vertex(VertexKind::Repeller, None)).collect();
    let mut bottom_items: Vec<Vec<(usize, EdgeEnd)>> = vec![Vec::new(); bottom.chords.len()];
    let mut top_items: Vec<Vec<(usize, EdgeEnd)>> = vec![Vec::new(); top.chords.len()];

    let mut outer: Vec<(Rat, EdgeEnd)> = Vec::new();
    let mut l2_ends: Vec<Option<EdgeEnd>> = vec![None; m];
    let gamma = Attach::Cycle { cycle: GAMMA, side: Side::Outer };
    let coord = |i: usize| -> Rat { d.a_plus.points()[i].value().clone() };

    // Bottom chords (plus-set two-element classes): the pair of windings
    // arrives as the stable separatrices; the lobe hook and the fourth end
    // leave as unstable ones.
    let mut chord_of_class: Vec<Option<usize>> = vec![None; d.a_plus.classes().len()];
    for (ci, &(class, _, _)) in bottom.chords.iter().enumerate() {
        chord_of_class[class] = Some(ci);
    }
    for (ci, &(class, _, _)) in bottom.chords.iter().enumerate() {
        let s = b.vertex(VertexKind::Saddle, None);
        let block = &d.a_plus.classes()[class];
        let (plo, phi_) = if unroll[block[0]] < unroll[block[1]] {
            (block[0], block[1])
        } else {
            (block[1], block[0])
        };
        let e_lo = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(s)));
        let e_hi = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(s)));
        outer.push((coord(plo), src(e_lo)));
        outer.push((coord(phi_), src(e_hi)));
        let e_lobe = b.edge(
            EdgeRole::Separatrix,
            Some(Attach::Vertex(s)),
            Some(Attach::Vertex(bottom_point[ci])),
        );
        bottom_items[ci].push((usize::MAX, tgt(e_lobe)));
        let e_fourth = match bottom.parent[ci] {
            Some(p) => {
                let e = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(s)),
                    Some(Attach::Vertex(bottom_point[p])),
                );
                bottom_items[p].push((unroll[plo], tgt(e)));
                e
            }
            None => match d.liaison.aplus_partner(class) {
                Some(lc) => {
                    let lblock = &d.l2.classes()[lc];
                    debug_assert_eq!(lblock.len(), 1, "2-2 liaison excluded by condition 2");
                    let e = b.edge(
                        EdgeRole::Separatrix,
                        Some(Attach::Vertex(s)),
                        Some(Attach::Vertex(n)),
                    );
                    l2_ends[lblock[0]] = Some(tgt(e));
                    e
                }
                None => {
                    let a_own = b.vertex(VertexKind::Attractor, None);
                    let e = b.edge(
                        EdgeRole::Separatrix,
                        Some(Attach::Vertex(s)),
                        Some(Attach::Vertex(a_own)),
                    );
                    b.set_rotation(a_own, vec![tgt(e)]);
                    e
                }
            },
        };
        b.set_rotation(s, vec![tgt(e_lo), src(e_fourth), tgt(e_hi), src(e_lobe)]);
    }

    // Top chords (L2 two-element classes): the pair of arrivals leaves as
    // unstable separatrices.
    for (ci, &(class, lo, hi)) in top.chords.iter().enumerate() {
        let s = b.vertex(VertexKind::Saddle, None);
        let e_lo = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        let e_hi = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        l2_ends[lo] = Some(tgt(e_lo));
        l2_ends[hi] = Some(tgt(e_hi));
        let e_lobe = b.edge(
            EdgeRole::Separatrix,
            Some(Attach::Vertex(top_point[ci])),
            Some(Attach::Vertex(s)),
        );
        top_items[ci].push((usize::MAX, src(e_lobe)));
        let e_fourth = match top.parent[ci] {
            Some(p) => {
                let e = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(top_point[p])),
                    Some(Attach::Vertex(s)),
                );
                top_items[p].push((lo, src(e)));
                e
            }
            None => match d.liaison.l2_partner(class) {
                Some(ac) => {
                    let ablock = &d.a_plus.classes()[ac];
                    debug_assert_eq!(ablock.len(), 1, "2-2 liaison excluded by condition 2");
                    let y = ablock[0];
                    let e = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(s)));
                    outer.push((coord(y), src(e)));
                    e
                }
                None => {
                    let r_own = b.vertex(VertexKind::Repeller, None);
                    let e = b.edge(
                        EdgeRole::Separatrix,
                        Some(Attach::Vertex(r_own)),
                        Some(Attach::Vertex(s)),
                    );
                    b.set_rotation(r_own, vec![src(e)]);
                    e
                }
            },
        };
        b.set_rotation(s, vec![src(e_lo), tgt(e_lobe), src(e_hi), tgt(e_fourth)]);
    }

    // One-to-one liaison corners.
    for &(lc, ac) in &d.liaison.pairs {
        let lb = &d.l2.classes()[lc];
        let ab = &d.a_plus.classes()[ac];
        if lb.len() != 1 || ab.len() != 1 {
            continue; // chord-side liaisons already handled
        }
        let (x, y) = (lb[0], ab[0]);
        let s = b.vertex(VertexKind::Saddle, None);
        let e_c = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(s)));
        outer.push((coord(y), src(e_c)));
        let e_b = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        l2_ends[x] = Some(tgt(e_b));
        let r_own = b.vertex(VertexKind::Repeller, None);
        let a_own = b.vertex(VertexKind::Attractor, None);
        let e_r =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(r_own)), Some(Attach::Vertex(s)));
        let e_a =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(a_own)));
        b.set_rotation(r_own, vec![src(e_r)]);
        b.set_rotation(a_own, vec![tgt(e_a)]);
        b.set_rotation(s, vec![tgt(e_c), src(e_b), tgt(e_r), src(e_a)]);
    }

    // Gadgets for one-element classes not in liaison.
    for (class, block) in d.a_plus.classes().iter().enumerate() {
        if block.len() != 1 || d.liaison.aplus_partner(class).is_some() {
            continue;
        }
        let y = block[0];
        let lobe = bottom.lobe_of_position(unroll[y]);
        let s = b.vertex(VertexKind::Saddle, None);
        let a_new = b.vertex(VertexKind::Attractor, None);
        let r_new = b.vertex(VertexKind::Repeller, None);
        let e_bd = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(s)));
        outer.push((coord(y), src(e_bd)));
        let e_r =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(r_new)), Some(Attach::Vertex(s)));
        b.set_rotation(r_new, vec![src(e_r)]);
        match lobe {
            Some(ci) => {
                let e_a = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(s)),
                    Some(Attach::Vertex(a_new)),
                );
                let e_hook = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(s)),
                    Some(Attach::Vertex(bottom_point[ci])),
                );
                bottom_items[ci].push((unroll[y], tgt(e_hook)));
                b.set_rotation(a_new, vec![tgt(e_a)]);
                b.set_rotation(s, vec![tgt(e_bd), src(e_hook), tgt(e_r), src(e_a)]);
            }
            None => {
                let e_a1 = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(s)),
                    Some(Attach::Vertex(a_new)),
                );
                let e_a2 = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(s)),
                    Some(Attach::Vertex(a_new)),
                );
                b.set_rotation(a_new, vec![tgt(e_a1), tgt(e_a2)]);
                b.set_rotation(s, vec![tgt(e_bd), src(e_a1), tgt(e_r), src(e_a2)]);
            }
        }
    }
    for (class, block) in d.l2.classes().iter().enumerate() {
        if block.len() != 1 || d.liaison.l2_partner(class).is_some() {
            continue;
        }
        let x = block[0];
        let lobe = top.lobe_of_position(x);
        let s = b.vertex(VertexKind::Saddle, None);
        let a_new = b.vertex(VertexKind::Attractor, None);
        let r_new = b.vertex(VertexKind::Repeller, None);
        let e_bd = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        l2_ends[x] = Some(tgt(e_bd));
        let e_a =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(a_new)));
        b.set_rotation(a_new, vec![tgt(e_a)]);
        match lobe {
            Some(ci) => {
                let e_r = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(r_new)),
                    Some(Attach::Vertex(s)),
                );
                let e_hook = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(top_point[ci])),
                    Some(Attach::Vertex(s)),
                );
                top_items[ci].push((x, src(e_hook)));
                b.set_rotation(r_new, vec![src(e_r)]);
                b.set_rotation(s, vec![src(e_bd), tgt(e_hook), src(e_a), tgt(e_r)]);
            }
            None => {
                let e_r1 = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(r_new)),
                    Some(Attach::Vertex(s)),
                );
                let e_r2 = b.edge(
                    EdgeRole::Separatrix,
                    Some(Attach::Vertex(r_new)),
                    Some(Attach::Vertex(s)),
                );
                b.set_rotation(r_new, vec![src(e_r1), src(e_r2)]);
                b.set_rotation(s, vec![src(e_bd), tgt(e_r2), src(e_a), tgt(e_r1)]);
            }
        }
    }

    // Region point rotations: the cycle-side lobes are walked in
    // decreasing boundary order, the arrival-side lobes in increasing
    // order.
    for (ci, items) in bottom_items.iter().enumerate() {
        b.set_rotation(bottom_point[ci], ordered_region_rotation(items, true));
    }
    for (ci, items) in top_items.iter().enumerate() {
        b.set_rotation(top_point[ci], ordered_region_rotation(items, false));
    }

    // beta1: off the cycle for a2 = 1, else from its own repeller.
    let beta1 = if a2 {
        let e = b.edge(EdgeRole::Separatrix, Some(gamma), Some(Attach::Vertex(n)));
        outer.push((q.value().clone(), src(e)));
        e
    } else {
        let r_star = b.vertex(VertexKind::Repeller, None);
        let e =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(r_star)), Some(Attach::Vertex(n)));
        b.set_rotation(r_star, vec![src(e)]);
        e
    };

    UbOut { outer, l2_ends, beta1 }
}

/// Region point rotation: the lobe's own saddle hook first, then the items
/// in boundary order (descending for top-side regions, whose boundary runs
/// the other way around the point).
fn ordered_region_rotation(items: &[(usize, EdgeEnd)], descending: bool) -> Vec<EdgeEnd> {
    let mut rot: Vec<EdgeEnd> =
        items.iter().filter(|&&(p, _)| p == usize::MAX).map(|&(_, e)| e).collect();
    let mut rest: Vec<(usize, EdgeEnd)> =
        items.iter().filter(|&&(p, _)| p != usize::MAX).copied().collect();
    rest.sort_by_key(|&(p, _)| p);
    if descending {
        rest.reverse();
    }
    rot.extend(rest.into_iter().map(|(_, e)| e));
    rot
}

/// Annulus construction for configurations 100 and 000: the cycle attracts
/// from the annulus side, so both boundaries drain the annulus and the
/// inter-corner rectangles carry shared repellers. All `L2` and plus-set
/// classes here are one-element (condition 6).
fn build_ub_a3zero(b: &mut Builder, d: &CharacteristicData, q: &CirclePoint, n: VertexId) -> UbOut {
    let k = d.a_plus.len();
    let m = d.l2.len();
    let mut outer: Vec<(Rat, EdgeEnd)> = Vec::new();
    let mut l2_ends: Vec<Option<EdgeEnd>> = vec![None; m];
    let coord = |i: usize| -> Rat { d.a_plus.points()[i].value().clone() };
    let gamma = Attach::Cycle { cycle: GAMMA, side: Side::Outer };

    // Corners sorted by the unrolled position of their plus-set point;
    // condition 2 makes this agree with the L2 order.
    let mut corners: Vec<(usize, usize)> = d
        .liaison
        .pairs
        .iter()
        .map(|&(lc, ac)| (d.l2.classes()[lc][0], d.a_plus.classes()[ac][0]))
        .collect();
    corners.sort_by(|a, b| phi(q, &d.a_plus.points()[a.1]).cmp(&phi(q, &d.a_plus.points()[b.1])));
    let c = corners.len();

    // Gap repellers: gap t follows corner t cyclically; the wraparound gap
    // (holding the cut and beta1's slot) is the last one. With no corners
    // there is a single gap.
    let n_gaps = c.max(1);
    let gap_rep: Vec<VertexId> =
        (0..n_gaps).map(|_| b.vertex(VertexKind::Repeller, None)).collect();
    let wraparound = n_gaps - 1;
    // (sort key, end) items for the repeller rotations.
    let mut gap_bottom: Vec<Vec<(i64, EdgeEnd)>> = vec![Vec::new(); n_gaps];
    let mut gap_top: Vec<Vec<(i64, EdgeEnd)>> = vec![Vec::new(); n_gaps];

    let unrolled = |i: usize| -> Rat { phi(q, &d.a_plus.points()[i]) };

    let gap_of_plus = |i: usize| -> usize {
        if c == 0 {
            return 0;
        }
        let u = unrolled(i);
        let mut gap = wraparound;
        for (t, &(_, y)) in corners.iter().enumerate() {
            if unrolled(y) < u {
                gap = t;
            }
        }
        gap
    };
    let gap_of_l2 = |x: usize| -> usize {
        if c == 0 {
            return 0;
        }
        let mut gap = wraparound;
        for (t, &(xc, _)) in corners.iter().enumerate() {
            if xc < x {
                gap = t;
            }
        }
        gap
    };

    // Corner saddles: both marked separatrices unstable, the stable pair
    // fed by the two neighboring gap repellers.
    for (t, &(x, y)) in corners.iter().enumerate() {
        let s = b.vertex(VertexKind::Saddle, None);
        let e_c = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(gamma));
        outer.push((coord(y), tgt(e_c)));
        let e_b = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        l2_ends[x] = Some(tgt(e_b));
        let left_gap = (t + n_gaps - 1) % n_gaps;
        let right_gap = t;
        let e_left = b.edge(
            EdgeRole::Separatrix,
            Some(Attach::Vertex(gap_rep[left_gap])),
            Some(Attach::Vertex(s)),
        );
        let e_right = b.edge(
            EdgeRole::Separatrix,
            Some(Attach::Vertex(gap_rep[right_gap])),
            Some(Attach::Vertex(s)),
        );
        b.set_rotation(s, vec![src(e_c), tgt(e_left), src(e_b), tgt(e_right)]);
        // A gap region is walked from its west corner along the arrival
        // fan and back along the cycle: the west corner's hook leads, the
        // east corner's hook separates the fan block from the cycle block.
        gap_top[right_gap].push((i64::MIN, src(e_right)));
        gap_top[left_gap].push((i64::MAX, src(e_left)));
    }

    // Boundary keys within a gap: bottom items run west to east from the
    // gap's west corner (wrapping past the cut in the wraparound gap); top
    // items run east to west, with the beta1 slot between the wraparound
    // gap's two blocks.
    let mut plus_rank_order: Vec<usize> = (0..k).collect();
    plus_rank_order.sort_by(|&i, &j| unrolled(i).cmp(&unrolled(j)));
    let rank_of_plus =
        |i: usize| -> i64 { plus_rank_order.iter().position(|&p| p == i).unwrap() as i64 };
    // The cycle block is walked back east to west: items run cyclically
    // descending from the gap's west corner.
    let bottom_key = |gap: usize, i: usize| -> i64 {
        let u = rank_of_plus(i);
        if c == 0 {
            return 4 * (k as i64 - u);
        }
        let west = rank_of_plus(corners[gap].1);
        4 * ((west - u).rem_euclid(k as i64))
    };
    // Around a gap repeller the arrival-fan items run in increasing
    // coordinate order starting just past the gap's west corner; in the
    // wraparound gap the beta1 slot follows the last arrival and the
    // items west of the east corner close the walk.
    let top_key = |gap: usize, x: usize| -> i64 {
        let m_ = m as i64;
        let x = x as i64;
        if c == 0 {
            return 4 * x;
        }
        let east = corners[(gap + 1) % n_gaps].0 as i64;
        let west = corners[gap].0 as i64;
        if gap == wraparound && x < east {
            4 * m_ + 4 + 4 * x
        } else {
            debug_assert!(x > west && (gap == wraparound || x < east));
            4 * x
        }
    };
    let beta1_key = |_gap: usize| -> i64 { 4 * (m as i64) };

    // Gadgets for points not in liaison.
    let in_corner_plus: Vec<usize> = corners.iter().map(|&(_, y)| y).collect();
    for i in 0..k {
        if in_corner_plus.contains(&i) {
            continue;
        }
        let gap = gap_of_plus(i);
        let rep = gap_rep[gap];
        let s = b.vertex(VertexKind::Saddle, None);
        let a_new = b.vertex(VertexKind::Attractor, None);
        let e_bd = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(gamma));
        outer.push((coord(i), tgt(e_bd)));
        let e_a =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(a_new)));
        let e_r1 =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(rep)), Some(Attach::Vertex(s)));
        let e_r2 =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(rep)), Some(Attach::Vertex(s)));
        b.set_rotation(a_new, vec![tgt(e_a)]);
        b.set_rotation(s, vec![src(e_bd), tgt(e_r1), src(e_a), tgt(e_r2)]);
        let key = bottom_key(gap, i);
        gap_bottom[gap].push((key, src(e_r2)));
        gap_bottom[gap].push((key + 1, src(e_r1)));
    }
    let in_corner_l2: Vec<usize> = corners.iter().map(|&(x, _)| x).collect();
    for x in 0..m {
        if in_corner_l2.contains(&x) {
            continue;
        }
        let gap = gap_of_l2(x);
        let rep = gap_rep[gap];
        let s = b.vertex(VertexKind::Saddle, None);
        let a_new = b.vertex(VertexKind::Attractor, None);
        let e_bd = b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(n)));
        l2_ends[x] = Some(tgt(e_bd));
        let e_a =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(s)), Some(Attach::Vertex(a_new)));
        let e_r1 =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(rep)), Some(Attach::Vertex(s)));
        let e_r2 =
            b.edge(EdgeRole::Separatrix, Some(Attach::Vertex(rep)), Some(Attach::Vertex(s)));
        b.set_rotation(a_new, vec![tgt(e_a)]);
        b.set_rotation(s, vec![src(e_bd), tgt(e_r1), src(e_a), tgt(e_r2)]);
        let key = top_key(gap, x);
        gap_top[gap].push((key, src(e_r2)));
        gap_top[gap].push((key + 1, src(e_r1)));
    }

    // beta1 from the wraparound gap's repeller; at the saddle-node its
    // slot sits just past the last arrival.
    let beta1 = b.edge(
        EdgeRole::Separatrix,
        Some(Attach::Vertex(gap_rep[wraparound])),
        Some(Attach::Vertex(n)),
    );
    gap_top[wraparound].push((beta1_key(wraparound), src(beta1)));


    // Gap repeller rotations: the fan block, then the cycle block.
    for t in 0..n_gaps {
        let mut rot = Vec::new();
        let mut topv = gap_top[t].clone();
        topv.sort_by_key(|&(p, _)| p);
        rot.extend(topv.into_iter().map(|(_, e)| e));
        let mut bottomv = gap_bottom[t].clone();
        bottomv.sort_by_key(|&(p, _)| p);
        rot.extend(bottomv.into_iter().map(|(_, e)| e));
        b.set_rotation(gap_rep[t], rot);
    }

    UbOut { outer, l2_ends, beta1 }
}
