//! Equivalence of marked sets and characteristic data.
//!
//! Interval sets are equivalent when the order-preserving point bijection
//! maps classes to classes. A pair of circle sets is equivalent to another
//! pair when some rotation of the circle (a shift `alpha` mod 1) together
//! with cyclic re-indexings of the point labels makes the difference sets
//! agree in order. Because only finitely many orders arise as `alpha`
//! varies (the order is constant between consecutive values of `-tau_ij`),
//! the decision is exact over a finite candidate list.

use crate::characteristic::CharacteristicData;
use crate::marked::{Classes, MarkedCircleSet, MarkedIntervalSet};
use crate::rational::{mod1, Rat};
use std::collections::BTreeSet;

/// Witness for interval equivalence: the order isomorphism on point
/// indices (always the identity when it exists) plus the induced class map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalWitness {
    pub point_map: Vec<usize>,
    /// `class_map[i]` = index of the class of the second set matching
    /// class `i` of the first.
    pub class_map: Vec<usize>,
}

fn canonical_blocks(classes: &Classes) -> Vec<BTreeSet<usize>> {
    classes.iter().map(|b| b.iter().copied().collect()).collect()
}

/// Decide interval equivalence and produce the witness bijection.
pub fn interval_equivalent(
    a: &MarkedIntervalSet,
    b: &MarkedIntervalSet,
) -> Option<IntervalWitness> {
    if a.len() != b.len() {
        return None;
    }
    let ab = canonical_blocks(a.classes());
    let bb = canonical_blocks(b.classes());
    let mut class_map = Vec::with_capacity(ab.len());
    for block in &ab {
        let j = bb.iter().position(|other| other == block)?;
        class_map.push(j);
    }
    if class_map.len() != bb.len() {
        return None;
    }
    let mut distinct = class_map.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != class_map.len() {
        return None;
    }
    Some(IntervalWitness { point_map: (0..a.len()).collect(), class_map })
}

/// Witness for circle-pair equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePairWitness {
    /// Point `i` of the first plus-set corresponds to point
    /// `(i + rot_plus) mod k` of the second.
    pub rot_plus: usize,
    pub rot_minus: usize,
    /// The rotation applied to the second pair's difference values.
    pub alpha: Rat,
}

fn differences(a_plus: &MarkedCircleSet, a_minus: &MarkedCircleSet) -> Vec<Vec<Rat>> {
    a_plus
        .points()
        .iter()
        .map(|p| {
            a_minus.points().iter().map(|m| mod1(&(p.value() - m.value()))).collect()
        })
        .collect()
}

/// Does `shifted(tau) = tau + alpha mod 1` respect every strict inequality
/// of `lambda`? Entries are matched by index pair.
fn order_agrees(lambda: &[(Rat, usize, usize)], tau: &[Vec<Rat>], alpha: &Rat) -> bool {
    // Sort a copy of the index pairs by lambda value; whenever lambda
    // strictly increases, the shifted tau must strictly increase past the
    // maximum seen so far.
    let mut items: Vec<(&Rat, Rat)> = lambda
        .iter()
        .map(|(lv, i, j)| (lv, mod1(&(&tau[*i][*j] + alpha))))
        .collect();
    items.sort_by(|a, b| a.0.cmp(b.0));
    let mut idx = 0;
    let mut prev_group_max: Option<Rat> = None;
    while idx < items.len() {
        let group_val = items[idx].0;
        let mut group_min: Option<&Rat> = None;
        let mut group_max: Option<&Rat> = None;
        let start = idx;
        while idx < items.len() && items[idx].0 == group_val {
            let t = &items[idx].1;
            if group_min.map_or(true, |m| t < m) {
                group_min = Some(t);
            }
            if group_max.map_or(true, |m| t > m) {
                group_max = Some(t);
            }
            idx += 1;
        }
        let _ = start;
        if let (Some(prev), Some(min)) = (&prev_group_max, group_min) {
            if min <= prev {
                return false;
            }
        }
        match (&prev_group_max, group_max) {
            (Some(prev), Some(max)) if max > prev => prev_group_max = Some(max.clone()),
            (None, Some(max)) => prev_group_max = Some(max.clone()),
            _ => {}
        }
    }
    true
}

/// Candidate shifts: the order of `tau + alpha` is constant on each arc
/// `[-tau_ij, next)` of alpha values, so the arc base points cover every
/// possible order. Alignment shifts `lambda_uv - tau_ij` are added as well;
/// they are where exact coincidences happen.
fn candidate_alphas(lambda: &[(Rat, usize, usize)], tau: &[Vec<Rat>]) -> Vec<Rat> {
    let mut cands = BTreeSet::new();
    for row in tau {
        for t in row {
            cands.insert(mod1(&(-t)));
            for (lv, _, _) in lambda {
                cands.insert(mod1(&(lv - t)));
            }
        }
    }
    if cands.is_empty() {
        cands.insert(Rat::from_integer(0.into()));
    }
    cands.into_iter().collect()
}

/// Decide circle-pair equivalence per the difference-set order criterion.
pub fn circle_pair_equivalent(
    a_plus: &MarkedCircleSet,
    a_minus: &MarkedCircleSet,
    b_plus: &MarkedCircleSet,
    b_minus: &MarkedCircleSet,
) -> Option<CirclePairWitness> {
    find_circle_witness(a_plus, a_minus, b_plus, b_minus, |_, _| true)
}

/// Shared search over rotations and candidate shifts. `accept` lets the
/// caller impose extra conditions (marking preservation, liaison respect)
/// on a candidate rotation pair before it is accepted.
fn find_circle_witness(
    a_plus: &MarkedCircleSet,
    a_minus: &MarkedCircleSet,
    b_plus: &MarkedCircleSet,
    b_minus: &MarkedCircleSet,
    accept: impl Fn(usize, usize) -> bool,
) -> Option<CirclePairWitness> {
    let k = a_plus.len();
    let n = a_minus.len();
    if b_plus.len() != k || b_minus.len() != n {
        return None;
    }
    if k == 0 || n == 0 {
        // Empty difference sets: any rotation works; still honor `accept`.
        let rp_range = if k == 0 { vec![0] } else { (0..k).collect() };
        let rm_range = if n == 0 { vec![0] } else { (0..n).collect() };
        for &rp in &rp_range {
            for &rm in &rm_range {
                if accept(rp, rm) {
                    return Some(CirclePairWitness {
                        rot_plus: rp,
                        rot_minus: rm,
                        alpha: Rat::from_integer(0.into()),
                    });
                }
            }
        }
        return None;
    }

    let lam = differences(a_plus, a_minus);
    let tau = differences(b_plus, b_minus);
    let mut lambda_flat: Vec<(Rat, usize, usize)> = Vec::with_capacity(k * n);
    for (i, row) in lam.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            lambda_flat.push((v.clone(), i, j));
        }
    }

    for rot_plus in 0..k {
        for rot_minus in 0..n {
            if !accept(rot_plus, rot_minus) {
                continue;
            }
            // Tau re-indexed so that entry (i, j) faces lambda (i, j).
            let tau_rot: Vec<Vec<Rat>> = (0..k)
                .map(|i| {
                    (0..n).map(|j| tau[(i + rot_plus) % k][(j + rot_minus) % n].clone()).collect()
                })
                .collect();
            for alpha in candidate_alphas(&lambda_flat, &tau_rot) {
                if order_agrees(&lambda_flat, &tau_rot, &alpha) {
                    return Some(CirclePairWitness { rot_plus, rot_minus, alpha });
                }
            }
        }
    }
    None
}

/// Does rotating point labels by `rot` map the classes of `a` onto the
/// classes of `b`? Returns the induced class map when it does.
fn rotation_class_map(a: &MarkedCircleSet, b: &MarkedCircleSet, rot: usize) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let k = a.len();
    let bb = canonical_blocks(b.classes());
    let mut map = Vec::with_capacity(a.classes().len());
    for block in a.classes() {
        let image: BTreeSet<usize> =
            block.iter().map(|&i| if k == 0 { i } else { (i + rot) % k }).collect();
        let j = bb.iter().position(|other| *other == image)?;
        map.push(j);
    }
    if map.len() != bb.len() {
        return None;
    }
    Some(map)
}

/// Full witness for characteristic equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicWitness {
    pub l1: IntervalWitness,
    pub l2: IntervalWitness,
    pub circle: CirclePairWitness,
}

/// Decide equivalence of two characteristic data: equal configurations,
/// pairwise interval equivalence, circle-pair equivalence through a witness
/// whose rotations preserve the circle markings, and joint respect of the
/// liaison relation.
pub fn characteristic_equivalent(
    d: &CharacteristicData,
    e: &CharacteristicData,
) -> Option<CharacteristicWitness> {
    if d.config != e.config {
        return None;
    }
    let w1 = interval_equivalent(&d.l1, &e.l1)?;
    let w2 = interval_equivalent(&d.l2, &e.l2)?;
    if d.liaison.pairs.len() != e.liaison.pairs.len() {
        return None;
    }
    let l2_class_map = w2.class_map.clone();
    let accept = |rp: usize, rm: usize| -> bool {
        let ap_map = match rotation_class_map(&d.a_plus, &e.a_plus, rp) {
            Some(m) => m,
            None => return false,
        };
        if rotation_class_map(&d.a_minus, &e.a_minus, rm).is_none() {
            return false;
        }
        d.liaison
            .pairs
            .iter()
            .all(|&(lc, ac)| e.liaison.pairs.contains(&(l2_class_map[lc], ap_map[ac])))
    };
    let circle = find_circle_witness(&d.a_plus, &d.a_minus, &e.a_plus, &e.a_minus, accept)?;
    Some(CharacteristicWitness { l1: w1, l2: w2, circle })
}

/// Equivalence at the combinatorial layer: like
/// [`characteristic_equivalent`] but without the difference-set order
/// condition: only cyclic order, markings, liaison, and configuration.
/// This is the invariant preserved by the skeleton round trip, which
/// assigns fresh canonical coordinates.
pub fn combinatorially_equivalent(d: &CharacteristicData, e: &CharacteristicData) -> bool {
    if d.config != e.config {
        return false;
    }
    let (Some(_), Some(w2)) =
        (interval_equivalent(&d.l1, &e.l1), interval_equivalent(&d.l2, &e.l2))
    else {
        return false;
    };
    if d.liaison.pairs.len() != e.liaison.pairs.len() {
        return false;
    }
    if d.a_plus.len() != e.a_plus.len() || d.a_minus.len() != e.a_minus.len() {
        return false;
    }
    let rm_ok = if d.a_minus.len() == 0 {
        rotation_class_map(&d.a_minus, &e.a_minus, 0).is_some()
    } else {
        (0..d.a_minus.len()).any(|rm| rotation_class_map(&d.a_minus, &e.a_minus, rm).is_some())
    };
    if !rm_ok {
        return false;
    }
    let rps: Vec<usize> = if d.a_plus.len() == 0 { vec![0] } else { (0..d.a_plus.len()).collect() };
    rps.into_iter().any(|rp| {
        let Some(ap_map) = rotation_class_map(&d.a_plus, &e.a_plus, rp) else {
            return false;
        };
        d.liaison
            .pairs
            .iter()
            .all(|&(lc, ac)| e.liaison.pairs.contains(&(w2.class_map[lc], ap_map[ac])))
    })
}
