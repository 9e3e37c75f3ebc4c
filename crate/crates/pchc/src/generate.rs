//! Deterministic generation of realizable characteristic data.
//!
//! The generator exists for property tests and for the CLI: given a seed
//! and size parameters it produces a datum that always passes
//! `check_realizable`. Coordinates use the same canonical schemes as
//! skeleton extraction, so a generate → realize → extract pipeline
//! reproduces the coordinates exactly (up to the circle rotation allowed
//! by equivalence) and the circle pair is automatically non-synchronized.
//!
//! Markings are sampled as uniform-ish non-crossing structures via a
//! rejection loop on shuffled open/close/single tokens; liaison shapes are
//! sampled per configuration group so that every group-specific condition
//! holds by construction (adjacent batteries for the group that needs the
//! neighbor-pairing condition).

use crate::characteristic::{CharacteristicData, Liaison};
use crate::config::{Configuration, ConfigurationGroup};
use crate::marked::{
    partial_order_leq, CirclePoint, Classes, IntervalPoint, MarkedCircleSet, MarkedIntervalSet,
};
use crate::skeleton::{
    canonical_aminus_values, canonical_aplus_values, canonical_l1_values, canonical_l2_values,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct GenSpec {
    pub config: Configuration,
    /// Point counts: plus circle, minus circle, far-side interval, annulus
    /// interval.
    pub k: usize,
    pub n: usize,
    pub l: usize,
    pub m: usize,
    /// Requested number of two-element classes per set; `None` = random.
    pub pairs_l1: Option<usize>,
    pub pairs_l2: Option<usize>,
    pub pairs_aplus: Option<usize>,
    pub pairs_aminus: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(config: Configuration, k: usize, n: usize, l: usize, m: usize, seed: u64) -> Self {
        GenSpec {
            config,
            k,
            n,
            l,
            m,
            pairs_l1: None,
            pairs_l2: None,
            pairs_aplus: None,
            pairs_aminus: None,
            seed,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum GenError {
    #[error("infeasible request: {0}")]
    Infeasible(String),
}

/// Random non-crossing partition of `c` positions into `p` two-element and
/// `c - 2p` one-element classes. Class indices are ordered by first point.
fn noncrossing_classes(rng: &mut ChaCha8Rng, c: usize, p: usize) -> Classes {
    assert!(2 * p <= c);
    // Tokens: 1 = open, 2 = close, 0 = single; shuffle until balanced.
    let mut tokens: Vec<u8> = std::iter::repeat(1u8)
        .take(p)
        .chain(std::iter::repeat(2u8).take(p))
        .chain(std::iter::repeat(0u8).take(c - 2 * p))
        .collect();
    loop {
        tokens.shuffle(rng);
        let mut depth = 0i32;
        let mut ok = true;
        for &t in &tokens {
            match t {
                1 => depth += 1,
                2 => {
                    depth -= 1;
                    if depth < 0 {
                        ok = false;
                        break;
                    }
                }
                _ => {}
            }
        }
        if ok {
            break;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for (pos, &t) in tokens.iter().enumerate() {
        match t {
            0 => classes.push(vec![pos]),
            1 => {
                stack.push(classes.len());
                classes.push(vec![pos]);
            }
            2 => {
                let ci = stack.pop().expect("balanced");
                classes[ci].push(pos);
            }
            _ => unreachable!(),
        }
    }
    classes
}

fn pick_pairs(rng: &mut ChaCha8Rng, c: usize, requested: Option<usize>) -> Result<usize, GenError> {
    match requested {
        Some(p) if 2 * p > c => {
            Err(GenError::Infeasible(format!("{p} two-element classes need {} points", 2 * p)))
        }
        Some(p) => Ok(p),
        None => Ok(if c == 0 { 0 } else { rng.gen_range(0..=c / 2) }),
    }
}

fn interval_set(values: Vec<crate::rational::Rat>, classes: Classes) -> MarkedIntervalSet {
    MarkedIntervalSet::new(
        values.into_iter().map(|v| IntervalPoint::new(v).expect("canonical range")).collect(),
        classes,
    )
    .expect("generated structure is well-formed")
}

fn circle_set(values: Vec<crate::rational::Rat>, classes: Classes) -> MarkedCircleSet {
    MarkedCircleSet::new(
        values.into_iter().map(|v| CirclePoint::new(v).expect("canonical range")).collect(),
        classes,
    )
    .expect("generated structure is well-formed")
}

/// Maximal classes of a marked set built on line-like positions (no chord
/// spans the wraparound cut), ordered by first point.
fn maximal_classes_linear(classes: &Classes) -> Vec<usize> {
    let spans: Vec<(usize, usize)> = classes
        .iter()
        .map(|b| {
            let lo = *b.iter().min().unwrap();
            let hi = *b.iter().max().unwrap();
            (lo, hi)
        })
        .collect();
    let mut out: Vec<usize> = (0..classes.len())
        .filter(|&i| {
            !spans.iter().enumerate().any(|(j, &(lo, hi))| {
                j != i && classes[j].len() == 2 && lo < spans[i].0 && spans[i].1 < hi
            })
        })
        .collect();
    out.sort_by_key(|&i| spans[i].0);
    out
}

/// Generate a realizable characteristic datum.
pub fn generate(spec: &GenSpec) -> Result<CharacteristicData, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let group = spec.config.group();

    if group == ConfigurationGroup::A3Zero {
        for (name, req) in [("L2", spec.pairs_l2), ("A+", spec.pairs_aplus)] {
            if req.unwrap_or(0) > 0 {
                return Err(GenError::Infeasible(format!(
                    "two-element classes in {name} are impossible when a3 = 0"
                )));
            }
        }
    }

    let p_l1 = pick_pairs(&mut rng, spec.l, spec.pairs_l1)?;
    let p_am = pick_pairs(&mut rng, spec.n, spec.pairs_aminus)?;
    let l1 = interval_set(canonical_l1_values(spec.l), noncrossing_classes(&mut rng, spec.l, p_l1));
    let a_minus = circle_set(
        canonical_aminus_values(spec.k, spec.n),
        noncrossing_classes(&mut rng, spec.n, p_am),
    );

    let (l2_classes, ap_classes, pairs) = match group {
        ConfigurationGroup::A3Zero => {
            let l2c: Classes = (0..spec.m).map(|i| vec![i]).collect();
            let apc: Classes = (0..spec.k).map(|i| vec![i]).collect();
            let t_max = spec.m.min(spec.k);
            let t = if t_max == 0 { 0 } else { rng.gen_range(0..=t_max) };
            let l_pick = sorted_sample(&mut rng, spec.m, t);
            let a_pick = sorted_sample(&mut rng, spec.k, t);
            let pairs: Vec<(usize, usize)> = l_pick.into_iter().zip(a_pick).collect();
            (l2c, apc, pairs)
        }
        ConfigurationGroup::A2One => {
            let p_l2 = pick_pairs(&mut rng, spec.m, spec.pairs_l2)?;
            let p_ap = pick_pairs(&mut rng, spec.k, spec.pairs_aplus)?;
            // Retry until a monotone liaison without 2-2 pairs is found.
            let mut attempt = 0;
            loop {
                attempt += 1;
                let l2c = noncrossing_classes(&mut rng, spec.m, p_l2);
                let apc = noncrossing_classes(&mut rng, spec.k, p_ap);
                let lmax = maximal_classes_linear(&l2c);
                let amax = maximal_classes_linear(&apc);
                let t_max = lmax.len().min(amax.len());
                let t = if t_max == 0 { 0 } else { rng.gen_range(0..=t_max) };
                let l_pick = sorted_sample(&mut rng, lmax.len(), t);
                let a_pick = sorted_sample(&mut rng, amax.len(), t);
                let pairs: Vec<(usize, usize)> = l_pick
                    .iter()
                    .zip(a_pick.iter())
                    .map(|(&li, &ai)| (lmax[li], amax[ai]))
                    .collect();
                let has_22 =
                    pairs.iter().any(|&(lc, ac)| l2c[lc].len() == 2 && apc[ac].len() == 2);
                if !has_22 || attempt > 64 {
                    let pairs = if has_22 {
                        pairs
                            .into_iter()
                            .filter(|&(lc, ac)| l2c[lc].len() != 2 || apc[ac].len() != 2)
                            .collect()
                    } else {
                        pairs
                    };
                    break (l2c, apc, pairs);
                }
            }
        }
        ConfigurationGroup::A2ZeroA3One => {
            // Liaison comes in adjacent batteries of two 1-1 pairs, which
            // satisfies the neighbor-pairing condition literally. Chords
            // live in the gaps between batteries.
            let max_batteries = (spec.m / 2).min(spec.k / 2);
            let t = if max_batteries == 0 { 0 } else { rng.gen_range(0..=max_batteries) };
            let l_starts = battery_starts(&mut rng, spec.m, t);
            let a_starts = battery_starts(&mut rng, spec.k, t);
            let l_battery: Vec<usize> = l_starts.iter().flat_map(|&s| [s, s + 1]).collect();
            let a_battery: Vec<usize> = a_starts.iter().flat_map(|&s| [s, s + 1]).collect();
            let cap_l = segment_capacity(spec.m, &l_battery);
            let p_l2 = match spec.pairs_l2 {
                Some(p) => p,
                None => {
                    if cap_l == 0 {
                        0
                    } else {
                        rng.gen_range(0..=cap_l)
                    }
                }
            };
            let cap_a = segment_capacity(spec.k, &a_battery);
            let p_ap = match spec.pairs_aplus {
                Some(p) => p,
                None => {
                    if cap_a == 0 {
                        0
                    } else {
                        rng.gen_range(0..=cap_a)
                    }
                }
            };
            let l2c = segmented_classes(&mut rng, spec.m, &l_battery, p_l2)?;
            let apc = segmented_classes(&mut rng, spec.k, &a_battery, p_ap)?;
            let class_of = |classes: &Classes, pt: usize| -> usize {
                classes.iter().position(|b| b.contains(&pt)).unwrap()
            };
            let mut pairs = Vec::new();
            for (bs, as_) in l_starts.iter().zip(a_starts.iter()) {
                pairs.push((class_of(&l2c, *bs), class_of(&apc, *as_)));
                pairs.push((class_of(&l2c, bs + 1), class_of(&apc, as_ + 1)));
            }
            (l2c, apc, pairs)
        }
    };

    let l2 = interval_set(canonical_l2_values(spec.m), l2_classes);
    let a_plus = circle_set(canonical_aplus_values(spec.k), ap_classes);
    let data =
        CharacteristicData::new(spec.config, l1, l2, a_plus, a_minus, Liaison { pairs })
            .expect("generated data satisfies the structural invariants");
    debug_assert!(
        {
            let ord = partial_order_leq(&data.l2, None).unwrap();
            data.liaison.pairs.iter().all(|&(lc, _)| ord.maximal_classes().contains(&lc))
        },
        "liaison classes are maximal by construction"
    );
    Ok(data)
}

/// `t` sorted distinct values in `0..c`.
fn sorted_sample(rng: &mut ChaCha8Rng, c: usize, t: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..c).collect();
    all.shuffle(rng);
    let mut picked: Vec<usize> = all.into_iter().take(t).collect();
    picked.sort_unstable();
    picked
}

/// `t` non-overlapping battery start positions in `0..c` (each battery
/// occupies two consecutive positions).
fn battery_starts(rng: &mut ChaCha8Rng, c: usize, t: usize) -> Vec<usize> {
    let slack = c - 2 * t;
    // Split the slack into t+1 gaps.
    let mut cuts: Vec<usize> = (0..t).map(|_| rng.gen_range(0..=slack)).collect();
    cuts.sort_unstable();
    let mut starts = Vec::with_capacity(t);
    let mut pos = 0;
    let mut prev = 0;
    for &cut in &cuts {
        pos += cut - prev;
        starts.push(pos);
        pos += 2;
        prev = cut;
    }
    starts
}

fn free_segments(c: usize, reserved: &[usize]) -> Vec<Vec<usize>> {
    let mut segments: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for pos in 0..c {
        if reserved.contains(&pos) {
            if !current.is_empty() {
                segments.push(std::mem::take(&mut current));
            }
        } else {
            current.push(pos);
        }
    }
    if !current.is_empty() {
        segments.push(current);
    }
    segments
}

/// How many chords fit outside the reserved positions.
fn segment_capacity(c: usize, reserved: &[usize]) -> usize {
    free_segments(c, reserved).iter().map(|s| s.len() / 2).sum()
}

/// Non-crossing classes over `0..c` where the `reserved` positions must be
/// one-element classes outside every chord: chords are drawn inside the
/// maximal reserved-free segments.
fn segmented_classes(
    rng: &mut ChaCha8Rng,
    c: usize,
    reserved: &[usize],
    pairs: usize,
) -> Result<Classes, GenError> {
    let segments = free_segments(c, reserved);
    let capacity: usize = segments.iter().map(|s| s.len() / 2).sum();
    if pairs > capacity {
        return Err(GenError::Infeasible(format!(
            "{pairs} two-element classes do not fit around the liaison batteries"
        )));
    }
    let mut remaining = pairs;
    let mut per_segment = vec![0usize; segments.len()];
    while remaining > 0 {
        let candidates: Vec<usize> = (0..segments.len())
            .filter(|&i| per_segment[i] < segments[i].len() / 2)
            .collect();
        let i = candidates[rng.gen_range(0..candidates.len())];
        per_segment[i] += 1;
        remaining -= 1;
    }
    let mut classes: Classes = Vec::new();
    for (seg, &p) in segments.iter().zip(per_segment.iter()) {
        for block in noncrossing_classes(rng, seg.len(), p) {
            classes.push(block.into_iter().map(|local| seg[local]).collect());
        }
    }
    for &pos in reserved {
        classes.push(vec![pos]);
    }
    classes.sort_by_key(|b| *b.iter().min().unwrap());
    Ok(classes)
}
