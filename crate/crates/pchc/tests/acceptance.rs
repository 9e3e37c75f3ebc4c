//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its elapsed time. Run with
//! `cargo test -p pchc --test acceptance -- --nocapture`.

use pchc::config::{enumerate_configurations, validate_configuration};
use pchc::dynamics::{
    enumerate_sparkling, model_tau_closed_form, reindex_under_basepoint_shift, solve_connection,
    tau, BasePointShift, SaddleNodeMapFamily,
};
use pchc::equiv::{circle_pair_equivalent, combinatorially_equivalent};
use pchc::generate::{generate, GenSpec};
use pchc::marked::{
    delta_set, non_synchronized, CirclePoint, MarkedCircleSet,
};
use pchc::rational::{mod1, rat, Rat};
use pchc::realization::realize;
use pchc::skeleton::{
    compute_elbs, compute_lbs, extract_characteristic_data, extract_configuration,
    face_walks, validate_skeleton,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn pass(criterion: u32, name: &str, started: Instant) {
    println!(
        "criterion {criterion:2} ({name}): PASS in {:.2?}",
        started.elapsed()
    );
}

/// All rationals in [0, 1) with denominator at most `max_den`.
fn unit_grid(max_den: i64) -> Vec<Rat> {
    let mut values: Vec<Rat> = Vec::new();
    for den in 1..=max_den {
        for num in 0..den {
            let v = rat(num, den);
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    values.sort();
    values
}

fn random_circle_set(rng: &mut ChaCha8Rng, grid: &[Rat], max_points: usize) -> MarkedCircleSet {
    let count = rng.gen_range(0..=max_points);
    let mut picked: Vec<usize> = (0..grid.len()).collect();
    picked.shuffle(rng);
    let mut idx: Vec<usize> = picked.into_iter().take(count).collect();
    idx.sort_unstable();
    let points: Vec<CirclePoint> =
        idx.iter().map(|&i| CirclePoint::new(grid[i].clone()).unwrap()).collect();
    let classes = (0..points.len()).map(|i| vec![i]).collect();
    MarkedCircleSet::new(points, classes).unwrap()
}

#[test]
fn criterion_1_configuration_admissibility() {
    let started = Instant::now();
    let mut accepted = Vec::new();
    for bits in 0..8u8 {
        let word: String =
            (0..3).map(|i| if bits & (1 << (2 - i)) != 0 { '1' } else { '0' }).collect();
        if validate_configuration(&word).is_ok() {
            accepted.push(word);
        }
    }
    assert_eq!(accepted.len(), 6, "exactly six admissible words");
    assert!(!accepted.contains(&"110".to_string()));
    assert!(!accepted.contains(&"010".to_string()));
    assert_eq!(enumerate_configurations().len(), 6);
    pass(1, "configuration admissibility", started);
}

#[test]
fn criterion_2_non_synchronization_vs_shift_oracle() {
    let started = Instant::now();
    let grid = unit_grid(12);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases = 10_000;
    for case in 0..cases {
        let a_plus = random_circle_set(&mut rng, &grid, 4);
        let a_minus = random_circle_set(&mut rng, &grid, 4);
        let fast = non_synchronized(&a_plus, &a_minus);
        // Oracle: a shift alpha aligning two or more points must send some
        // plus point onto some minus point, so trying every alpha = d - a
        // is exhaustive.
        let mut oracle_synchronized = false;
        'outer: for a in a_plus.points() {
            for d in a_minus.points() {
                let alpha = mod1(&(d.value() - a.value()));
                let mut hits = 0;
                for p in a_plus.points() {
                    let shifted = mod1(&(p.value() + &alpha));
                    if a_minus.points().iter().any(|q| *q.value() == shifted) {
                        hits += 1;
                    }
                }
                if hits >= 2 {
                    oracle_synchronized = true;
                    break 'outer;
                }
            }
        }
        assert_eq!(
            fast, !oracle_synchronized,
            "case {case}: delta-distinctness disagrees with the shift oracle\n{a_plus:?}\n{a_minus:?}"
        );
    }
    assert!(started.elapsed().as_secs() < 30, "criterion 2 must finish within 30 s");
    pass(2, "non-synchronization vs shift oracle", started);
}

/// Independent decision of circle-pair equivalence: exhaustive search over
/// index rotations and candidate shifts, with its own order comparator.
fn oracle_circle_pair_equivalent(
    a_plus: &MarkedCircleSet,
    a_minus: &MarkedCircleSet,
    b_plus: &MarkedCircleSet,
    b_minus: &MarkedCircleSet,
) -> bool {
    let k = a_plus.len();
    let n = a_minus.len();
    if b_plus.len() != k || b_minus.len() != n {
        return false;
    }
    if k == 0 || n == 0 {
        return true;
    }
    let lam: Vec<Vec<Rat>> = a_plus
        .points()
        .iter()
        .map(|p| a_minus.points().iter().map(|q| mod1(&(p.value() - q.value()))).collect())
        .collect();
    let tau_: Vec<Vec<Rat>> = b_plus
        .points()
        .iter()
        .map(|p| b_minus.points().iter().map(|q| mod1(&(p.value() - q.value()))).collect())
        .collect();
    for rp in 0..k {
        for rm in 0..n {
            // Candidate shifts: alignment values, arc base points, and arc
            // midpoints.
            let mut candidates: Vec<Rat> = Vec::new();
            let mut bases: Vec<Rat> = Vec::new();
            for row in &tau_ {
                for t in row {
                    bases.push(mod1(&(-t)));
                    for lrow in &lam {
                        for l in lrow {
                            candidates.push(mod1(&(l - t)));
                        }
                    }
                }
            }
            bases.sort();
            bases.dedup();
            candidates.extend(bases.iter().cloned());
            for w in 0..bases.len() {
                let a = &bases[w];
                let b = if w + 1 < bases.len() {
                    bases[w + 1].clone()
                } else {
                    bases[0].clone() + rat(1, 1)
                };
                candidates.push(mod1(&((a + &b) / rat(2, 1))));
            }
            for alpha in &candidates {
                let agrees = (0..k).all(|i| {
                    (0..n).all(|j| {
                        (0..k).all(|i2| {
                            (0..n).all(|j2| {
                                if lam[i][j] > lam[i2][j2] {
                                    let t1 =
                                        mod1(&(&tau_[(i + rp) % k][(j + rm) % n] + alpha));
                                    let t2 =
                                        mod1(&(&tau_[(i2 + rp) % k][(j2 + rm) % n] + alpha));
                                    t1 > t2
                                } else {
                                    true
                                }
                            })
                        })
                    })
                });
                if agrees {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn criterion_3_equivalence_decision_vs_oracle() {
    let started = Instant::now();
    let grid = unit_grid(10);
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let cases = 1000;
    let mut equivalent_seen = 0;
    for case in 0..cases {
        let a_plus = random_circle_set(&mut rng, &grid, 3);
        let a_minus = random_circle_set(&mut rng, &grid, 3);
        let (b_plus, b_minus) = if case % 2 == 0 {
            // Rotate by a random grid value: equivalent by construction.
            let alpha = grid[rng.gen_range(0..grid.len())].clone();
            let shift = |s: &MarkedCircleSet| {
                let mut vals: Vec<Rat> =
                    s.points().iter().map(|p| mod1(&(p.value() + &alpha))).collect();
                vals.sort();
                let points: Vec<CirclePoint> =
                    vals.into_iter().map(|v| CirclePoint::new(v).unwrap()).collect();
                let classes = (0..points.len()).map(|i| vec![i]).collect();
                MarkedCircleSet::new(points, classes).unwrap()
            };
            (shift(&a_plus), shift(&a_minus))
        } else {
            (random_circle_set(&mut rng, &grid, 3), random_circle_set(&mut rng, &grid, 3))
        };
        let fast = circle_pair_equivalent(&a_plus, &a_minus, &b_plus, &b_minus).is_some();
        let oracle = oracle_circle_pair_equivalent(&a_plus, &a_minus, &b_plus, &b_minus);
        assert_eq!(
            fast, oracle,
            "case {case}: decision disagrees with exhaustive oracle\nA+ {a_plus:?}\nA- {a_minus:?}\nB+ {b_plus:?}\nB- {b_minus:?}"
        );
        if fast {
            equivalent_seen += 1;
        }
    }
    assert!(equivalent_seen >= cases / 2, "rotated copies must be recognized");
    assert!(started.elapsed().as_secs() < 60, "criterion 3 must finish within 60 s");
    pass(3, "equivalence decision vs oracle", started);
}

#[test]
fn criteria_4_5_11_realization_round_trip() {
    let started = Instant::now();
    let per_config = 50;
    let mut total = 0;
    for config in enumerate_configurations() {
        for seed in 0..per_config {
            let sizes =
                [(1, 1, 1, 1), (2, 2, 2, 2), (3, 2, 1, 3), (4, 3, 3, 4), (2, 4, 4, 2)];
            let (k, n, l, m) = sizes[(seed % sizes.len() as u64) as usize];
            let data = generate(&GenSpec::new(config, k, n, l, m, 1000 + seed))
                .expect("feasible generator spec");
            let graph = realize(&data).unwrap_or_else(|e| {
                panic!("config {config} seed {seed}: realize failed: {e}")
            });

            // Criterion 5: validity (vertex degrees, flow, planarity).
            let (ok, violations) = validate_skeleton(&graph);
            assert!(ok, "config {config} seed {seed}: {violations:?}");
            let report = face_walks(&graph);
            assert!(
                report.component_euler.iter().all(|&e| e == 2),
                "every component must be planar"
            );

            // Criterion 4: the round trip reproduces the datum.
            assert_eq!(extract_configuration(&graph).unwrap(), config);
            let back = extract_characteristic_data(&graph).unwrap();
            assert!(
                combinatorially_equivalent(&data, &back),
                "config {config} seed {seed}: round trip lost the combinatorial class"
            );

            // Criterion 11: LBS = ELBS and beta1 membership tracks a2.
            let elbs = compute_elbs(&graph);
            assert_eq!(elbs, compute_lbs(&graph));
            assert_eq!(elbs.contains_edge(graph.designated.beta1), config.a2());
            total += 1;
        }
    }
    assert_eq!(total, 300);
    assert!(started.elapsed().as_secs() < 120, "criterion 4 must finish within 2 min");
    pass(4, "realization round trip (300 instances)", started);
    pass(5, "skeleton validity within the round-trip run", started);
    pass(11, "LBS = ELBS and beta1 gating within the round-trip run", started);
}

#[test]
fn criterion_6_sparkling_monotonicity_and_block_order() {
    let started = Instant::now();
    let config = validate_configuration("000").unwrap();
    let mut spec = GenSpec::new(config, 2, 2, 0, 2, 6);
    spec.pairs_aplus = Some(0);
    spec.pairs_aminus = Some(0);
    let data = generate(&spec).expect("k = 2, n = 2 datum");
    let family = SaddleNodeMapFamily::model();
    let events = enumerate_sparkling(&family, &data, 0.0, 30, 130).expect("enumeration");
    assert_eq!(events.len(), 101 * 4);

    // Roots are self-consistent to 1e-9 and strictly decreasing in m for
    // each index pair.
    for pair_i in 1..=2usize {
        for pair_j in 1..=2usize {
            let mut eps_prev = f64::INFINITY;
            for m in 30..=130 {
                let e = events
                    .iter()
                    .find(|e| e.m == m && e.i == pair_i && e.j == pair_j)
                    .expect("event exists");
                assert!(e.epsilon < eps_prev, "eps_(m+1) < eps_m violated at m={m}");
                eps_prev = e.epsilon;
                let t = tau(&family, e.epsilon, 0.0).unwrap();
                let target = {
                    let di = &data.a_plus.points()[pair_i - 1];
                    let dj = &data.a_minus.points()[pair_j - 1];
                    pchc::rational::to_f64(&mod1(&(di.value() - dj.value()))) + m as f64
                };
                assert!((t - target).abs() <= 1e-9 * target, "root self-consistency");
            }
        }
    }

    // Within each m-block the (i, j) order equals the delta-set order.
    let delta_order: Vec<(usize, usize)> =
        delta_set(&data.a_plus, &data.a_minus).iter().map(|e| (e.i, e.j)).collect();
    for m in 30..=130 {
        let block: Vec<(usize, usize)> = events
            .iter()
            .filter(|e| e.m == m)
            .map(|e| (e.i, e.j))
            .rev() // events are sorted by descending eps; ascending eps = ascending delta
            .collect();
        let ascending_eps: Vec<(usize, usize)> = block.into_iter().collect();
        // Reverse once more: within a block, descending eps = ascending
        // target = ascending delta, so the stored order matches directly.
        let stored: Vec<(usize, usize)> =
            events.iter().filter(|e| e.m == m).map(|e| (e.i, e.j)).collect();
        assert_eq!(stored, delta_order, "m-block {m} order mismatch");
        let _ = ascending_eps;
    }
    assert!(started.elapsed().as_secs() < 10);
    pass(6, "sparkling monotonicity and block order", started);
}

#[test]
fn criterion_7_model_family_closed_form() {
    let started = Instant::now();
    let family = SaddleNodeMapFamily::model();
    let eps = 0.01;
    let t = tau(&family, eps, 0.0).unwrap();
    let closed = model_tau_closed_form(eps);
    assert!(
        ((t - closed) / closed).abs() < 1e-6,
        "tau(0.01) = {t} vs closed form {closed}"
    );
    let m = 1000;
    let delta = 0.3;
    let root = solve_connection(&family, delta, m, 0.0).unwrap();
    let val = root * (delta + m as f64).powi(2);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!(((val - pi2) / pi2).abs() < 0.01, "eps (delta+m)^2 = {val} vs pi^2 = {pi2}");
    assert!(started.elapsed().as_secs() < 5);
    pass(7, "model-family closed form", started);
}

#[test]
fn criterion_8_reindexing_under_iterate_shift() {
    let started = Instant::now();
    let config = validate_configuration("000").unwrap();
    let data = generate(&GenSpec::new(config, 1, 1, 0, 1, 3)).unwrap();
    let family = SaddleNodeMapFamily::model();
    // Plus base moved one iterate forward: the same roots appear one
    // winding index earlier.
    let m_plus = reindex_under_basepoint_shift(
        &family,
        &data,
        0.0,
        BasePointShift::Iterates { s_minus: 0, s_plus: 1 },
        30,
        60,
    )
    .unwrap();
    assert_eq!(m_plus, -1);
    // Minus base moved one iterate forward compensates the other way.
    let m_minus = reindex_under_basepoint_shift(
        &family,
        &data,
        0.0,
        BasePointShift::Iterates { s_minus: 1, s_plus: 0 },
        30,
        60,
    )
    .unwrap();
    assert_eq!(m_minus, 1);
    assert!(started.elapsed().as_secs() < 10);
    pass(8, "reindexing under base-point iterate shifts", started);
}

#[test]
fn criterion_9_diagram_structure() {
    let started = Instant::now();
    use pchc::diagram::build_simple_diagram;

    let config = validate_configuration("111").unwrap();
    let mut spec = GenSpec::new(config, 2, 3, 0, 0, 4);
    spec.pairs_aplus = Some(0);
    spec.pairs_aminus = Some(0);
    let data = generate(&spec).unwrap();
    let diagram = build_simple_diagram(&data, 2, None).unwrap();
    assert_eq!(diagram.period, 9, "a2 = 1, k = 2, n = 3: period n(k+1) = 9");
    for block in 0..2 {
        let slice = &diagram.vertices[block * 9..(block + 1) * 9];
        assert_eq!(slice.iter().filter(|v| v.degree == 3).count(), 3);
        assert_eq!(slice.iter().filter(|v| v.degree == 4).count(), 6);
    }

    let config = validate_configuration("100").unwrap();
    let data = generate(&GenSpec::new(config, 5, 1, 0, 0, 4)).unwrap();
    let diagram = build_simple_diagram(&data, 2, None).unwrap();
    assert_eq!(diagram.period, 5, "a2 = 0, k = 5, n = 1: period n k = 5");
    assert!(diagram.vertices.iter().all(|v| v.degree == 4));
    assert!(started.elapsed().as_secs() < 1);
    pass(9, "diagram period and degree structure", started);
}

#[test]
fn criterion_10_beta1_gating_in_lambda() {
    let started = Instant::now();
    let config = validate_configuration("011").unwrap();
    let mut spec = GenSpec::new(config, 2, 1, 0, 1, 8);
    spec.pairs_aplus = Some(0);
    let data = generate(&spec).unwrap();
    let family = SaddleNodeMapFamily::model();
    let k = data.a_plus.len();

    let with_beta = enumerate_sparkling(&family, &data, -1e-3, 30, 35).unwrap();
    assert!(
        with_beta.iter().any(|e| e.i == k + 1),
        "i = k+1 events present at lambda = -1e-3"
    );
    let without_beta = enumerate_sparkling(&family, &data, 1e-3, 30, 35).unwrap();
    assert!(
        without_beta.iter().all(|e| e.i <= k),
        "i = k+1 events absent at lambda = +1e-3"
    );
    assert!(started.elapsed().as_secs() < 5);
    pass(10, "beta1 event gating across lambda = 0", started);
}
