//! Realization round trips: every generated realizable datum must produce
//! a valid planar skeleton whose extraction is equivalent to the input at
//! the combinatorial layer.

use pchc::config::{enumerate_configurations, validate_configuration};
use pchc::equiv::combinatorially_equivalent;
use pchc::generate::{generate, GenSpec};
use pchc::realization::realize;
use pchc::skeleton::{
    compute_elbs, compute_lbs, extract_characteristic_data, extract_configuration,
    validate_skeleton,
};

#[test]
fn empty_data_realizes_for_every_configuration() {
    for config in enumerate_configurations() {
        let d = pchc::characteristic::CharacteristicData::empty(config);
        let g = realize(&d).unwrap_or_else(|e| panic!("config {config}: {e}"));
        let (ok, violations) = validate_skeleton(&g);
        assert!(ok, "config {config}: {violations:?}");
        let cfg = extract_configuration(&g).unwrap();
        assert_eq!(cfg, config);
        let back = extract_characteristic_data(&g).unwrap();
        assert!(combinatorially_equivalent(&d, &back), "config {config}");
    }
}

#[test]
fn generated_data_round_trips() {
    let mut checked = 0;
    for config in enumerate_configurations() {
        for seed in 0..60u64 {
            let sizes = [
                (0, 1, 0, 0),
                (1, 1, 1, 1),
                (2, 2, 2, 2),
                (3, 2, 2, 3),
                (4, 3, 3, 4),
                (6, 5, 4, 6),
            ];
            let (k, n, l, m) = sizes[(seed % 6) as usize];
            let d = generate(&GenSpec::new(config, k, n, l, m, seed)).expect("feasible");
            let g = match realize(&d) {
                Ok(g) => g,
                Err(e) => panic!("config {config} seed {seed} k{k} n{n} l{l} m{m}: {e}\n{d:#?}"),
            };
            let (ok, violations) = validate_skeleton(&g);
            assert!(
                ok,
                "config {config} seed {seed} k{k} n{n} l{l} m{m}: {violations:?}\n{d:#?}"
            );
            assert_eq!(extract_configuration(&g).unwrap(), config);
            let back = extract_characteristic_data(&g).unwrap();
            assert!(
                combinatorially_equivalent(&d, &back),
                "config {config} seed {seed}:\nin  = {d:#?}\nout = {back:#?}"
            );
            // Support invariants ride along: identical operations, and
            // beta1 membership tracks a2.
            let elbs = compute_elbs(&g);
            assert_eq!(elbs, compute_lbs(&g));
            assert_eq!(elbs.contains_edge(g.designated.beta1), config.a2());
            checked += 1;
        }
    }
    assert_eq!(checked, 360);
}

#[test]
fn liaison_instances_round_trip_with_pairs_preserved() {
    // A hand-picked instance with every liaison flavor for group a2=1:
    // a 2-1 liaison, a 1-2 liaison, and a 1-1 corner.
    use pchc::characteristic::{CharacteristicData, Liaison};
    use pchc::marked::{CirclePoint, IntervalPoint, MarkedCircleSet, MarkedIntervalSet};
    use pchc::rational::rat;
    let config = validate_configuration("111").unwrap();
    let ip = |n: i64, d: i64| IntervalPoint::new(rat(n, d)).unwrap();
    let cp = |n: i64, d: i64| CirclePoint::new(rat(n, d)).unwrap();
    // L2: points b0 b1 b2 b3; classes {b0,b1} pair, {b2}, {b3}.
    let l2 = MarkedIntervalSet::new(
        vec![ip(1, 5), ip(2, 5), ip(3, 5), ip(4, 5)],
        vec![vec![0, 1], vec![2], vec![3]],
    )
    .unwrap();
    // A+: points c0..c3; classes {c0}, {c1, c2} pair, {c3}.
    let a_plus = MarkedCircleSet::new(
        vec![cp(1, 5), cp(2, 5), cp(3, 5), cp(4, 5)],
        vec![vec![0], vec![1, 2], vec![3]],
    )
    .unwrap();
    let a_minus = MarkedCircleSet::new(vec![cp(1, 7)], vec![vec![0]]).unwrap();
    // Liaison: L2 pair {b0,b1} ~ singleton {c0}; singleton {b2} ~ pair
    // {c1,c2}; singleton {b3} ~ singleton {c3}. Monotone w.r.t. the
    // wraparound gap.
    let liaison = Liaison { pairs: vec![(0, 0), (1, 1), (2, 2)] };
    let d = CharacteristicData::new(
        config,
        MarkedIntervalSet::empty(),
        l2,
        a_plus,
        a_minus,
        liaison,
    )
    .unwrap();
    let g = realize(&d).expect("realizable");
    let (ok, violations) = validate_skeleton(&g);
    assert!(ok, "{violations:?}");
    let back = extract_characteristic_data(&g).unwrap();
    assert!(combinatorially_equivalent(&d, &back), "out = {back:#?}");
    assert_eq!(back.liaison.pairs.len(), 3);
}

#[test]
fn corner_saddle_sits_on_the_liaison_curve() {
    // A wide annulus instance: five arrival points, seven winding points,
    // with a single liaison pairing the second arrival to the last
    // winding point. The realization must put one saddle on the curve
    // joining them: an edge from the cycle's outer side into a saddle and
    // an edge from that saddle into the saddle-node arrival slot.
    use pchc::characteristic::{CharacteristicData, Liaison};
    use pchc::marked::{CirclePoint, IntervalPoint, MarkedCircleSet, MarkedIntervalSet};
    use pchc::rational::rat;
    use pchc::skeleton::{Attach, EndKind, Side, VertexKind};

    let config = validate_configuration("111").unwrap();
    let ip = |n: i64, d: i64| IntervalPoint::new(rat(n, d)).unwrap();
    let cp = |n: i64, d: i64| CirclePoint::new(rat(n, d)).unwrap();
    let l2 = MarkedIntervalSet::new(
        (1..=5).map(|i| ip(i, 6)).collect(),
        (0..5).map(|i| vec![i]).collect(),
    )
    .unwrap();
    let a_plus = MarkedCircleSet::new(
        (1..=7).map(|i| cp(i, 8)).collect(),
        (0..7).map(|i| vec![i]).collect(),
    )
    .unwrap();
    // Liaison: arrival index 1 (second point) with winding index 6 (the
    // seventh point).
    let data = CharacteristicData::new(
        config,
        MarkedIntervalSet::empty(),
        l2,
        a_plus,
        MarkedCircleSet::empty(),
        Liaison { pairs: vec![(1, 6)] },
    )
    .unwrap();
    let g = realize(&data).expect("realizable");
    let (ok, violations) = validate_skeleton(&g);
    assert!(ok, "{violations:?}");

    // Find the saddle fed from the cycle that feeds the saddle-node.
    let n_id = g.designated.saddle_node;
    let corner = g
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VertexKind::Saddle)
        .find(|(vid, _)| {
            let rot = &g.vertex_rotation[*vid];
            let from_gamma = rot.iter().any(|e| {
                e.end == EndKind::Target
                    && matches!(
                        g.edges[e.edge.0].source,
                        Attach::Cycle { side: Side::Outer, .. }
                    )
            });
            let to_n = rot.iter().any(|e| {
                e.end == EndKind::Source && g.edges[e.edge.0].target == Attach::Vertex(n_id)
            });
            from_gamma && to_n
        });
    assert!(corner.is_some(), "liaison corner saddle exists");

    // The liaison curve's ends sit at the right slots: the winding end is
    // the seventh attachment on the outer side, the arrival end the
    // second slot of the saddle-node fan.
    let (corner_id, _) = corner.unwrap();
    let rot = &g.vertex_rotation[corner_id];
    let gamma_edge = rot
        .iter()
        .find(|e| {
            matches!(g.edges[e.edge.0].source, Attach::Cycle { side: Side::Outer, .. })
        })
        .unwrap();
    let outer = &g.cycle_rotation[g.designated.parabolic_cycle.0].outer;
    // Outer list: 7 winding points plus beta1's attachment at the cut.
    assert_eq!(outer.len(), 8);
    let pos = outer
        .iter()
        .position(|e| e.edge == gamma_edge.edge)
        .expect("winding end attached on the outer side");
    // beta1 occupies slot 0 (it attaches in the wraparound gap), so the
    // seventh winding point is the eighth attachment.
    assert_eq!(pos, 7, "the liaison winds at the seventh point");
    assert_eq!(outer[0].edge, g.designated.beta1);

    let back = extract_characteristic_data(&g).unwrap();
    assert_eq!(back.liaison.pairs, vec![(1, 6)]);
    assert!(combinatorially_equivalent(&data, &back));
}
