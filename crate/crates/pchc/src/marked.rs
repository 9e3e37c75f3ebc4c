//! Marked point sets on an interval and on a circle.
//!
//! A marked set is a finite point set partitioned into equivalence classes
//! of one or two points. A two-point class records that the two crossings
//! come from the same saddle, so distinct two-point classes may never
//! interleave: the chords (arcs, intervals) they span must be nested or
//! disjoint. All coordinates are exact rationals.

use crate::rational::{mod1, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point on the time-chart circle: rational coordinate in `[0, 1)`,
/// interpreted modulo 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rat);

/// A point on the arrival transversal: rational coordinate in `(-1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalPoint(Rat);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointError {
    #[error("circle coordinate {0} outside [0, 1)")]
    CircleRange(String),
    #[error("interval coordinate {0} outside (-1, 1)")]
    IntervalRange(String),
}

impl CirclePoint {
    pub fn new(value: Rat) -> Result<Self, PointError> {
        if value < Rat::zero() || value >= Rat::from_integer(1.into()) {
            return Err(PointError::CircleRange(crate::rational::format_rational(&value)));
        }
        Ok(CirclePoint(value))
    }

    /// Wrap an arbitrary rational into `[0, 1)`.
    pub fn wrapping(value: &Rat) -> Self {
        CirclePoint(mod1(value))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl IntervalPoint {
    pub fn new(value: Rat) -> Result<Self, PointError> {
        let one = Rat::from_integer(1.into());
        if value <= -one.clone() || value >= one {
            return Err(PointError::IntervalRange(crate::rational::format_rational(&value)));
        }
        Ok(IntervalPoint(value))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_rat::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = crate::rational::serde_rat::deserialize(de)?;
        CirclePoint::new(v).map_err(serde::de::Error::custom)
    }
}

impl Serialize for IntervalPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_rat::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for IntervalPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = crate::rational::serde_rat::deserialize(de)?;
        IntervalPoint::new(v).map_err(serde::de::Error::custom)
    }
}

/// Partition blocks, each holding one or two point indices.
pub type Classes = Vec<Vec<usize>>;

/// Structural problems reported by [`validate_marked`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkedViolation {
    /// A block has zero or more than two members.
    BlockSize { class: usize, size: usize },
    /// A point index occurs in no block or in more than one.
    NotAPartition { index: usize },
    /// A block references an out-of-range point index.
    IndexOutOfRange { class: usize, index: usize },
    /// Two two-element blocks interleave.
    Interleaving { first: usize, second: usize },
    /// Points are not strictly increasing (interval sets) or not pairwise
    /// distinct (circle sets).
    PointsNotOrdered,
}

impl fmt::Display for MarkedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedViolation::BlockSize { class, size } => {
                write!(f, "class {class} has {size} members; classes hold 1 or 2 points")
            }
            MarkedViolation::NotAPartition { index } => {
                write!(f, "point {index} is not covered exactly once by the classes")
            }
            MarkedViolation::IndexOutOfRange { class, index } => {
                write!(f, "class {class} references point index {index} out of range")
            }
            MarkedViolation::Interleaving { first, second } => {
                write!(f, "classes {first} and {second} interleave")
            }
            MarkedViolation::PointsNotOrdered => {
                write!(f, "points must be strictly increasing and pairwise distinct")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MarkedSetError {
    #[error("{0}")]
    Point(#[from] PointError),
    #[error("marked set is structurally invalid: {0}")]
    Structure(MarkedViolation),
}

/// A marked set on the interval. Points are stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedIntervalSet {
    points: Vec<IntervalPoint>,
    classes: Classes,
}

/// A marked set on the circle. Points are stored strictly increasing
/// within `[0, 1)`; the order is the cyclic order starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedCircleSet {
    points: Vec<CirclePoint>,
    classes: Classes,
}

fn check_structure(
    n_points: usize,
    sorted_strict: bool,
    classes: &Classes,
) -> Result<(), MarkedSetError> {
    use MarkedViolation::*;
    if !sorted_strict {
        return Err(MarkedSetError::Structure(PointsNotOrdered));
    }
    let mut seen = vec![0usize; n_points];
    for (ci, block) in classes.iter().enumerate() {
        if block.is_empty() || block.len() > 2 {
            return Err(MarkedSetError::Structure(BlockSize { class: ci, size: block.len() }));
        }
        for &i in block {
            if i >= n_points {
                return Err(MarkedSetError::Structure(IndexOutOfRange { class: ci, index: i }));
            }
            seen[i] += 1;
        }
    }
    if let Some(index) = seen.iter().position(|&c| c != 1) {
        return Err(MarkedSetError::Structure(NotAPartition { index }));
    }
    Ok(())
}

impl MarkedIntervalSet {
    /// Build from strictly increasing points and a class partition.
    /// Interleaving of two-element classes is *not* rejected here; it is
    /// reported by [`validate_marked`] so that invalid markings can be
    /// diagnosed rather than made unrepresentable.
    pub fn new(points: Vec<IntervalPoint>, classes: Classes) -> Result<Self, MarkedSetError> {
        let sorted = points.windows(2).all(|w| w[0] < w[1]);
        check_structure(points.len(), sorted, &classes)?;
        Ok(MarkedIntervalSet { points, classes })
    }

    pub fn empty() -> Self {
        MarkedIntervalSet { points: vec![], classes: vec![] }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IntervalPoint] {
        &self.points
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    /// The class index containing point `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|b| b.contains(&i)).expect("partition covers all points")
    }

    /// Class sizes in point order: `sizes[i] = |class_of(i)|`.
    pub fn two_element_classes(&self) -> Vec<&Vec<usize>> {
        self.classes.iter().filter(|b| b.len() == 2).collect()
    }
}

impl MarkedCircleSet {
    /// Build from strictly increasing points in `[0, 1)` and a partition.
    pub fn new(points: Vec<CirclePoint>, classes: Classes) -> Result<Self, MarkedSetError> {
        let sorted = points.windows(2).all(|w| w[0] < w[1]);
        check_structure(points.len(), sorted, &classes)?;
        Ok(MarkedCircleSet { points, classes })
    }

    pub fn empty() -> Self {
        MarkedCircleSet { points: vec![], classes: vec![] }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|b| b.contains(&i)).expect("partition covers all points")
    }

    pub fn two_element_classes(&self) -> Vec<&Vec<usize>> {
        self.classes.iter().filter(|b| b.len() == 2).collect()
    }
}

/// Is `x` strictly inside the ccw arc from `a` to `b` (excluding endpoints)?
fn in_open_arc(x: &Rat, a: &Rat, b: &Rat) -> bool {
    let dx = mod1(&(x - a));
    let db = mod1(&(b - a));
    !dx.is_zero() && dx < db
}

/// Do the chords `{a0, a1}` and `{b0, b1}` cross?
fn chords_cross(a0: &Rat, a1: &Rat, b0: &Rat, b1: &Rat) -> bool {
    let b0_in = in_open_arc(b0, a0, a1);
    let b1_in = in_open_arc(b1, a0, a1);
    b0_in != b1_in
}

/// Either flavor of marked set, for operations generic over both.
pub enum MarkedSetRef<'a> {
    Interval(&'a MarkedIntervalSet),
    Circle(&'a MarkedCircleSet),
}

impl<'a> From<&'a MarkedIntervalSet> for MarkedSetRef<'a> {
    fn from(s: &'a MarkedIntervalSet) -> Self {
        MarkedSetRef::Interval(s)
    }
}

impl<'a> From<&'a MarkedCircleSet> for MarkedSetRef<'a> {
    fn from(s: &'a MarkedCircleSet) -> Self {
        MarkedSetRef::Circle(s)
    }
}

/// Check the non-interleaving invariant. Returns `true` and an empty list
/// when the marking is valid; otherwise each offending class pair is named.
pub fn validate_marked<'a>(set: impl Into<MarkedSetRef<'a>>) -> (bool, Vec<MarkedViolation>) {
    let set = set.into();
    let mut violations = Vec::new();
    match set {
        MarkedSetRef::Interval(s) => {
            let two: Vec<(usize, &Rat, &Rat)> = s
                .classes
                .iter()
                .enumerate()
                .filter(|(_, b)| b.len() == 2)
                .map(|(ci, b)| {
                    let (lo, hi) = (b[0].min(b[1]), b[0].max(b[1]));
                    (ci, s.points[lo].value(), s.points[hi].value())
                })
                .collect();
            for i in 0..two.len() {
                for j in (i + 1)..two.len() {
                    let (ci, a0, a1) = two[i];
                    let (cj, b0, b1) = two[j];
                    // Nested or disjoint intervals are fine.
                    let nested = (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1);
                    let disjoint = a1 < b0 || b1 < a0;
                    if !(nested || disjoint) {
                        violations.push(MarkedViolation::Interleaving { first: ci, second: cj });
                    }
                }
            }
        }
        MarkedSetRef::Circle(s) => {
            let two: Vec<(usize, &Rat, &Rat)> = s
                .classes
                .iter()
                .enumerate()
                .filter(|(_, b)| b.len() == 2)
                .map(|(ci, b)| (ci, s.points[b[0]].value(), s.points[b[1]].value()))
                .collect();
            for i in 0..two.len() {
                for j in (i + 1)..two.len() {
                    let (ci, a0, a1) = two[i];
                    let (cj, b0, b1) = two[j];
                    if chords_cross(a0, a1, b0, b1) {
                        violations.push(MarkedViolation::Interleaving { first: ci, second: cj });
                    }
                }
            }
        }
    }
    (violations.is_empty(), violations)
}

/// One entry of the difference set: the value `a_plus[i] - a_minus[j] mod 1`
/// together with its 1-based index pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaEntry {
    pub value: CirclePoint,
    pub i: usize,
    pub j: usize,
}

/// All `|A+| * |A-|` pairwise differences mod 1, sorted ascending by value
/// (ties broken by index pair). Duplicates are retained: a repeated value
/// certifies synchronization.
pub fn delta_set(a_plus: &MarkedCircleSet, a_minus: &MarkedCircleSet) -> Vec<DeltaEntry> {
    let mut out = Vec::with_capacity(a_plus.len() * a_minus.len());
    for (i, p) in a_plus.points().iter().enumerate() {
        for (j, m) in a_minus.points().iter().enumerate() {
            let value = CirclePoint::wrapping(&(p.value() - m.value()));
            out.push(DeltaEntry { value, i: i + 1, j: j + 1 });
        }
    }
    out.sort_by(|a, b| (&a.value, a.i, a.j).cmp(&(&b.value, b.i, b.j)));
    out
}

/// The Malta-Palis condition: no shift of `A+` meets `A-` in two or more
/// points. Decided exactly: it holds iff all pairwise differences mod 1
/// are distinct.
pub fn non_synchronized(a_plus: &MarkedCircleSet, a_minus: &MarkedCircleSet) -> bool {
    let d = delta_set(a_plus, a_minus);
    d.windows(2).all(|w| w[0].value != w[1].value)
}

/// Containment order on the classes of a marked set.
///
/// For interval sets, class `X <= Y` iff the closed interval spanned by `X`
/// lies inside the one spanned by `Y` (a one-point class spans a degenerate
/// interval, so one-point classes are always minimal). For circle sets a
/// basepoint `p` not in the set is required; each two-point class spans the
/// arc avoiding `p`.
#[derive(Debug, Clone)]
pub struct NestingOrder {
    /// `leq[i][j]` iff class `i` is contained in class `j`. Reflexive.
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("basepoint collision: {0} is a point of the set")]
    BasepointCollision(String),
    #[error("circle sets require a basepoint")]
    MissingBasepoint,
}

impl NestingOrder {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// Classes contained in no other class.
    pub fn maximal_classes(&self) -> Vec<usize> {
        let n = self.leq.len();
        (0..n)
            .filter(|&i| (0..n).all(|j| j == i || !self.leq[i][j]))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }
}

/// Span of each class as a closed interval `[lo, hi]` in a linear coordinate.
fn interval_spans(s: &MarkedIntervalSet) -> Vec<(Rat, Rat)> {
    s.classes
        .iter()
        .map(|b| {
            let vals: Vec<&Rat> = b.iter().map(|&i| s.points[i].value()).collect();
            let lo = vals.iter().min().unwrap();
            let hi = vals.iter().max().unwrap();
            ((*lo).clone(), (*hi).clone())
        })
        .collect()
}

fn order_from_spans(spans: &[(Rat, Rat)], sizes: &[usize]) -> NestingOrder {
    let n = spans.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                leq[i][j] = true;
                continue;
            }
            // Strict containment of spans; a two-point class never sits
            // inside a one-point class.
            if sizes[j] == 2 {
                let (ref alo, ref ahi) = spans[i];
                let (ref blo, ref bhi) = spans[j];
                leq[i][j] = blo < alo && ahi < bhi;
            }
        }
    }
    NestingOrder { leq }
}

/// Containment order between classes (see [`NestingOrder`]).
pub fn partial_order_leq<'a>(
    set: impl Into<MarkedSetRef<'a>>,
    basepoint: Option<&CirclePoint>,
) -> Result<NestingOrder, OrderError> {
    match set.into() {
        MarkedSetRef::Interval(s) => {
            let spans = interval_spans(s);
            let sizes: Vec<usize> = s.classes.iter().map(|b| b.len()).collect();
            Ok(order_from_spans(&spans, &sizes))
        }
        MarkedSetRef::Circle(s) => {
            let p = basepoint.ok_or(OrderError::MissingBasepoint)?;
            if s.points.iter().any(|x| x == p) {
                return Err(OrderError::BasepointCollision(crate::rational::format_rational(
                    p.value(),
                )));
            }
            // Cut the circle at p: phi_p(x) = (x - p) mod 1 linearizes every
            // arc avoiding p into an interval of (0, 1).
            let spans: Vec<(Rat, Rat)> = s
                .classes
                .iter()
                .map(|b| {
                    let vals: Vec<Rat> =
                        b.iter().map(|&i| mod1(&(s.points[i].value() - p.value()))).collect();
                    let lo = vals.iter().min().unwrap().clone();
                    let hi = vals.iter().max().unwrap().clone();
                    (lo, hi)
                })
                .collect();
            let sizes: Vec<usize> = s.classes.iter().map(|b| b.len()).collect();
            Ok(order_from_spans(&spans, &sizes))
        }
    }
}

/// The linearizing coordinate used for circle orders: `(x - p) mod 1`.
pub fn phi(p: &CirclePoint, x: &CirclePoint) -> Rat {
    mod1(&(x.value() - p.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    pub fn iset(points: &[(i64, i64)], classes: &[&[usize]]) -> MarkedIntervalSet {
        MarkedIntervalSet::new(
            points.iter().map(|&(n, d)| IntervalPoint::new(rat(n, d)).unwrap()).collect(),
            classes.iter().map(|b| b.to_vec()).collect(),
        )
        .unwrap()
    }

    pub fn cset(points: &[(i64, i64)], classes: &[&[usize]]) -> MarkedCircleSet {
        MarkedCircleSet::new(
            points.iter().map(|&(n, d)| CirclePoint::new(rat(n, d)).unwrap()).collect(),
            classes.iter().map(|b| b.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn nested_interval_classes_are_valid() {
        let s = iset(&[(1, 10), (2, 10), (3, 10), (4, 10)], &[&[0, 3], &[1, 2]]);
        let (ok, v) = validate_marked(&s);
        assert!(ok, "{v:?}");
    }

    #[test]
    fn interleaved_interval_classes_are_invalid() {
        let s = iset(&[(1, 10), (2, 10), (3, 10), (4, 10)], &[&[0, 2], &[1, 3]]);
        let (ok, v) = validate_marked(&s);
        assert!(!ok);
        assert_eq!(v, vec![MarkedViolation::Interleaving { first: 0, second: 1 }]);
    }

    #[test]
    fn disjoint_chords_are_valid() {
        let s = cset(&[(0, 1), (1, 4), (1, 2), (3, 4)], &[&[0, 1], &[2, 3]]);
        let (ok, _) = validate_marked(&s);
        assert!(ok);
    }

    #[test]
    fn crossing_chords_are_invalid() {
        let s = cset(&[(0, 1), (1, 4), (1, 2), (3, 4)], &[&[0, 2], &[1, 3]]);
        let (ok, v) = validate_marked(&s);
        assert!(!ok);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn chords_nested_across_zero_are_valid() {
        // Chord {0.9, 0.2} spans the arc through 0; {0.95, 0.1} nests inside.
        let s = cset(&[(1, 10), (2, 10), (9, 10), (19, 20)], &[&[2, 1], &[3, 0]]);
        let (ok, v) = validate_marked(&s);
        assert!(ok, "{v:?}");
    }

    #[test]
    fn delta_set_sorted_with_indices() {
        let a_plus = cset(&[(0, 1), (1, 4)], &[&[0], &[1]]);
        let a_minus = cset(&[(1, 10)], &[&[0]]);
        let d = delta_set(&a_plus, &a_minus);
        let vals: Vec<(Rat, usize, usize)> =
            d.iter().map(|e| (e.value.value().clone(), e.i, e.j)).collect();
        assert_eq!(vals, vec![(rat(3, 20), 2, 1), (rat(9, 10), 1, 1)]);
    }

    #[test]
    fn delta_set_empty_factor_is_empty() {
        let a = cset(&[(0, 1)], &[&[0]]);
        let e = MarkedCircleSet::empty();
        assert!(delta_set(&a, &e).is_empty());
        assert!(delta_set(&e, &a).is_empty());
    }

    #[test]
    fn delta_set_keeps_duplicates() {
        let a_plus = cset(&[(0, 1), (1, 2)], &[&[0], &[1]]);
        let a_minus = cset(&[(1, 10), (6, 10)], &[&[0], &[1]]);
        let d = delta_set(&a_plus, &a_minus);
        let vals: Vec<Rat> = d.iter().map(|e| e.value.value().clone()).collect();
        // 0 - 1/10 = 9/10, 0 - 6/10 = 2/5, 1/2 - 1/10 = 2/5, 1/2 - 6/10 = 9/10.
        assert_eq!(vals, vec![rat(2, 5), rat(2, 5), rat(9, 10), rat(9, 10)]);
    }

    #[test]
    fn synchronized_pair_detected() {
        let a_plus = cset(&[(0, 1), (1, 2)], &[&[0], &[1]]);
        let a_minus = cset(&[(1, 10), (6, 10)], &[&[0], &[1]]);
        assert!(!non_synchronized(&a_plus, &a_minus));
    }

    #[test]
    fn non_synchronized_pair_detected() {
        let a_plus = cset(&[(0, 1), (1, 4)], &[&[0], &[1]]);
        let a_minus = cset(&[(1, 10), (11, 20)], &[&[0], &[1]]);
        assert!(non_synchronized(&a_plus, &a_minus));
    }

    #[test]
    fn singleton_factors_are_never_synchronized() {
        let a = cset(&[(1, 3)], &[&[0]]);
        let b = cset(&[(0, 1), (1, 7), (2, 7), (3, 7)], &[&[0], &[1], &[2], &[3]]);
        assert!(non_synchronized(&a, &b));
        assert!(non_synchronized(&b, &a));
        assert!(non_synchronized(&MarkedCircleSet::empty(), &b));
    }

    #[test]
    fn interval_nesting_order() {
        let s = iset(&[(-4, 10), (-3, 10), (-2, 10), (-1, 10)], &[&[0, 3], &[1, 2]]);
        let ord = partial_order_leq(&s, None).unwrap();
        assert!(ord.leq(1, 0), "inner class below outer");
        assert!(!ord.leq(0, 1));
        assert_eq!(ord.maximal_classes(), vec![0]);
    }

    #[test]
    fn circle_nesting_order_with_basepoint() {
        let s = cset(&[(1, 10), (2, 10), (3, 10), (4, 10)], &[&[0, 3], &[1, 2]]);
        let p = CirclePoint::new(rat(9, 10)).unwrap();
        let ord = partial_order_leq(&s, Some(&p)).unwrap();
        assert!(ord.leq(1, 0));
        assert!(!ord.leq(0, 1));
    }

    #[test]
    fn disjoint_classes_incomparable() {
        let s = iset(&[(-4, 10), (-3, 10), (2, 10), (3, 10)], &[&[0, 1], &[2, 3]]);
        let ord = partial_order_leq(&s, None).unwrap();
        assert!(!ord.comparable(0, 1));
    }

    #[test]
    fn singletons_are_minimal() {
        let s = iset(&[(-4, 10), (-3, 10), (-2, 10)], &[&[0, 2], &[1]]);
        let ord = partial_order_leq(&s, None).unwrap();
        assert!(ord.leq(1, 0), "singleton inside the pair is below it");
        assert!(!ord.leq(0, 1));
        assert_eq!(ord.maximal_classes(), vec![0]);
    }

    #[test]
    fn basepoint_collision_rejected() {
        let s = cset(&[(1, 10)], &[&[0]]);
        let p = CirclePoint::new(rat(1, 10)).unwrap();
        assert!(matches!(
            partial_order_leq(&s, Some(&p)),
            Err(OrderError::BasepointCollision(_))
        ));
    }
}
