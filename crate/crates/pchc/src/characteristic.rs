//! The classifying datum of a PC-HC field: two marked interval sets, two
//! marked circle sets, the liaison relation, and the configuration word.

use crate::config::Configuration;
use crate::marked::{validate_marked, MarkedCircleSet, MarkedIntervalSet};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Pairing between classes of `L2` and classes of `A+` whose defining
/// separatrices share a saddle. Each class appears in at most one pair.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Liaison {
    /// `(index into L2 classes, index into A+ classes)`.
    pub pairs: Vec<(usize, usize)>,
}

impl Liaison {
    pub fn empty() -> Self {
        Liaison { pairs: Vec::new() }
    }

    pub fn l2_partner(&self, l2_class: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(l, _)| l == l2_class).map(|&(_, a)| a)
    }

    pub fn aplus_partner(&self, aplus_class: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(_, a)| a == aplus_class).map(|&(l, _)| l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacteristicError {
    #[error("L1 coordinates must be negative (arrivals on the far side of the homoclinic loop)")]
    L1NotNegative,
    #[error("L2 coordinates must be positive (arrivals on the annulus side)")]
    L2NotPositive,
    #[error("marked set {which} fails non-interleaving: {detail}")]
    InvalidMarking { which: &'static str, detail: String },
    #[error("liaison references class {class} out of range for {which}")]
    LiaisonOutOfRange { which: &'static str, class: usize },
    #[error("liaison pairs a class more than once (class {class} of {which})")]
    LiaisonDuplicate { which: &'static str, class: usize },
}

/// Characteristic sets of a PC-HC field.
///
/// `l1` holds the arrival coordinates on the side of the homoclinic loop
/// away from the parabolic cycle (all negative), `l2` the annulus-side
/// arrivals (all positive). `a_plus` and `a_minus` hold the time-chart
/// coordinates of the separatrices winding onto the parabolic cycle from
/// the annulus side and the disk side respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicData {
    pub config: Configuration,
    pub l1: MarkedIntervalSet,
    pub l2: MarkedIntervalSet,
    pub a_plus: MarkedCircleSet,
    pub a_minus: MarkedCircleSet,
    pub liaison: Liaison,
}

impl CharacteristicData {
    /// Build and check the hard structural invariants: sign constraints on
    /// `L1`/`L2`, non-interleaving of every marked set, and liaison index
    /// sanity. Realizability conditions beyond these are the business of
    /// `realization::check_realizable`.
    pub fn new(
        config: Configuration,
        l1: MarkedIntervalSet,
        l2: MarkedIntervalSet,
        a_plus: MarkedCircleSet,
        a_minus: MarkedCircleSet,
        liaison: Liaison,
    ) -> Result<Self, CharacteristicError> {
        use crate::rational::Rat;
        if !l1.points().iter().all(|p| p.value() < &Rat::zero()) {
            return Err(CharacteristicError::L1NotNegative);
        }
        if !l2.points().iter().all(|p| p.value() > &Rat::zero()) {
            return Err(CharacteristicError::L2NotPositive);
        }
        for (which, ok, violations) in [
            ("L1", validate_marked(&l1).0, validate_marked(&l1).1),
            ("L2", validate_marked(&l2).0, validate_marked(&l2).1),
            ("A+", validate_marked(&a_plus).0, validate_marked(&a_plus).1),
            ("A-", validate_marked(&a_minus).0, validate_marked(&a_minus).1),
        ] {
            if !ok {
                let detail =
                    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
                return Err(CharacteristicError::InvalidMarking { which, detail });
            }
        }
        let mut seen_l2 = vec![false; l2.classes().len()];
        let mut seen_ap = vec![false; a_plus.classes().len()];
        for &(lc, ac) in &liaison.pairs {
            if lc >= l2.classes().len() {
                return Err(CharacteristicError::LiaisonOutOfRange { which: "L2", class: lc });
            }
            if ac >= a_plus.classes().len() {
                return Err(CharacteristicError::LiaisonOutOfRange { which: "A+", class: ac });
            }
            if seen_l2[lc] {
                return Err(CharacteristicError::LiaisonDuplicate { which: "L2", class: lc });
            }
            if seen_ap[ac] {
                return Err(CharacteristicError::LiaisonDuplicate { which: "A+", class: ac });
            }
            seen_l2[lc] = true;
            seen_ap[ac] = true;
        }
        Ok(CharacteristicData { config, l1, l2, a_plus, a_minus, liaison })
    }

    /// All sets empty, no liaison.
    pub fn empty(config: Configuration) -> Self {
        CharacteristicData {
            config,
            l1: MarkedIntervalSet::empty(),
            l2: MarkedIntervalSet::empty(),
            a_plus: MarkedCircleSet::empty(),
            a_minus: MarkedCircleSet::empty(),
            liaison: Liaison::empty(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate_configuration;
    use crate::marked::{CirclePoint, IntervalPoint};
    use crate::rational::rat;

    fn ipts(vals: &[(i64, i64)]) -> Vec<IntervalPoint> {
        vals.iter().map(|&(n, d)| IntervalPoint::new(rat(n, d)).unwrap()).collect()
    }

    fn cpts(vals: &[(i64, i64)]) -> Vec<CirclePoint> {
        vals.iter().map(|&(n, d)| CirclePoint::new(rat(n, d)).unwrap()).collect()
    }

    #[test]
    fn sign_constraints_enforced() {
        let cfg = validate_configuration("111").unwrap();
        let l1 = MarkedIntervalSet::new(ipts(&[(1, 2)]), vec![vec![0]]).unwrap();
        let err = CharacteristicData::new(
            cfg,
            l1,
            MarkedIntervalSet::empty(),
            MarkedCircleSet::empty(),
            MarkedCircleSet::empty(),
            Liaison::empty(),
        );
        assert!(matches!(err, Err(CharacteristicError::L1NotNegative)));
    }

    #[test]
    fn liaison_uniqueness_enforced() {
        let cfg = validate_configuration("111").unwrap();
        let l2 =
            MarkedIntervalSet::new(ipts(&[(1, 4), (1, 2)]), vec![vec![0], vec![1]]).unwrap();
        let ap =
            MarkedCircleSet::new(cpts(&[(1, 4), (1, 2)]), vec![vec![0], vec![1]]).unwrap();
        let err = CharacteristicData::new(
            cfg,
            MarkedIntervalSet::empty(),
            l2,
            ap,
            MarkedCircleSet::empty(),
            Liaison { pairs: vec![(0, 0), (0, 1)] },
        );
        assert!(matches!(err, Err(CharacteristicError::LiaisonDuplicate { .. })));
    }

    #[test]
    fn interleaved_marking_rejected_at_construction() {
        let cfg = validate_configuration("000").unwrap();
        let l1 = MarkedIntervalSet::new(
            ipts(&[(-4, 10), (-3, 10), (-2, 10), (-1, 10)]),
            vec![vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        let err = CharacteristicData::new(
            cfg,
            l1,
            MarkedIntervalSet::empty(),
            MarkedCircleSet::empty(),
            MarkedCircleSet::empty(),
            Liaison::empty(),
        );
        assert!(matches!(err, Err(CharacteristicError::InvalidMarking { which: "L1", .. })));
    }
}
