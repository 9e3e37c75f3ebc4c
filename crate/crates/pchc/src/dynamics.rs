//! The interval-map model near the parabolic cycle.
//!
//! For small `eps > 0` the Poincaré map on the transversal has the
//! saddle-node form `y -> y + (y^2 + eps)(1 + f(y, eps, lambda))` with no
//! fixed points, so every orbit drifts from the minus side to the plus
//! side. A time chart turns the map into the unit shift; the transit time
//! `tau(eps, lambda)` from the minus base point to the plus one diverges
//! as `eps -> 0+`, and each saddle connection corresponds to a root of
//! the connection equation, solved here as `tau = delta + m` on the
//! monotone branch.
//!
//! The default model family is the family of time-one flow maps of
//! `dy/dt = y^2 + eps`; its charts are exact arctangent flow times, which
//! gives closed-form oracles (`tau(eps) = 2 atan(1/sqrt(eps))/sqrt(eps)`)
//! and machine-precision unit-shift residuals. Custom perturbations fall
//! back to iterate counting with a quadrature interpolant on one
//! fundamental domain.

use crate::characteristic::CharacteristicData;
use crate::marked::CirclePoint;
use crate::rational::{mod1, to_f64};
use crate::realization::beta_one_position;
use std::sync::Arc;

pub type PerturbationFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
pub type RawMapFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum MapKind {
    /// Time-one flow maps of `dy/dt = y^2 + eps`.
    Model,
    /// `y + (y^2 + eps)(1 + f(y, eps, lambda))`.
    Perturbed(PerturbationFn),
    /// An arbitrary map `(y, eps, lambda) -> y'`, accepted so the
    /// genericity diagnostics can examine degenerate families.
    Raw(RawMapFn),
}

#[derive(Clone)]
pub struct SaddleNodeMapFamily {
    kind: MapKind,
    pub b_minus: f64,
    pub b_plus: f64,
    /// Largest eps the transit machinery will touch.
    pub eps_max: f64,
    /// Base points moved by whole map iterates: `(s_minus, s_plus)` means
    /// the effective bases are the s-th forward images of `b_minus` and
    /// `b_plus`. By the unit-shift identity this offsets every chart by an
    /// integer, exactly, for any eps.
    pub base_iterate_shift: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("eps must be positive, got {0}")]
    EpsNotPositive(f64),
    #[error("point {0} outside the working domain [{1}, {2}]")]
    OutsideDomain(f64, f64, f64),
    #[error("m = {m} too small: transit target {target:.6} not attainable (tau({eps_max}) = {tau_at_max:.6})")]
    MTooSmall { m: i64, target: f64, eps_max: f64, tau_at_max: f64 },
    #[error("root refinement failed for target {0}")]
    RootFailure(f64),
    #[error("circle sets are synchronized; the Malta-Palis condition fails")]
    Synchronized,
    #[error("a2 = 1 events need the beta1 attachment gap, but the datum is not realizable")]
    NoBetaOneGap,
    #[error("no consistent index shift: best M = {best_m} leaves relative deviation {deviation:.3e}")]
    NoConsistentShift { best_m: i64, deviation: f64 },
    #[error("iteration cap exceeded while charting")]
    IterationCap,
}

impl SaddleNodeMapFamily {
    /// The model family: time-one flow maps of `dy/dt = y^2 + eps`, base
    /// points at -1 and 1.
    pub fn model() -> Self {
        SaddleNodeMapFamily {
            kind: MapKind::Model,
            b_minus: -1.0,
            b_plus: 1.0,
            eps_max: 1.0,
            base_iterate_shift: (0, 0),
        }
    }

    /// `y + (y^2 + eps)(1 + f(y, eps, lambda))`.
    pub fn from_perturbation(f: PerturbationFn) -> Self {
        SaddleNodeMapFamily {
            kind: MapKind::Perturbed(f),
            b_minus: -1.0,
            b_plus: 1.0,
            eps_max: 1.0,
            base_iterate_shift: (0, 0),
        }
    }

    /// An arbitrary raw map, for genericity diagnostics.
    pub fn from_map(g: RawMapFn) -> Self {
        SaddleNodeMapFamily {
            kind: MapKind::Raw(g),
            b_minus: -1.0,
            b_plus: 1.0,
            eps_max: 1.0,
            base_iterate_shift: (0, 0),
        }
    }

    pub fn with_base_points(mut self, b_minus: f64, b_plus: f64) -> Self {
        self.b_minus = b_minus;
        self.b_plus = b_plus;
        self
    }

    /// Move the base points by whole map iterates (exact integer chart
    /// offsets).
    pub fn with_base_iterate_shift(mut self, s_minus: i64, s_plus: i64) -> Self {
        self.base_iterate_shift = (s_minus, s_plus);
        self
    }

    /// One application of the map.
    pub fn map(&self, y: f64, eps: f64, lambda: f64) -> f64 {
        match &self.kind {
            MapKind::Model => model_flow(y, eps, 1.0),
            MapKind::Perturbed(f) => y + (y * y + eps) * (1.0 + f(y, eps, lambda)),
            MapKind::Raw(g) => g(y, eps, lambda),
        }
    }

    /// Orbit velocity used for the fractional interpolant.
    fn velocity(&self, y: f64, eps: f64, lambda: f64) -> f64 {
        match &self.kind {
            MapKind::Model => y * y + eps,
            MapKind::Perturbed(f) => (y * y + eps) * (1.0 + f(y, eps, lambda)),
            MapKind::Raw(_) => (self.map(y, eps, lambda) - y).max(f64::MIN_POSITIVE),
        }
    }

    /// Flow time of the interpolating field from `a` to `b`.
    fn flow_time(&self, a: f64, b: f64, eps: f64, lambda: f64) -> f64 {
        match &self.kind {
            MapKind::Model => {
                let s = eps.sqrt();
                ((b / s).atan() - (a / s).atan()) / s
            }
            _ => adaptive_simpson(&|y| 1.0 / self.velocity(y, eps, lambda), a, b, 1e-12, 40),
        }
    }
}

/// Time-`t` flow of `dy/dt = y^2 + eps` (`eps >= 0`).
fn model_flow(y: f64, eps: f64, t: f64) -> f64 {
    if eps == 0.0 {
        return y / (1.0 - t * y);
    }
    let s = eps.sqrt();
    let phase = (y / s).atan() + t * s;
    s * phase.tan()
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, left, tol * 0.5, depth - 1) + rec(f, m, b, right, tol * 0.5, depth - 1)
        }
    }
    let whole = simpson(f, a, b);
    rec(f, a, b, whole, tol, depth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartSide {
    Plus,
    Minus,
}

/// Unit-shift time chart: `T(P(x)) = T(x) + 1` with `T(base) = 0`.
pub struct TimeChart<'a> {
    family: &'a SaddleNodeMapFamily,
    pub side: ChartSide,
    pub eps: f64,
    pub lambda: f64,
}

impl TimeChart<'_> {
    pub fn base(&self) -> f64 {
        match self.side {
            ChartSide::Plus => self.family.b_plus,
            ChartSide::Minus => self.family.b_minus,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, DynamicsError> {
        chart_value(self.family, self.eps, self.lambda, self.base(), x)
    }
}

/// Build the chart for one side.
pub fn time_chart(
    family: &SaddleNodeMapFamily,
    eps: f64,
    lambda: f64,
    side: ChartSide,
) -> Result<TimeChart<'_>, DynamicsError> {
    if eps <= 0.0 {
        return Err(DynamicsError::EpsNotPositive(eps));
    }
    Ok(TimeChart { family, side, eps, lambda })
}

/// The chart value of `x` relative to `base`. The chart is fixed on the
/// fundamental domain `[base, P(base))` as the normalized flow time of
/// the interpolating field and extended by the unit-shift identity, so
/// `x` is transported back into that domain before the fraction is read
/// off: fractions taken in other domains would not be map-equivariant.
/// For the model family the chart is the exact flow time.
fn chart_value(
    family: &SaddleNodeMapFamily,
    eps: f64,
    lambda: f64,
    base: f64,
    x: f64,
) -> Result<f64, DynamicsError> {
    if eps <= 0.0 {
        return Err(DynamicsError::EpsNotPositive(eps));
    }
    if let MapKind::Model = family.kind {
        return Ok(family.flow_time(base, x, eps, lambda));
    }
    const CAP: usize = 1_000_000;
    let top = family.map(base, eps, lambda);
    let span = family.flow_time(base, top, eps, lambda);
    let mut n = 0i64;
    let mut x0 = x;
    if x >= base {
        for _ in 0..CAP {
            if x0 < top {
                let frac = family.flow_time(base, x0, eps, lambda) / span;
                return Ok(n as f64 + frac);
            }
            x0 = inverse_map(family, x0, eps, lambda)?;
            n += 1;
        }
        Err(DynamicsError::IterationCap)
    } else {
        for _ in 0..CAP {
            if x0 >= base {
                let frac = family.flow_time(base, x0, eps, lambda) / span;
                return Ok(n as f64 + frac);
            }
            x0 = family.map(x0, eps, lambda);
            n -= 1;
        }
        Err(DynamicsError::IterationCap)
    }
}

fn inverse_map(
    family: &SaddleNodeMapFamily,
    target: f64,
    eps: f64,
    lambda: f64,
) -> Result<f64, DynamicsError> {
    // The map is strictly increasing on the working domain, which the
    // bracket must not leave: the Euler-type form turns around outside it.
    let mut lo = family.b_minus;
    let mut hi = target;
    if family.map(lo, eps, lambda) > target {
        return Err(DynamicsError::OutsideDomain(target, family.b_minus, family.b_plus));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if family.map(mid, eps, lambda) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + target.abs()) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Transit time from the minus base point to the plus one: the minus-side
/// chart evaluated at `b_plus`. Strictly decreasing in `eps`, divergent
/// as `eps -> 0+`.
pub fn tau(family: &SaddleNodeMapFamily, eps: f64, lambda: f64) -> Result<f64, DynamicsError> {
    if eps <= 0.0 {
        return Err(DynamicsError::EpsNotPositive(eps));
    }
    let (s_minus, s_plus) = family.base_iterate_shift;
    let raw = chart_value(family, eps, lambda, family.b_minus, family.b_plus)?;
    Ok(raw + (s_plus - s_minus) as f64)
}

/// Solve the connection equation `tau(eps, lambda) = delta + m` for the
/// unique positive root. Bisection on `ln eps`; tau's monotonicity
/// guarantees the bracket.
pub fn solve_connection(
    family: &SaddleNodeMapFamily,
    delta: f64,
    m: i64,
    lambda: f64,
) -> Result<f64, DynamicsError> {
    let target = delta + m as f64;
    let tau_at_max = tau(family, family.eps_max, lambda)?;
    if target <= tau_at_max {
        return Err(DynamicsError::MTooSmall { m, target, eps_max: family.eps_max, tau_at_max });
    }
    // Bracket: tau(hi) < target < tau(lo).
    let mut hi = family.eps_max.ln();
    let mut lo = hi;
    let mut tries = 0;
    loop {
        lo -= std::f64::consts::LN_10;
        let t = tau(family, lo.exp(), lambda)?;
        if t > target {
            break;
        }
        tries += 1;
        if tries > 300 {
            return Err(DynamicsError::RootFailure(target));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let t = tau(family, mid.exp(), lambda)?;
        if t > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let eps = (0.5 * (lo + hi)).exp();
    let residual = (tau(family, eps, lambda)? - target).abs();
    if residual > 1e-9 * target.abs().max(1.0) {
        return Err(DynamicsError::RootFailure(target));
    }
    Ok(eps)
}

/// Smallest `m` for which the connection target is attainable and the
/// computed root is stable under a ±10% perturbation of the bracket top.
pub fn m_min(family: &SaddleNodeMapFamily, delta: f64, lambda: f64) -> Result<i64, DynamicsError> {
    let tau_at_max = tau(family, family.eps_max, lambda)?;
    let mut m = (tau_at_max - delta).ceil() as i64;
    for _ in 0..1000 {
        if let Ok(eps) = solve_connection(family, delta, m, lambda) {
            let mut stable = true;
            for factor in [0.9, 1.1] {
                let mut fam = family.clone();
                fam.eps_max = (family.eps_max * factor).max(eps * 2.0);
                match solve_connection(&fam, delta, m, lambda) {
                    Ok(e2) if ((e2 - eps) / eps).abs() <= 1e-8 => {}
                    _ => {
                        stable = false;
                        break;
                    }
                }
            }
            if stable {
                return Ok(m);
            }
        }
        m += 1;
    }
    Err(DynamicsError::RootFailure(delta))
}

/// One sparkling saddle-connection event: the root of the connection
/// equation for plus-point `i`, minus-point `j`, and winding index `m`.
/// `i = k + 1` refers to the beta1 separatrix (present only for `a2 = 1`
/// and non-positive `lambda`).
#[derive(Debug, Clone, PartialEq)]
pub struct SparklingEvent {
    pub epsilon: f64,
    pub i: usize,
    pub j: usize,
    pub m: i64,
}

/// All connection events for the datum over the winding range, sorted by
/// decreasing `eps` (the order of appearance as `eps -> 0+`). Within one
/// winding index the order of index pairs matches the ascending
/// difference-set order.
pub fn enumerate_sparkling(
    family: &SaddleNodeMapFamily,
    data: &CharacteristicData,
    lambda: f64,
    m_from: i64,
    m_to: i64,
) -> Result<Vec<SparklingEvent>, DynamicsError> {
    if !crate::marked::non_synchronized(&data.a_plus, &data.a_minus) {
        return Err(DynamicsError::Synchronized);
    }
    let k = data.a_plus.len();
    let mut plus_points: Vec<(usize, CirclePoint)> = data
        .a_plus
        .points()
        .iter()
        .enumerate()
        .map(|(idx, p)| (idx + 1, p.clone()))
        .collect();
    if data.config.a2() && lambda <= 0.0 {
        let q = beta_one_position(data).ok_or(DynamicsError::NoBetaOneGap)?;
        plus_points.push((k + 1, q));
    }
    let mut events = Vec::new();
    for m in m_from..=m_to {
        for &(i, ref p) in &plus_points {
            for (j0, d) in data.a_minus.points().iter().enumerate() {
                let delta = to_f64(&mod1(&(p.value() - d.value())));
                let eps = solve_connection(family, delta, m, lambda)?;
                events.push(SparklingEvent { epsilon: eps, i, j: j0 + 1, m });
            }
        }
    }
    events.sort_by(|a, b| b.epsilon.partial_cmp(&a.epsilon).expect("finite roots"));
    Ok(events)
}

/// How the base points move for a re-indexing check.
#[derive(Debug, Clone, Copy)]
pub enum BasePointShift {
    /// New fixed transversal coordinates. Only map iterates of the old
    /// base points reproduce the event set exactly; other choices distort
    /// the charts eps-dependently and are reported diagnostically.
    Fixed { b_minus: f64, b_plus: f64 },
    /// Whole map iterates of the old base points (exact).
    Iterates { s_minus: i64, s_plus: i64 },
}

/// Find the integer shift `M` aligning the event lists computed with the
/// current base points and with the shifted ones: relabeling the new
/// list by `m -> m + M` recovers the old list, i.e. the new event
/// `(m - M, i, j)` carries the old root `(m, i, j)`.
pub fn reindex_under_basepoint_shift(
    family: &SaddleNodeMapFamily,
    data: &CharacteristicData,
    lambda: f64,
    shift: BasePointShift,
    m_from: i64,
    m_to: i64,
) -> Result<i64, DynamicsError> {
    let old_events = enumerate_sparkling(family, data, lambda, m_from, m_to)?;
    let shifted = match shift {
        BasePointShift::Fixed { b_minus, b_plus } => {
            family.clone().with_base_points(b_minus, b_plus)
        }
        BasePointShift::Iterates { s_minus, s_plus } => {
            family.clone().with_base_iterate_shift(s_minus, s_plus)
        }
    };
    let margin = 4;
    let new_events = enumerate_sparkling(&shifted, data, lambda, m_from - margin, m_to + margin)?;
    let lookup = |m: i64, i: usize, j: usize| -> Option<f64> {
        new_events.iter().find(|e| e.m == m && e.i == i && e.j == j).map(|e| e.epsilon)
    };
    let mut best: Option<(i64, f64)> = None;
    for cand in -margin..=margin {
        let mut worst: f64 = 0.0;
        let mut feasible = true;
        for e in &old_events {
            match lookup(e.m - cand, e.i, e.j) {
                Some(eps) => worst = worst.max(((eps - e.epsilon) / e.epsilon).abs()),
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if feasible && best.map_or(true, |(_, w)| worst < w) {
            best = Some((cand, worst));
        }
    }
    match best {
        Some((m_shift, dev)) if dev <= 1e-9 => Ok(m_shift),
        Some((m_shift, dev)) => {
            Err(DynamicsError::NoConsistentShift { best_m: m_shift, deviation: dev })
        }
        None => Err(DynamicsError::NoConsistentShift { best_m: 0, deviation: f64::INFINITY }),
    }
}

/// Finite-difference check that the family is a genuine saddle-node
/// family at the origin: fixed point, unit derivative, nonzero curvature,
/// nonzero eps-velocity.
#[derive(Debug, Clone)]
pub struct GenericityReport {
    pub fixed_point_residual: f64,
    pub derivative: f64,
    pub curvature: f64,
    pub eps_velocity: f64,
    pub ok: bool,
}

pub fn check_genericity_map(family: &SaddleNodeMapFamily, lambda: f64) -> GenericityReport {
    let h = 1e-5;
    let p = |y: f64, eps: f64| family.map(y, eps, lambda);
    let fixed_point_residual = p(0.0, 0.0).abs();
    let derivative = (p(h, 0.0) - p(-h, 0.0)) / (2.0 * h);
    let curvature = (p(h, 0.0) - 2.0 * p(0.0, 0.0) + p(-h, 0.0)) / (h * h);
    // One-sided second-order difference: eps < 0 may sit outside the
    // family's domain.
    let eps_velocity = (-3.0 * p(0.0, 0.0) + 4.0 * p(0.0, h) - p(0.0, 2.0 * h)) / (2.0 * h);
    let ok = fixed_point_residual < 1e-8
        && (derivative - 1.0).abs() < 1e-5
        && curvature.abs() > 1e-3
        && eps_velocity.abs() > 1e-3;
    GenericityReport { fixed_point_residual, derivative, curvature, eps_velocity, ok }
}

/// Closed-form transit time of the model family with base points ±1, used
/// as the oracle in tests: `2 atan(1/sqrt(eps)) / sqrt(eps)`.
pub fn model_tau_closed_form(eps: f64) -> f64 {
    let s = eps.sqrt();
    2.0 * (1.0 / s).atan() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_matches_closed_form() {
        let fam = SaddleNodeMapFamily::model();
        for eps in [0.01, 0.05, 0.3] {
            let t = tau(&fam, eps, 0.0).unwrap();
            let oracle = model_tau_closed_form(eps);
            assert!(((t - oracle) / oracle).abs() < 1e-12, "eps={eps}: {t} vs {oracle}");
        }
    }

    #[test]
    fn tau_rejects_nonpositive_eps() {
        let fam = SaddleNodeMapFamily::model();
        assert!(matches!(tau(&fam, 0.0, 0.0), Err(DynamicsError::EpsNotPositive(_))));
        assert!(matches!(tau(&fam, -0.1, 0.0), Err(DynamicsError::EpsNotPositive(_))));
    }

    #[test]
    fn tau_is_strictly_decreasing() {
        let fam = SaddleNodeMapFamily::model();
        let mut prev = f64::INFINITY;
        for i in 1..60 {
            let eps = i as f64 * 0.01;
            let t = tau(&fam, eps, 0.0).unwrap();
            assert!(t < prev, "tau must decrease at eps={eps}");
            prev = t;
        }
    }

    #[test]
    fn chart_unit_shift_residual_model() {
        let fam = SaddleNodeMapFamily::model();
        let eps = 0.01;
        let chart = time_chart(&fam, eps, 0.0, ChartSide::Minus).unwrap();
        assert_eq!(chart.eval(fam.b_minus).unwrap(), 0.0);
        let mut x = -0.9;
        while x < 0.8 {
            let t = chart.eval(x).unwrap();
            let t_next = chart.eval(fam.map(x, eps, 0.0)).unwrap();
            assert!((t_next - t - 1.0).abs() < 1e-8, "residual at {x}: {}", t_next - t - 1.0);
            x += 0.137;
        }
    }

    #[test]
    fn chart_unit_shift_residual_perturbed() {
        // The perturbed form y + (y^2 + eps)(1 + f) is only monotone for
        // |y| < 1/2 or so, hence the narrower base points here.
        let f: PerturbationFn = Arc::new(|y, _eps, _l| 0.1 * y);
        let fam = SaddleNodeMapFamily::from_perturbation(f).with_base_points(-0.4, 0.4);
        let eps = 0.02;
        let chart = time_chart(&fam, eps, 0.0, ChartSide::Minus).unwrap();
        let mut x = -0.39;
        while x < 0.3 {
            let t = chart.eval(x).unwrap();
            let t_next = chart.eval(fam.map(x, eps, 0.0)).unwrap();
            assert!((t_next - t - 1.0).abs() < 1e-8, "residual at {x}: {}", t_next - t - 1.0);
            x += 0.057;
        }
    }

    #[test]
    fn connection_roots_feed_back_exactly() {
        let fam = SaddleNodeMapFamily::model();
        for m in [5, 30, 100] {
            let eps = solve_connection(&fam, 0.3, m, 0.0).unwrap();
            let t = tau(&fam, eps, 0.0).unwrap();
            assert!((t - (0.3 + m as f64)).abs() < 1e-9 * (m as f64));
        }
    }

    #[test]
    fn connection_root_value_from_oracle() {
        // Independent oracle: bisect tau_oracle(eps) = 30.3 where
        // tau_oracle integrates 1/(y^2 + eps) over [-1, 1] by composite
        // Simpson, with no use of the chart machinery.
        let tau_oracle = |eps: f64| -> f64 {
            let n = 20_000;
            let h = 2.0 / n as f64;
            let f = |y: f64| 1.0 / (y * y + eps);
            let mut acc = f(-1.0) + f(1.0);
            for i in 1..n {
                let y = -1.0 + i as f64 * h;
                acc += if i % 2 == 1 { 4.0 * f(y) } else { 2.0 * f(y) };
            }
            acc * h / 3.0
        };
        let target = 30.3;
        let (mut lo, mut hi) = (1e-6f64, 1.0f64);
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if tau_oracle(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle_eps = (lo * hi).sqrt();

        let fam = SaddleNodeMapFamily::model();
        let eps = solve_connection(&fam, 0.3, 30, 0.0).unwrap();
        assert!(
            ((eps - oracle_eps) / oracle_eps).abs() < 1e-7,
            "eps = {eps}, oracle = {oracle_eps}"
        );
        // Frozen value from the oracle, and the corrected asymptotic
        // (pi / (target + 2))^2 within 1%.
        assert!((eps - 9.46375e-3).abs() < 1e-7, "eps = {eps}");
        let asymptotic = (std::f64::consts::PI / 32.3).powi(2);
        assert!(((eps - asymptotic) / eps).abs() < 0.01);
    }

    #[test]
    fn roots_decrease_in_m() {
        let fam = SaddleNodeMapFamily::model();
        let mut prev = f64::INFINITY;
        for m in 30..=130 {
            let eps = solve_connection(&fam, 0.3, m, 0.0).unwrap();
            assert!(eps < prev);
            prev = eps;
        }
    }

    #[test]
    fn eps_times_target_squared_tends_to_pi_squared() {
        let fam = SaddleNodeMapFamily::model();
        let eps = solve_connection(&fam, 0.3, 1000, 0.0).unwrap();
        let val = eps * (1000.3f64).powi(2);
        let pi2 = std::f64::consts::PI.powi(2);
        assert!(((val - pi2) / pi2).abs() < 0.01, "{val} vs {pi2}");
    }

    #[test]
    fn m_too_small_is_diagnosed() {
        let fam = SaddleNodeMapFamily::model();
        let err = solve_connection(&fam, 0.3, 1, 0.0);
        assert!(matches!(err, Err(DynamicsError::MTooSmall { .. })));
        let m0 = m_min(&fam, 0.3, 0.0).unwrap();
        assert!(solve_connection(&fam, 0.3, m0, 0.0).is_ok());
        assert!(solve_connection(&fam, 0.3, m0 - 1, 0.0).is_err());
    }

    #[test]
    fn genericity_of_model_and_degenerate_maps() {
        let model = SaddleNodeMapFamily::model();
        let rep = check_genericity_map(&model, 0.0);
        assert!(rep.ok, "{rep:?}");
        assert!((rep.curvature - 2.0).abs() < 1e-3, "model curvature ~ 2: {rep:?}");
        assert!((rep.eps_velocity - 1.0).abs() < 1e-3, "model eps velocity ~ 1: {rep:?}");

        let cubic = SaddleNodeMapFamily::from_map(Arc::new(|y, eps, _| y + y * y * y + eps));
        assert!(!check_genericity_map(&cubic, 0.0).ok, "cubic curvature is zero");

        let frozen = SaddleNodeMapFamily::from_map(Arc::new(|y, _, _| y + y * y));
        assert!(!check_genericity_map(&frozen, 0.0).ok, "no eps dependence");
    }

    #[test]
    fn richardson_convergence_of_curvature() {
        // Central second difference has O(h^2) error driven by the fourth
        // derivative: halving the step shrinks the error by about 4. The
        // map here is y + y^2 + 0.3 y^4 + ..., whose fourth derivative at
        // 0 is 7.2.
        let fam = SaddleNodeMapFamily::from_map(Arc::new(|y, eps, _| {
            y + (y * y + eps) * (1.0 + 0.3 * y * y)
        }));
        let exact = 2.0;
        let curv = |h: f64| {
            (fam.map(h, 0.0, 0.0) - 2.0 * fam.map(0.0, 0.0, 0.0) + fam.map(-h, 0.0, 0.0))
                / (h * h)
        };
        let e1 = (curv(1e-2) - exact).abs();
        let e2 = (curv(5e-3) - exact).abs();
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "expected ~4, got {ratio} ({e1} vs {e2})");
    }
}
