//! Box-counting dimension estimates over interval sets.
//!
//! The box-counting slope serves as a desk-scale proxy for the local
//! Hausdorff dimension of the spectrum; every report says so. Grid boxes
//! are half-open, `[k*eps, (k+1)*eps)`, anchored at zero; intervals are
//! closed, so a right endpoint landing exactly on a grid line occupies the
//! following box. The fixed convention makes counts reproducible bit for
//! bit.

use serde::Serialize;

use crate::error::Error;
use crate::fit::ols;
use crate::Interval;

/// Wording attached to every dimension report.
pub const ESTIMATOR_NOTE: &str =
    "box-counting slope over the computed interval approximation; a proxy for the local Hausdorff dimension, not the dimension itself";

/// Limit value of (dimension x log invariant) as the invariant grows,
/// `2 ln(1 + sqrt 2)`; reported for context in consistency reports.
pub fn large_invariant_asymptote() -> f64 {
    2.0 * (1.0 + std::f64::consts::SQRT_2).ln()
}

/// Number of half-open grid boxes `[k*eps, (k+1)*eps)` meeting the union of
/// the closed intervals, which must be sorted by left endpoint.
pub fn box_count(intervals: &[Interval], eps: f64) -> Result<usize, Error> {
    if intervals.is_empty() {
        return Err(Error::EmptyIntervals);
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::NonpositiveScale(eps));
    }
    debug_assert!(
        intervals.windows(2).all(|w| w[0].0 <= w[1].0),
        "intervals must be sorted by left endpoint"
    );
    let mut count: usize = 0;
    let mut last: Option<i64> = None;
    for &(lo, hi) in intervals {
        let k_lo = (lo / eps).floor() as i64;
        let k_hi = (hi / eps).floor() as i64;
        let from = match last {
            Some(l) => k_lo.max(l + 1),
            None => k_lo,
        };
        if k_hi >= from {
            count += (k_hi - from + 1) as usize;
        }
        last = Some(last.map_or(k_hi, |l| l.max(k_hi)));
    }
    Ok(count)
}

/// Box-count regression result over a scale range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    /// Least-squares slope of log N against log(1/eps).
    pub slope: f64,
    pub r_squared: f64,
    pub scale_range: (f64, f64),
    /// The (eps, N(eps)) pairs entering the regression, eps ascending.
    pub counts: Vec<(f64, usize)>,
}

/// Fits the box-count growth rate over `points` log-spaced scales between
/// `eps_min` and `eps_max`, both of which must lie inside (0, diameter).
pub fn box_dimension(
    intervals: &[Interval],
    eps_range: (f64, f64),
    points: usize,
) -> Result<DimensionEstimate, Error> {
    if intervals.is_empty() {
        return Err(Error::EmptyIntervals);
    }
    let (eps_min, eps_max) = eps_range;
    let diameter = intervals.last().map(|i| i.1).unwrap_or(0.0)
        - intervals.first().map(|i| i.0).unwrap_or(0.0);
    if !(eps_min > 0.0) || !(eps_min < eps_max) || !(eps_max < diameter) {
        return Err(Error::InvalidScaleRange {
            eps_min,
            eps_max,
            diameter,
        });
    }
    if points < 3 {
        return Err(Error::DegenerateRegression(points));
    }
    let (llo, lhi) = (eps_min.ln(), eps_max.ln());
    let mut counts = Vec::with_capacity(points);
    for j in 0..points {
        let eps = (llo + (lhi - llo) * j as f64 / (points - 1) as f64).exp();
        counts.push((eps, box_count(intervals, eps)?));
    }
    let xs: Vec<f64> = counts.iter().map(|&(e, _)| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let fit = ols(&xs, &ys).ok_or(Error::DegenerateRegression(points))?;
    Ok(DimensionEstimate {
        slope: fit.slope,
        r_squared: fit.r_squared,
        scale_range: eps_range,
        counts,
    })
}

/// Dimension estimates below this r-squared are flagged unreliable.
pub const R_SQUARED_RELIABLE: f64 = 0.98;

/// Slack allowed before two windows count as a monotone-consistency
/// violation.
pub const CONSISTENCY_SLACK: f64 = 0.1;

/// Per-window row of a consistency report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowReport {
    pub window: Interval,
    pub max_abs_invariant: f64,
    pub dimension: f64,
    pub r2: f64,
    pub flag: bool,
}

/// Cross-window consistency tabulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub estimator: &'static str,
    /// Reference value of dimension x log(invariant) for large invariants.
    pub reference_asymptote: f64,
    pub windows: Vec<WindowReport>,
}

/// Tabulates, per window, the largest `|I|` over the profile samples inside
/// it and the window's dimension estimate. A window is flagged when a
/// window with larger max `|I|` scores a materially larger dimension
/// (slack 0.1), or when its own regression is unreliable (r-squared below
/// 0.98).
pub fn dimension_consistency_report(
    profile: &[(f64, f64)],
    estimates: &[(Interval, DimensionEstimate)],
) -> Result<ConsistencyReport, Error> {
    let mut rows = Vec::with_capacity(estimates.len());
    for ((lo, hi), est) in estimates {
        let max_abs = profile
            .iter()
            .filter(|(e, _)| *lo <= *e && *e <= *hi)
            .map(|(_, i)| i.abs())
            .fold(f64::NEG_INFINITY, f64::max);
        if max_abs == f64::NEG_INFINITY {
            return Err(Error::MismatchedWindow { lo: *lo, hi: *hi });
        }
        rows.push(WindowReport {
            window: (*lo, *hi),
            max_abs_invariant: max_abs,
            dimension: est.slope,
            r2: est.r_squared,
            flag: est.r_squared < R_SQUARED_RELIABLE,
        });
    }
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if rows[i].max_abs_invariant < rows[j].max_abs_invariant
                && rows[i].dimension < rows[j].dimension - CONSISTENCY_SLACK
            {
                rows[i].flag = true;
            }
        }
    }
    Ok(ConsistencyReport {
        estimator: ESTIMATOR_NOTE,
        reference_asymptote: large_invariant_asymptote(),
        windows: rows,
    })
}

/// Level-`level` middle-thirds construction over `[0, 1]`: a calibration
/// fixture with box dimension `ln 2 / ln 3`.
pub fn middle_thirds_approximant(level: u32) -> Vec<Interval> {
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for _ in 0..level {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (lo, hi) in intervals {
            let w = (hi - lo) / 3.0;
            next.push((lo, lo + w));
            next.push((hi - w, hi));
        }
        intervals = next;
    }
    intervals
}
