//! Escape-time approximation of the spectrum, invariant profiles, coupling
//! sweeps, and periodic-approximant band tables.
//!
//! A sample energy is kept when its trace-map orbit survives `max_steps`
//! iterations without triggering the escape criterion; maximal runs of kept
//! samples form the interval approximation. Finite-step survival
//! over-approximates the spectrum, so results carry `max_steps` alongside
//! the intervals. Samples are evaluated in parallel and merged in energy
//! order, making every result independent of the thread schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::potential::ModelSpec;
use crate::tracemap::{gamma, invariant_of_energy, iterate_orbit};
use crate::Interval;

/// Highest periodic-approximant level served by [`approximant_bands`].
pub const MAX_BAND_LEVEL: usize = 25;

/// A uniformly sampled energy range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyWindow {
    lo: f64,
    hi: f64,
    samples: usize,
}

impl EnergyWindow {
    pub fn new(lo: f64, hi: f64, samples: usize) -> Result<Self, Error> {
        if !(lo < hi) || samples < 2 || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidWindow { lo, hi, samples });
        }
        Ok(EnergyWindow { lo, hi, samples })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Grid spacing between adjacent samples.
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.samples - 1) as f64
    }

    /// The i-th sample energy; endpoints included.
    pub fn energy(&self, i: usize) -> f64 {
        if i + 1 == self.samples {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }
}

/// Scan parameters echoed into every result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanParams {
    pub max_steps: usize,
    pub radius: f64,
    pub refine_tol: Option<f64>,
}

/// Per-sample record of an escape scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleVerdict {
    pub energy: f64,
    pub escaped_at: Option<usize>,
    pub invariant: f64,
}

/// Escape-scan result: per-sample verdicts plus the retained intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumApproximation {
    pub window: EnergyWindow,
    pub verdicts: Vec<SampleVerdict>,
    pub intervals: Vec<Interval>,
    pub params: ScanParams,
}

impl SpectrumApproximation {
    /// Total length of the retained intervals.
    pub fn retained_measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }
}

fn verdict_at(model: &ModelSpec, energy: f64, max_steps: usize, radius: f64) -> SampleVerdict {
    let g = gamma(model, energy);
    let orbit = iterate_orbit(g, max_steps, radius);
    SampleVerdict {
        energy,
        escaped_at: orbit.escaped_at,
        invariant: crate::tracemap::invariant(g),
    }
}

fn intervals_from_verdicts(verdicts: &[SampleVerdict]) -> Vec<Interval> {
    let mut intervals = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for v in verdicts {
        if v.escaped_at.is_none() {
            start.get_or_insert(v.energy);
            last = v.energy;
        } else if let Some(s) = start.take() {
            intervals.push((s, last));
        }
    }
    if let Some(s) = start {
        intervals.push((s, last));
    }
    intervals
}

/// Escape-time scan over a uniformly sampled window: each sample keeps its
/// orbit verdict and invariant value, and maximal runs of non-escaped
/// samples merge into retained intervals.
pub fn scan(
    model: &ModelSpec,
    window: &EnergyWindow,
    max_steps: usize,
    radius: f64,
) -> SpectrumApproximation {
    let verdicts: Vec<SampleVerdict> = (0..window.samples())
        .into_par_iter()
        .map(|i| verdict_at(model, window.energy(i), max_steps, radius))
        .collect();
    let intervals = intervals_from_verdicts(&verdicts);
    SpectrumApproximation {
        window: *window,
        verdicts,
        intervals,
        params: ScanParams {
            max_steps,
            radius,
            refine_tol: None,
        },
    }
}

/// Relocates every interior interval endpoint by bisection on the escape
/// verdict until the escaping/retained bracket is narrower than `tol`.
/// Endpoints on the window boundary have no escaping bracket side and stay
/// put. The model must be the one that produced `approx`.
pub fn refine_edges(
    model: &ModelSpec,
    approx: &SpectrumApproximation,
    tol: f64,
) -> Result<SpectrumApproximation, Error> {
    if !(tol > 0.0) {
        return Err(Error::NonpositiveTolerance(tol));
    }
    let ScanParams {
        max_steps, radius, ..
    } = approx.params;
    let escapes =
        |e: f64| verdict_at(model, e, max_steps, radius).escaped_at.is_some();
    let step = approx.window.step();

    let bisect = |mut outside: f64, mut inside: f64| -> f64 {
        // Invariant: `outside` escapes, `inside` does not; the returned
        // endpoint is the certified non-escaping side of the bracket.
        for _ in 0..200 {
            if (inside - outside).abs() <= tol {
                break;
            }
            let mid = 0.5 * (outside + inside);
            if mid == outside || mid == inside {
                break;
            }
            if escapes(mid) {
                outside = mid;
            } else {
                inside = mid;
            }
        }
        inside
    };

    let intervals: Vec<Interval> = approx
        .intervals
        .par_iter()
        .map(|&(lo, hi)| {
            // A run edge strictly inside the window has an escaping sample
            // one grid step outside it.
            let new_lo = if lo > approx.window.lo() {
                bisect(lo - step, lo)
            } else {
                lo
            };
            let new_hi = if hi < approx.window.hi() {
                bisect(hi + step, hi)
            } else {
                hi
            };
            (new_lo, new_hi)
        })
        .collect();

    Ok(SpectrumApproximation {
        window: approx.window,
        verdicts: approx.verdicts.clone(),
        intervals,
        params: ScanParams {
            max_steps,
            radius,
            refine_tol: Some(tol),
        },
    })
}

/// Per-sample invariant values over the window; no orbit iteration.
pub fn invariant_profile(model: &ModelSpec, window: &EnergyWindow) -> Vec<(f64, f64)> {
    (0..window.samples())
        .into_par_iter()
        .map(|i| {
            let e = window.energy(i);
            (e, invariant_of_energy(model, e))
        })
        .collect()
}

/// Per-sample invariant values on a logarithmically spaced grid; the window
/// bounds must be positive.
pub fn invariant_profile_log(
    model: &ModelSpec,
    window: &EnergyWindow,
) -> Result<Vec<(f64, f64)>, Error> {
    if !(window.lo() > 0.0) {
        return Err(Error::NonpositiveEnergy(window.lo()));
    }
    let (llo, lhi) = (window.lo().ln(), window.hi().ln());
    let n = window.samples();
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let e = if i + 1 == n {
                window.hi()
            } else {
                (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp()
            };
            (e, invariant_of_energy(model, e))
        })
        .collect())
}

/// For each coupling, the largest `|I(E)|` over the window's samples.
/// Couplings must be nonnegative; the sampled maximum is reported, not a
/// proven supremum.
pub fn lambda_sweep(
    model: &ModelSpec,
    lambdas: &[f64],
    window: &EnergyWindow,
) -> Result<Vec<(f64, f64)>, Error> {
    for &l in lambdas {
        if l < 0.0 {
            return Err(Error::NegativeLambda(l));
        }
    }
    Ok(lambdas
        .iter()
        .map(|&l| {
            let scaled = model.with_coupling(l);
            let sup = (0..window.samples())
                .into_par_iter()
                .map(|i| invariant_of_energy(&scaled, window.energy(i)).abs())
                .reduce(|| 0.0, f64::max);
            (l, sup)
        })
        .collect())
}

/// Band table of the level-`n` periodic approximant: the intervals where
/// the n-th half-trace of the word hierarchy lies in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandTable {
    pub level: usize,
    pub bands: Vec<Interval>,
}

/// Half-trace over the n-th substitution word, via the trace recursion
/// `t_{n+1} = 2 t_n t_{n-1} - t_{n-2}` seeded with `(t_1, t_0, t_{-1}) =
/// (x_ab, x_a, x_b)`.
pub fn half_trace_level(model: &ModelSpec, n: usize, energy: f64) -> f64 {
    let g = gamma(model, energy);
    match n {
        0 => g.y,
        1 => g.x,
        _ => {
            let (mut t2, mut t1, mut t0) = (g.z, g.y, g.x); // t_{-1}, t_0, t_1
            for _ in 1..n {
                (t2, t1, t0) = (t1, t0, 2.0 * t0 * t1 - t2);
            }
            t0
        }
    }
}

/// Finds the bands of the level-`n` approximant over the window by sign
/// changes of `|t_n| - 1` on the sample grid plus bisection; `n` must lie in
/// `1..=25`.
pub fn approximant_bands(
    model: &ModelSpec,
    n: usize,
    window: &EnergyWindow,
) -> Result<BandTable, Error> {
    if n == 0 || n > MAX_BAND_LEVEL {
        return Err(Error::InvalidLevel {
            level: n,
            max: MAX_BAND_LEVEL,
        });
    }
    let in_band: Vec<bool> = (0..window.samples())
        .into_par_iter()
        .map(|i| half_trace_level(model, n, window.energy(i)).abs() <= 1.0)
        .collect();

    // Bisect the in/out transition between two adjacent samples.
    let cross = |mut out_e: f64, mut in_e: f64| -> f64 {
        for _ in 0..60 {
            let mid = 0.5 * (out_e + in_e);
            if mid == out_e || mid == in_e {
                break;
            }
            if half_trace_level(model, n, mid).abs() <= 1.0 {
                in_e = mid;
            } else {
                out_e = mid;
            }
        }
        in_e
    };

    let mut bands = Vec::new();
    let mut start: Option<f64> = None;
    for i in 0..window.samples() {
        let e = window.energy(i);
        match (start, in_band[i]) {
            (None, true) => {
                start = Some(if i == 0 { e } else { cross(window.energy(i - 1), e) });
            }
            (Some(s), false) => {
                bands.push((s, cross(e, window.energy(i - 1))));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        bands.push((s, window.hi()));
    }
    Ok(BandTable { level: n, bands })
}
