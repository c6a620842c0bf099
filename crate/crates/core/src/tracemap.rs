//! The cubic trace map `(x, y, z) -> (2xy - z, x, y)`, its conserved
//! quantity, and escape-time orbit iteration.
//!
//! For a model, the curve of initial conditions sends an energy to the
//! triple of half-traces over the combined piece `ab` and the pieces `a`,
//! `b`; an energy belongs to the spectrum exactly when its forward orbit
//! under the trace map stays bounded.

use serde::Serialize;

use crate::potential::ModelSpec;
use crate::propagator::transfer_matrix;

/// Default iteration depth for spectrum scans. Surviving 40 steps certifies
/// trace boundedness over words of Fibonacci length near 1e8, far beyond any
/// desk-scale resolution of spectral gaps.
pub const DEFAULT_MAX_STEPS: usize = 40;

/// Default sup-norm escape backstop.
pub const DEFAULT_ESCAPE_RADIUS: f64 = 1e6;

/// A point of the trace-map phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TraceTriple {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        TraceTriple { x, y, z }
    }

    pub fn sup_norm(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// One forward step: `(x, y, z) -> (2xy - z, x, y)`.
pub fn trace_map_step(p: TraceTriple) -> TraceTriple {
    TraceTriple::new(2.0 * p.x * p.y - p.z, p.x, p.y)
}

/// The explicit inverse `(x, y, z) -> (y, z, 2yz - x)`; the map is a
/// polynomial diffeomorphism.
pub fn trace_map_inverse(p: TraceTriple) -> TraceTriple {
    TraceTriple::new(p.y, p.z, 2.0 * p.y * p.z - p.x)
}

/// Conserved quantity `x^2 + y^2 + z^2 - 2xyz - 1`.
pub fn invariant(p: TraceTriple) -> f64 {
    p.x * p.x + p.y * p.y + p.z * p.z - 2.0 * p.x * p.y * p.z - 1.0
}

/// Curve of initial conditions: half-traces over the coupled pieces
/// `(ab, a, b)` at the given energy.
pub fn gamma(model: &ModelSpec, energy: f64) -> TraceTriple {
    TraceTriple::new(
        transfer_matrix(&model.scaled_ab(), energy).half_trace(),
        transfer_matrix(&model.scaled_a(), energy).half_trace(),
        transfer_matrix(&model.scaled_b(), energy).half_trace(),
    )
}

/// The conserved quantity evaluated on the curve of initial conditions.
pub fn invariant_of_energy(model: &ModelSpec, energy: f64) -> f64 {
    invariant(gamma(model, energy))
}

/// Outcome of iterating a forward orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitResult {
    /// Number of trace-map applications performed.
    pub iterates_computed: usize,
    /// Step index at which the escape criterion fired; step 0 is the
    /// starting triple itself.
    pub escaped_at: Option<usize>,
    /// Running sup-norm over the finite triples visited.
    pub max_norm: f64,
    pub final_triple: TraceTriple,
}

/// Iterates the trace map from `start`, declaring escape when two
/// consecutive leading coordinates exceed one in absolute value (the
/// sufficient growth condition for this map) or when the sup-norm passes
/// `radius`; non-finite arithmetic counts as escape, never as an error.
pub fn iterate_orbit(start: TraceTriple, max_steps: usize, radius: f64) -> OrbitResult {
    assert!(max_steps >= 1, "max_steps must be at least 1");
    assert!(radius > 1.0, "escape radius must exceed 1");
    let mut p = start;
    let mut max_norm: f64 = 0.0;
    let mut steps = 0;
    loop {
        if !p.is_finite() {
            return OrbitResult {
                iterates_computed: steps,
                escaped_at: Some(steps),
                max_norm,
                final_triple: p,
            };
        }
        max_norm = max_norm.max(p.sup_norm());
        // In the current triple, x and y are consecutive leading coordinates
        // of the half-trace sequence.
        if (p.x.abs() > 1.0 && p.y.abs() > 1.0) || p.sup_norm() > radius {
            return OrbitResult {
                iterates_computed: steps,
                escaped_at: Some(steps),
                max_norm,
                final_triple: p,
            };
        }
        if steps == max_steps {
            return OrbitResult {
                iterates_computed: steps,
                escaped_at: None,
                max_norm,
                final_triple: p,
            };
        }
        p = trace_map_step(p);
        steps += 1;
    }
}
