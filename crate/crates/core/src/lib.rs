//! Spectral computations for one-dimensional Schrödinger operators whose
//! potentials concatenate two compactly supported pieces along a Fibonacci
//! substitution word.
//!
//! The pipeline: [`word`] generates substitution words, [`potential`] builds
//! piecewise-constant potentials from the two pieces, [`propagator`] turns a
//! piece into its 2×2 transfer matrix at a given energy, [`tracemap`] drives
//! the cubic trace map acting on half-trace triples, [`spectrum`] approximates
//! the spectrum as the set of energies with bounded trace-map orbits, and
//! [`fractal`] estimates box-counting dimensions of the resulting interval
//! sets.
//!
//! All computational entry points are pure functions of value types and are
//! safe to call concurrently; energy scans parallelize internally via rayon
//! and merge results in energy order, so outputs are independent of the
//! thread schedule.

pub mod error;
pub mod fit;
pub mod fractal;
pub mod output;
pub mod potential;
pub mod propagator;
pub mod spectrum;
pub mod tracemap;
pub mod word;

pub use error::Error;
pub use potential::{concatenate, make_ab, sample_piece, ModelSpec, PieceLabel, PotentialPiece};
pub use propagator::{comparison_bound, constant_step, half_trace, transfer_matrix, TransferMatrix};
pub use spectrum::{
    approximant_bands, invariant_profile, lambda_sweep, refine_edges, scan, EnergyWindow,
    SpectrumApproximation,
};
pub use tracemap::{gamma, invariant, invariant_of_energy, iterate_orbit, trace_map_step, TraceTriple};
pub use word::{fibonacci_word, is_factor_of_u, substitute, Letter, Word};

/// A closed interval `[lo, hi]` on the energy axis.
pub type Interval = (f64, f64);
