//! Piecewise-constant potential pieces and their concatenations.
//!
//! A piece is a finite list of `(width, value)` cells laid end to end; the
//! two model pieces are labeled `a` and `b`, and `ab` denotes piece `a`
//! followed by piece `b`. Piecewise-constant cells are the native
//! representation because the propagator has closed forms on constant cells;
//! square-integrable pieces enter through [`sample_piece`] at user-chosen
//! resolution.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;
use crate::word::{Letter, Word};

/// Relative tolerance for the cell-width sum against the stated length.
const LENGTH_REL_TOL: f64 = 1e-12;

/// Tag identifying which slot of the model a piece fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceLabel {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "ab")]
    Ab,
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PieceLabel::A => "a",
            PieceLabel::B => "b",
            PieceLabel::Ab => "ab",
        })
    }
}

/// A labeled, finite-length, piecewise-constant potential segment.
///
/// Invariants enforced at construction: cells nonempty, every width
/// positive, and the width sum equal to `length` within 1e-12 relative
/// tolerance. Values are immutable afterwards, so pieces are safe to share
/// across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialPiece {
    label: PieceLabel,
    length: f64,
    cells: Vec<(f64, f64)>,
}

impl PotentialPiece {
    /// Builds a piece whose length is the cell-width sum.
    pub fn new(label: PieceLabel, cells: Vec<(f64, f64)>) -> Result<Self, Error> {
        let length = compensated_width_sum(&cells)?;
        Self::with_length(label, length, cells)
    }

    /// Builds a piece with an explicitly stated length, validated against
    /// the cell widths.
    pub fn with_length(label: PieceLabel, length: f64, cells: Vec<(f64, f64)>) -> Result<Self, Error> {
        if !(length > 0.0) {
            return Err(Error::NonpositiveLength { length });
        }
        let sum = compensated_width_sum(&cells)?;
        if (sum - length).abs() > LENGTH_REL_TOL * length.abs() {
            return Err(Error::LengthMismatch { length, sum });
        }
        Ok(PotentialPiece { label, length, cells })
    }

    pub fn label(&self) -> PieceLabel {
        self.label
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cells(&self) -> &[(f64, f64)] {
        &self.cells
    }

    /// Pointwise value at `x`; zero outside `[0, length)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        if x < 0.0 || x >= self.length {
            return 0.0;
        }
        let mut edge = 0.0;
        for &(w, v) in &self.cells {
            edge += w;
            if x < edge {
                return v;
            }
        }
        // x < length but accumulated rounding left it past the last edge.
        self.cells.last().map(|&(_, v)| v).unwrap_or(0.0)
    }

    /// Same cell widths, values multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> PotentialPiece {
        PotentialPiece {
            label: self.label,
            length: self.length,
            cells: self.cells.iter().map(|&(w, v)| (w, lambda * v)).collect(),
        }
    }

    /// L2 norm: sqrt of the width-weighted sum of squared values.
    pub fn l2_norm(&self) -> f64 {
        self.cells
            .iter()
            .map(|&(w, v)| w * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Parses the piece-definition JSON schema:
    /// `{"label", "length", "cells": [[width, value], ...]}` or
    /// `{"label", "length", "samples": [v0, v1, ...]}`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let file: PieceFile =
            serde_json::from_str(text).map_err(|e| Error::PieceFile(e.to_string()))?;
        file.into_piece()
    }
}

// Serializes in the canonical file form `{label, length, cells}`.
impl Serialize for PotentialPiece {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PotentialPiece", 3)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("length", &self.length)?;
        s.serialize_field("cells", &self.cells)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct PieceFile {
    label: PieceLabel,
    length: f64,
    #[serde(default)]
    cells: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    samples: Option<Vec<f64>>,
}

impl PieceFile {
    fn into_piece(self) -> Result<PotentialPiece, Error> {
        match (self.cells, self.samples) {
            (Some(cells), None) => PotentialPiece::with_length(self.label, self.length, cells),
            (None, Some(samples)) => sample_piece(self.label, &samples, self.length),
            (Some(_), Some(_)) => Err(Error::PieceFile(
                "fields `cells` and `samples` are mutually exclusive".into(),
            )),
            (None, None) => Err(Error::PieceFile(
                "one of the fields `cells` or `samples` is required".into(),
            )),
        }
    }
}

fn compensated_width_sum(cells: &[(f64, f64)]) -> Result<f64, Error> {
    if cells.is_empty() {
        return Err(Error::EmptyCells);
    }
    // Kahan summation: the 1e-12 length gate must not absorb O(n*eps) drift
    // from fine sample grids.
    let mut sum = 0.0;
    let mut carry = 0.0;
    for (index, &(w, _)) in cells.iter().enumerate() {
        if !(w > 0.0) {
            return Err(Error::NonpositiveCellWidth { index, width: w });
        }
        let y = w - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Concatenates piece `a` and piece `b` into the combined piece `ab`.
pub fn make_ab(pa: &PotentialPiece, pb: &PotentialPiece) -> PotentialPiece {
    assert_eq!(pa.label(), PieceLabel::A, "make_ab expects an `a` piece first");
    assert_eq!(pb.label(), PieceLabel::B, "make_ab expects a `b` piece second");
    let mut cells = pa.cells.clone();
    cells.extend_from_slice(&pb.cells);
    PotentialPiece {
        label: PieceLabel::Ab,
        length: pa.length + pb.length,
        cells,
    }
}

/// Equal-width cells taking tabulated values over `[0, length)`.
pub fn sample_piece(label: PieceLabel, values: &[f64], length: f64) -> Result<PotentialPiece, Error> {
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(length > 0.0) {
        return Err(Error::NonpositiveLength { length });
    }
    let w = length / values.len() as f64;
    let cells = values.iter().map(|&v| (w, v)).collect();
    PotentialPiece::with_length(label, length, cells)
}

/// A potential assembled by laying pieces end to end along a word, with
/// breakpoints `s_0 = 0 < s_1 < ...` at the piece boundaries.
#[derive(Debug, Clone)]
pub struct ConcatenatedPotential {
    word: Word,
    pieces: BTreeMap<Letter, PotentialPiece>,
    breakpoints: Vec<f64>,
}

impl ConcatenatedPotential {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Breakpoints `s_0, ..., s_N`; one more entry than the word has letters.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn total_length(&self) -> f64 {
        *self.breakpoints.last().unwrap_or(&0.0)
    }

    /// Pointwise value: `f(x) = f_n(x - s_n)` on `[s_n, s_{n+1})`, zero
    /// outside the assembled range.
    pub fn evaluate(&self, x: f64) -> f64 {
        if x < 0.0 || x >= self.total_length() || self.word.is_empty() {
            return 0.0;
        }
        // First breakpoint strictly above x, minus one, is the active segment.
        let n = self.breakpoints.partition_point(|&s| s <= x) - 1;
        let letter = self.word.letters()[n.min(self.word.len() - 1)];
        self.pieces[&letter].evaluate(x - self.breakpoints[n])
    }
}

/// Lays the assigned pieces end to end along `word`.
pub fn concatenate(
    word: &Word,
    pieces: &BTreeMap<Letter, PotentialPiece>,
) -> Result<ConcatenatedPotential, Error> {
    let mut breakpoints = Vec::with_capacity(word.len() + 1);
    breakpoints.push(0.0);
    let mut s = 0.0;
    for &l in word.letters() {
        let piece = pieces.get(&l).ok_or(Error::MissingPiece(l))?;
        s += piece.length();
        breakpoints.push(s);
    }
    Ok(ConcatenatedPotential {
        word: word.clone(),
        pieces: pieces.clone(),
        breakpoints,
    })
}

/// Breakpoint of a two-sided concatenation with per-index segment lengths:
/// zero at the origin, the running length sum to the right, minus the
/// running sum to the left. Spectrum algorithms consume only the one-sided
/// part (n >= 0); the negative branch exists for completeness.
pub fn two_sided_breakpoint(lengths: impl Fn(i64) -> f64, n: i64) -> f64 {
    match n {
        0 => 0.0,
        _ if n > 0 => (0..n).map(&lengths).sum(),
        _ => -(n..0).map(&lengths).sum::<f64>(),
    }
}

/// The model: the two potential pieces plus a coupling constant applied
/// multiplicatively to both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSpec {
    piece_a: PotentialPiece,
    piece_b: PotentialPiece,
    coupling: f64,
}

impl ModelSpec {
    pub fn new(piece_a: PotentialPiece, piece_b: PotentialPiece, coupling: f64) -> Result<Self, Error> {
        if piece_a.label() != PieceLabel::A {
            return Err(Error::WrongLabel {
                expected: "a",
                got: piece_a.label().to_string(),
            });
        }
        if piece_b.label() != PieceLabel::B {
            return Err(Error::WrongLabel {
                expected: "b",
                got: piece_b.label().to_string(),
            });
        }
        Ok(ModelSpec {
            piece_a,
            piece_b,
            coupling,
        })
    }

    /// Zero potentials of the given piece lengths.
    pub fn free(ell_a: f64, ell_b: f64) -> Result<Self, Error> {
        Self::new(
            PotentialPiece::new(PieceLabel::A, vec![(ell_a, 0.0)])?,
            PotentialPiece::new(PieceLabel::B, vec![(ell_b, 0.0)])?,
            1.0,
        )
    }

    /// Unit-length pieces: a barrier of height one on `a`, zero on `b`.
    pub fn unit_barrier(coupling: f64) -> Self {
        Self::new(
            PotentialPiece::new(PieceLabel::A, vec![(1.0, 1.0)]).unwrap(),
            PotentialPiece::new(PieceLabel::B, vec![(1.0, 0.0)]).unwrap(),
            coupling,
        )
        .unwrap()
    }

    pub fn piece_a(&self) -> &PotentialPiece {
        &self.piece_a
    }

    pub fn piece_b(&self) -> &PotentialPiece {
        &self.piece_b
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn with_coupling(&self, coupling: f64) -> ModelSpec {
        ModelSpec {
            piece_a: self.piece_a.clone(),
            piece_b: self.piece_b.clone(),
            coupling,
        }
    }

    /// Piece `a` with the coupling applied.
    pub fn scaled_a(&self) -> PotentialPiece {
        self.piece_a.scaled(self.coupling)
    }

    /// Piece `b` with the coupling applied.
    pub fn scaled_b(&self) -> PotentialPiece {
        self.piece_b.scaled(self.coupling)
    }

    /// The combined piece `ab` with the coupling applied.
    pub fn scaled_ab(&self) -> PotentialPiece {
        make_ab(&self.scaled_a(), &self.scaled_b())
    }
}
