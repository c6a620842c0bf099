//! Transfer matrices of `-y'' + f y = E y` across potential pieces.
//!
//! On a constant cell the fundamental solutions are trigonometric or
//! hyperbolic in closed form, so a piecewise-constant piece propagates as an
//! ordered product of closed-form cell matrices. Columns carry (Neumann,
//! Dirichlet) boundary data: `[[y_N(l), y_D(l)], [y_N'(l), y_D'(l)]]`.

use serde::Serialize;

use crate::error::Error;
use crate::potential::PotentialPiece;

/// Below this |E - v| the closed forms switch to Taylor expansions around
/// the turning value to stay continuous in E.
const TURNING_TOL: f64 = 1e-9;

/// Real unimodular 2x2 solution matrix at a fixed energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    pub energy: f64,
}

impl TransferMatrix {
    pub fn identity(energy: f64) -> Self {
        TransferMatrix {
            m11: 1.0,
            m12: 0.0,
            m21: 0.0,
            m22: 1.0,
            energy,
        }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn half_trace(&self) -> f64 {
        0.5 * (self.m11 + self.m22)
    }

    /// Matrix product `self * rhs` (applies `rhs` first).
    pub fn compose(&self, rhs: &TransferMatrix) -> TransferMatrix {
        debug_assert_eq!(self.energy, rhs.energy);
        TransferMatrix {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
            energy: self.energy,
        }
    }
}

impl std::ops::Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        self.compose(&rhs)
    }
}

/// Closed-form transfer matrix across one constant cell of value `v` and
/// width `h` at energy `energy`.
pub fn constant_step(v: f64, h: f64, energy: f64) -> Result<TransferMatrix, Error> {
    if !(h > 0.0) {
        return Err(Error::NonpositiveStep(h));
    }
    Ok(constant_step_unchecked(v, h, energy))
}

pub(crate) fn constant_step_unchecked(v: f64, h: f64, energy: f64) -> TransferMatrix {
    let w = energy - v; // k^2
    let (c, s) = if w.abs() < TURNING_TOL {
        // Taylor forms of cos(kh) and sin(kh)/k in w = k^2; m21 = -w * s in
        // every branch, which keeps the matrix continuous across w = 0.
        let h2 = h * h;
        let wh2 = w * h2;
        let c = 1.0 + wh2 * (-0.5 + wh2 * (1.0 / 24.0 - wh2 / 720.0));
        let s = h * (1.0 + wh2 * (-1.0 / 6.0 + wh2 * (1.0 / 120.0 - wh2 / 5040.0)));
        (c, s)
    } else if w > 0.0 {
        let k = w.sqrt();
        let kh = k * h;
        (kh.cos(), kh.sin() / k)
    } else {
        let mu = (-w).sqrt();
        let muh = mu * h;
        (muh.cosh(), muh.sinh() / mu)
    };
    TransferMatrix {
        m11: c,
        m12: s,
        m21: -w * s,
        m22: c,
        energy,
    }
}

/// Transfer matrix across a whole piece: the ordered product of cell
/// matrices, last cell leftmost.
pub fn transfer_matrix(piece: &PotentialPiece, energy: f64) -> TransferMatrix {
    let mut acc = TransferMatrix::identity(energy);
    for &(w, v) in piece.cells() {
        acc = constant_step_unchecked(v, w, energy).compose(&acc);
    }
    acc
}

/// Half of the matrix trace.
pub fn half_trace(m: &TransferMatrix) -> f64 {
    m.half_trace()
}

/// High-energy comparison data: wavenumber, free half-trace, and the
/// a-priori constant bounding the deviation of solution data from the free
/// forms, `|x(E) - cos(kappa * l)| <= bound_constant / kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonData {
    pub kappa: f64,
    pub c_of_ell: f64,
    pub bound_constant: f64,
    pub norm_q: f64,
}

/// Comparison bound for piece `p` within a model whose combined piece is
/// `p_ab`: `Q = max(||f_ab||, 1)` and `bound_constant = Q exp(Q sqrt(l_ab))`.
pub fn comparison_bound(
    p: &PotentialPiece,
    p_ab: &PotentialPiece,
    energy: f64,
) -> Result<ComparisonData, Error> {
    if !(energy > 0.0) {
        return Err(Error::NonpositiveEnergy(energy));
    }
    let kappa = energy.sqrt();
    let norm_q = p_ab.l2_norm().max(1.0);
    Ok(ComparisonData {
        kappa,
        c_of_ell: (kappa * p.length()).cos(),
        bound_constant: norm_q * (norm_q * p_ab.length().sqrt()).exp(),
        norm_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{make_ab, ModelSpec, PieceLabel, PotentialPiece};

    const PI: f64 = std::f64::consts::PI;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn free_cell_at_pi_squared() {
        let m = constant_step(0.0, 1.0, PI * PI).unwrap();
        assert_close(m.m11, -1.0, 1e-12);
        assert_close(m.m12, 0.0, 1e-12);
        assert_close(m.m21, 0.0, 1e-11);
        assert_close(m.m22, -1.0, 1e-12);
    }

    #[test]
    fn turning_value_cell() {
        let m = constant_step(0.0, 1.0, 0.0).unwrap();
        assert_eq!((m.m11, m.m12, m.m21, m.m22), (1.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn tunneling_cell() {
        // v=1, h=1, E=0: hyperbolic branch.
        let m = constant_step(1.0, 1.0, 0.0).unwrap();
        assert_close(m.m11, 1.5430806, 1e-7);
        assert_close(m.m12, 1.1752012, 1e-7);
        assert_close(m.m21, 1.1752012, 1e-7);
        assert_close(m.m22, 1.5430806, 1e-7);
        assert_close(m.m11, 1.0f64.cosh(), 1e-15);
        assert_close(m.m12, 1.0f64.sinh(), 1e-15);
    }

    #[test]
    fn continuity_across_turning_value() {
        // The Taylor branch must join the trig/hyperbolic branches smoothly.
        let h = 1.7;
        let v = 0.3;
        let inside = constant_step_unchecked(v, h, v + 0.5e-9);
        let trig = constant_step_unchecked(v, h, v + 2e-9);
        let hyp = constant_step_unchecked(v, h, v - 2e-9);
        for (x, y) in [
            (inside.m11, trig.m11),
            (inside.m12, trig.m12),
            (inside.m21, hyp.m21),
            (inside.m22, hyp.m22),
        ] {
            assert_close(x, y, 1e-8);
        }
    }

    #[test]
    fn nonpositive_step_rejected() {
        assert!(matches!(constant_step(0.0, 0.0, 1.0), Err(Error::NonpositiveStep(_))));
        assert!(matches!(constant_step(0.0, -1.0, 1.0), Err(Error::NonpositiveStep(_))));
    }

    #[test]
    fn free_piece_closed_form() {
        let p = PotentialPiece::new(PieceLabel::A, vec![(1.0, 0.0)]).unwrap();
        for &e in &[0.3f64, 2.0, 17.5, 400.0] {
            let k = e.sqrt();
            let m = transfer_matrix(&p, e);
            assert_close(m.m11, k.cos(), 1e-14);
            assert_close(m.m12, k.sin() / k, 1e-14);
            assert_close(m.m21, -k * k.sin(), 1e-13);
            assert_close(m.half_trace(), k.cos(), 1e-14);
        }
    }

    #[test]
    fn barrier_piece_at_e2() {
        // Unit barrier piece at E=2: k^2 = 1.
        let p = ModelSpec::unit_barrier(1.0).scaled_a();
        let m = transfer_matrix(&p, 2.0);
        assert_close(m.m11, 0.5403023, 1e-7);
        assert_close(m.m12, 0.8414710, 1e-7);
        assert_close(m.m21, -0.8414710, 1e-7);
        assert_close(m.m22, 0.5403023, 1e-7);
    }

    #[test]
    fn cell_products_associate() {
        let two = PotentialPiece::new(PieceLabel::A, vec![(0.7, 1.3), (0.5, -0.4)]).unwrap();
        let first = PotentialPiece::new(PieceLabel::A, vec![(0.7, 1.3)]).unwrap();
        let second = PotentialPiece::new(PieceLabel::A, vec![(0.5, -0.4)]).unwrap();
        for &e in &[-3.0, 0.0, 1.3, 25.0] {
            let joint = transfer_matrix(&two, e);
            let split = transfer_matrix(&second, e).compose(&transfer_matrix(&first, e));
            assert_close(joint.m11, split.m11, 1e-14);
            assert_close(joint.m12, split.m12, 1e-14);
            assert_close(joint.m21, split.m21, 1e-14);
            assert_close(joint.m22, split.m22, 1e-14);
        }
    }

    #[test]
    fn ab_factorization() {
        let pa = PotentialPiece::new(PieceLabel::A, vec![(0.8, 2.0), (0.4, -1.0)]).unwrap();
        let pb = PotentialPiece::new(PieceLabel::B, vec![(1.1, 0.7)]).unwrap();
        let ab = make_ab(&pa, &pb);
        for i in 0..200 {
            let e = -5.0 + i as f64 * 0.5;
            let lhs = transfer_matrix(&ab, e);
            let rhs = transfer_matrix(&pb, e).compose(&transfer_matrix(&pa, e));
            assert_close(lhs.m11, rhs.m11, 1e-10);
            assert_close(lhs.m12, rhs.m12, 1e-10);
            assert_close(lhs.m21, rhs.m21, 1e-10);
            assert_close(lhs.m22, rhs.m22, 1e-10);
        }
    }

    #[test]
    fn half_trace_examples() {
        assert_eq!(half_trace(&TransferMatrix::identity(0.0)), 1.0);
        let p = PotentialPiece::new(PieceLabel::A, vec![(1.0, 0.0)]).unwrap();
        assert_close(half_trace(&transfer_matrix(&p, PI * PI)), -1.0, 1e-12);
    }

    #[test]
    fn free_half_trace_is_cosine_both_sides() {
        let p = PotentialPiece::new(PieceLabel::A, vec![(0.6, 0.0), (0.9, 0.0)]).unwrap();
        for &e in &[0.5, 3.0, 1e4] {
            assert_close(
                half_trace(&transfer_matrix(&p, e)),
                (e.sqrt() * 1.5).cos(),
                1e-11,
            );
        }
        for &e in &[-0.5, -3.0] {
            assert_close(
                half_trace(&transfer_matrix(&p, e)),
                ((-e).sqrt() * 1.5).cosh(),
                1e-10,
            );
        }
    }

    #[test]
    fn comparison_bound_free_model() {
        let model = ModelSpec::free(1.0, 1.0).unwrap();
        let ab = model.scaled_ab();
        let data = comparison_bound(&model.scaled_a(), &ab, 7.3).unwrap();
        assert_eq!(data.norm_q, 1.0);
        assert_close(data.bound_constant, 4.1132503, 1e-7);
        assert_close(data.bound_constant, 2.0f64.sqrt().exp(), 1e-12);
        // Free traces are exactly cosines, so the deviation is zero.
        let x = half_trace(&transfer_matrix(&model.scaled_a(), 7.3));
        assert!((x - data.c_of_ell).abs() <= data.bound_constant / data.kappa);
        assert_close(x, data.c_of_ell, 1e-14);
    }

    #[test]
    fn comparison_bound_barrier_model() {
        let model = ModelSpec::unit_barrier(1.0);
        let ab = model.scaled_ab();
        assert_close(ab.l2_norm(), 1.0, 1e-15);
        for &e in &[100.0, 1e4] {
            for p in [model.scaled_a(), model.scaled_b(), ab.clone()] {
                let data = comparison_bound(&p, &ab, e).unwrap();
                let x = half_trace(&transfer_matrix(&p, e));
                assert!(
                    (x - data.c_of_ell).abs() <= data.bound_constant / data.kappa,
                    "piece {:?} at E={e}",
                    p.label()
                );
            }
        }
        // E = 1e4: the bound on the `a` deviation is C/100 ~ 0.0411.
        let data = comparison_bound(&model.scaled_a(), &ab, 1e4).unwrap();
        assert_close(data.bound_constant / data.kappa, 0.0411325, 1e-6);
        assert_close(data.c_of_ell, 100.0f64.cos(), 1e-15);
    }

    #[test]
    fn nonpositive_energy_rejected() {
        let model = ModelSpec::unit_barrier(1.0);
        let ab = model.scaled_ab();
        assert!(matches!(
            comparison_bound(&ab, &ab, 0.0),
            Err(Error::NonpositiveEnergy(_))
        ));
    }
}
