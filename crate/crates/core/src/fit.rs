//! Ordinary least squares on small point sets, plus the log-log envelope
//! fit used for decay-rate estimates.

/// Slope, intercept, and coefficient of determination of a straight-line fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OlsFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Unweighted least squares of `y` against `x`. Returns `None` for fewer
/// than two points or a degenerate abscissa.
pub fn ols(xs: &[f64], ys: &[f64]) -> Option<OlsFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(OlsFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Log-log slope of the upper envelope of `|y|` against `x`.
///
/// Oscillatory profiles cross zero, so a raw log-log fit is dominated by the
/// dips; instead the positive-`x` points are split into `bins` logarithmic
/// bins, the largest `|y|` per bin is kept, and the fit runs on those
/// envelope points.
pub fn loglog_envelope(points: &[(f64, f64)], bins: usize) -> Option<OlsFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y.abs() > 0.0 && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.abs()))
        .collect();
    if usable.len() < 2 || bins < 2 {
        return None;
    }
    let lo = usable.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = usable.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return None;
    }
    let mut best: Vec<Option<(f64, f64)>> = vec![None; bins];
    for &(lx, ay) in &usable {
        let i = (((lx - lo) / (hi - lo) * bins as f64) as usize).min(bins - 1);
        if best[i].map_or(true, |(_, b)| ay > b) {
            best[i] = Some((lx, ay));
        }
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = best
        .into_iter()
        .flatten()
        .map(|(lx, ay)| (lx, ay.ln()))
        .unzip();
    ols(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        let fit = ols(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!(fit.intercept.abs() < 1e-13);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(ols(&[1.0], &[1.0]).is_none());
        assert!(ols(&[2.0, 2.0], &[1.0, 3.0]).is_none());
    }

    #[test]
    fn envelope_recovers_power_law() {
        // |y| = x^{-2} |sin x| has an x^{-2} envelope.
        let points: Vec<(f64, f64)> = (0..5000)
            .map(|i| {
                let x = 10.0f64 * 1.002f64.powi(i);
                (x, x.powi(-2) * x.sin())
            })
            .collect();
        let fit = loglog_envelope(&points, 25).unwrap();
        assert!((fit.slope + 2.0).abs() < 0.05, "slope = {}", fit.slope);
        assert!(fit.r_squared > 0.99);
    }
}
