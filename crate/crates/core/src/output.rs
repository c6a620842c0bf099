//! CSV and JSON emitters for scan results and dimension reports.
//!
//! Every floating-point value is printed with 17 significant digits so the
//! files round-trip exactly, and every file embeds the parameter set that
//! produced it. Identical inputs yield byte-identical files.

use std::io::{self, Write};

use serde::Serialize;

use crate::fractal::{ConsistencyReport, DimensionEstimate};
use crate::potential::ModelSpec;
use crate::spectrum::SpectrumApproximation;
use crate::Interval;

/// Round-trip-safe float rendering: 17 significant digits.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value as JSON with 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> io::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    String::from_utf8(buf).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

fn write_model_preamble(out: &mut dyn Write, model: &ModelSpec) -> io::Result<()> {
    writeln!(out, "# coupling={}", float17(model.coupling()))?;
    writeln!(out, "# piece_a={}", to_json_string(model.piece_a())?)?;
    writeln!(out, "# piece_b={}", to_json_string(model.piece_b())?)?;
    Ok(())
}

/// Samples CSV: one row per sample, `E,escaped_at,invariant`, with
/// `escaped_at` empty for retained samples. Parameters ride along as `#`
/// comment lines.
pub fn write_samples_csv(
    out: &mut dyn Write,
    model: &ModelSpec,
    approx: &SpectrumApproximation,
) -> io::Result<()> {
    write_model_preamble(out, model)?;
    writeln!(
        out,
        "# window={}:{} samples={}",
        float17(approx.window.lo()),
        float17(approx.window.hi()),
        approx.window.samples()
    )?;
    writeln!(
        out,
        "# max_steps={} radius={}",
        approx.params.max_steps,
        float17(approx.params.radius)
    )?;
    writeln!(out, "E,escaped_at,invariant")?;
    for v in &approx.verdicts {
        let esc = v.escaped_at.map(|n| n.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{}", float17(v.energy), esc, float17(v.invariant))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct IntervalsParams<'a> {
    coupling: f64,
    piece_a: &'a crate::potential::PotentialPiece,
    piece_b: &'a crate::potential::PotentialPiece,
    window: [f64; 2],
    samples: usize,
    max_steps: usize,
    radius: f64,
    refine_tol: Option<f64>,
}

#[derive(Serialize)]
struct IntervalsDocument<'a> {
    params: IntervalsParams<'a>,
    intervals: &'a [Interval],
}

/// Interval table JSON: `{"params": {...}, "intervals": [[lo, hi], ...]}`.
pub fn intervals_json(model: &ModelSpec, approx: &SpectrumApproximation) -> io::Result<String> {
    to_json_string(&IntervalsDocument {
        params: IntervalsParams {
            coupling: model.coupling(),
            piece_a: model.piece_a(),
            piece_b: model.piece_b(),
            window: [approx.window.lo(), approx.window.hi()],
            samples: approx.window.samples(),
            max_steps: approx.params.max_steps,
            radius: approx.params.radius,
            refine_tol: approx.params.refine_tol,
        },
        intervals: &approx.intervals,
    })
}

/// Invariant-profile CSV: `E,invariant` rows, with an optional trailing
/// comment carrying the fitted log-log envelope slope.
pub fn write_profile_csv(
    out: &mut dyn Write,
    model: &ModelSpec,
    profile: &[(f64, f64)],
    fit: Option<&crate::fit::OlsFit>,
) -> io::Result<()> {
    write_model_preamble(out, model)?;
    writeln!(out, "E,invariant")?;
    for &(e, i) in profile {
        writeln!(out, "{},{}", float17(e), float17(i))?;
    }
    if let Some(f) = fit {
        writeln!(
            out,
            "# fit_slope={} fit_r2={}",
            float17(f.slope),
            float17(f.r_squared)
        )?;
    }
    Ok(())
}

/// Coupling-sweep CSV: `lambda,sup_abs_invariant` rows plus the sample
/// count that produced each sampled maximum.
pub fn write_sweep_csv(
    out: &mut dyn Write,
    model: &ModelSpec,
    samples: usize,
    table: &[(f64, f64)],
) -> io::Result<()> {
    write_model_preamble(out, model)?;
    writeln!(out, "# samples_per_lambda={samples}")?;
    writeln!(out, "lambda,sup_abs_invariant")?;
    for &(l, s) in table {
        writeln!(out, "{},{}", float17(l), float17(s))?;
    }
    Ok(())
}

/// Per-window box-count CSV: `epsilon,count` rows.
pub fn write_boxcount_csv(
    out: &mut dyn Write,
    window: Interval,
    estimate: &DimensionEstimate,
) -> io::Result<()> {
    writeln!(out, "# window={}:{}", float17(window.0), float17(window.1))?;
    writeln!(
        out,
        "# scale_range={}:{}",
        float17(estimate.scale_range.0),
        float17(estimate.scale_range.1)
    )?;
    writeln!(out, "epsilon,count")?;
    for &(eps, n) in &estimate.counts {
        writeln!(out, "{},{n}", float17(eps))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DimensionParams<'a> {
    coupling: f64,
    piece_a: &'a crate::potential::PotentialPiece,
    piece_b: &'a crate::potential::PotentialPiece,
    samples: usize,
    max_steps: usize,
    radius: f64,
    eps_points: usize,
}

#[derive(Serialize)]
struct DimensionDocument<'a> {
    params: DimensionParams<'a>,
    #[serde(flatten)]
    report: &'a ConsistencyReport,
}

/// Dimension report JSON with the full parameter set and the estimator's
/// proxy status embedded.
#[allow(clippy::too_many_arguments)]
pub fn dimension_report_json(
    model: &ModelSpec,
    samples: usize,
    max_steps: usize,
    radius: f64,
    eps_points: usize,
    report: &ConsistencyReport,
) -> io::Result<String> {
    to_json_string(&DimensionDocument {
        params: DimensionParams {
            coupling: model.coupling(),
            piece_a: model.piece_a(),
            piece_b: model.piece_b(),
            samples,
            max_steps,
            radius,
            eps_points,
        },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::ModelSpec;
    use crate::spectrum::{scan, EnergyWindow};

    #[test]
    fn float17_round_trips() {
        for &x in &[
            0.1,
            -3.0,
            std::f64::consts::PI,
            1e-300,
            123456.789,
            2.0f64.sqrt(),
        ] {
            let s = float17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn samples_csv_shape() {
        let model = ModelSpec::unit_barrier(1.0);
        let window = EnergyWindow::new(0.0, 2.0, 5).unwrap();
        let approx = scan(&model, &window, 40, 1e6);
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &model, &approx).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# coupling="));
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "E,escaped_at,invariant");
        assert_eq!(data.len(), 6);
        // A retained row has an empty middle field.
        assert!(data.iter().any(|l| l.contains(",,")));
        for row in &data[1..] {
            assert_eq!(row.split(',').count(), 3);
        }
    }

    #[test]
    fn intervals_json_parses_back() {
        let model = ModelSpec::free(1.0, 1.0).unwrap();
        let window = EnergyWindow::new(0.1, 5.0, 50).unwrap();
        let approx = scan(&model, &window, 40, 1e6);
        let text = intervals_json(&model, &approx).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["intervals"].as_array().unwrap().len(), 1);
        assert_eq!(value["params"]["max_steps"], 40);
        assert_eq!(value["params"]["window"][0].as_f64().unwrap(), 0.1);
        assert!(value["params"]["piece_a"]["cells"].is_array());
    }

    #[test]
    fn json_floats_have_17_digits() {
        #[derive(Serialize)]
        struct V {
            x: f64,
        }
        let s = to_json_string(&V { x: 0.1 }).unwrap();
        assert_eq!(s, r#"{"x":1.0000000000000001e-1}"#);
    }

    #[test]
    fn outputs_are_byte_identical_across_runs() {
        let model = ModelSpec::unit_barrier(1.0);
        let window = EnergyWindow::new(0.0, 20.0, 500).unwrap();
        let a = {
            let approx = scan(&model, &window, 40, 1e6);
            intervals_json(&model, &approx).unwrap()
        };
        let b = {
            let approx = scan(&model, &window, 40, 1e6);
            intervals_json(&model, &approx).unwrap()
        };
        assert_eq!(a, b);
    }
}
