//! Minimal static SVG line charts for snapshot figures: electron density
//! (dotted), exact K-S potential (dashed), fractional K-S potential
//! (solid), one file per snapshot time.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::pipeline::SnapshotBlock;

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

struct Series<'a> {
    label: &'a str,
    dash: &'a str,
    color: &'a str,
    values: Vec<f64>,
}

/// Robust y-range: clip to the 2nd..98th percentile so a handful of
/// near-node spikes cannot flatten the rest of the figure.
fn robust_range(series: &[Series<'_>]) -> (f64, f64) {
    let mut all: Vec<f64> = series
        .iter()
        .flat_map(|s| s.values.iter().copied())
        .filter(|v| v.is_finite())
        .collect();
    if all.is_empty() {
        return (-1.0, 1.0);
    }
    all.sort_by(|a, b| a.total_cmp(b));
    let pick = |q: f64| all[((all.len() - 1) as f64 * q).round() as usize];
    let (lo, hi) = (pick(0.02), pick(0.98));
    if lo < hi {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn polyline(out: &mut String, xs: &[f64], s: &Series<'_>, range: (f64, f64), x_range: (f64, f64)) {
    let (y_lo, y_hi) = range;
    let (x_lo, x_hi) = x_range;
    let sx = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R);
    let sy = |y: f64| {
        let clamped = y.clamp(y_lo, y_hi);
        HEIGHT - MARGIN_B - (clamped - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)
    };
    let mut points = String::new();
    let mut run_open = false;
    for (i, &x) in xs.iter().enumerate() {
        let v = s.values[i];
        if v.is_finite() {
            write!(points, "{:.2},{:.2} ", sx(x), sy(v)).expect("string write");
            run_open = true;
        } else if run_open {
            // Break the polyline at masked samples.
            emit_polyline(out, &points, s);
            points.clear();
            run_open = false;
        }
    }
    if run_open {
        emit_polyline(out, &points, s);
    }
}

fn emit_polyline(out: &mut String, points: &str, s: &Series<'_>) {
    writeln!(
        out,
        "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\" stroke-dasharray=\"{}\" points=\"{}\"/>",
        s.color, s.dash, points.trim_end()
    )
    .expect("string write");
}

/// Writes the per-snapshot figure with density and the two K-S potentials.
pub fn write_snapshot_figure(path: &Path, block: &SnapshotBlock, xs: &[f64]) -> Result<()> {
    let potentials = [
        Series {
            label: "V_KS",
            dash: "8,5",
            color: "#1f5fbf",
            values: block.v_ks.values.clone(),
        },
        Series {
            label: "V_KS_frac",
            dash: "",
            color: "#bf3f1f",
            values: block.v_ks_frac.values.clone(),
        },
    ];
    let range = robust_range(&potentials);
    // Density rescaled onto the potential axis as a shape reference.
    let peak = block.n.iter().cloned().fold(0.0f64, f64::max).max(1e-300);
    let density = Series {
        label: "n (scaled)",
        dash: "2,4",
        color: "#444444",
        values: block
            .n
            .iter()
            .map(|v| range.0 + v / peak * (range.1 - range.0))
            .collect(),
    };
    let [v_ks, v_ks_frac] = potentials;
    let series = [density, v_ks, v_ks_frac];

    let x_range = (xs[0], xs[xs.len() - 1]);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">"
    )
    .expect("string write");
    writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    )
    .expect("string write");
    writeln!(
        out,
        "  <text x=\"{}\" y=\"24\" text-anchor=\"middle\">density and K-S potentials at t = {:.6} a.u.</text>",
        WIDTH / 2.0,
        block.t
    )
    .expect("string write");

    // Axes.
    writeln!(
        out,
        "  <line x1=\"{MARGIN_L}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    )
    .expect("string write");
    writeln!(
        out,
        "  <line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{}\" stroke=\"black\"/>",
        HEIGHT - MARGIN_B
    )
    .expect("string write");

    // Tick labels: five x ticks, five y ticks.
    for k in 0..5 {
        let f = k as f64 / 4.0;
        let x = x_range.0 + f * (x_range.1 - x_range.0);
        let px = MARGIN_L + f * (WIDTH - MARGIN_L - MARGIN_R);
        writeln!(
            out,
            "  <text x=\"{px:.1}\" y=\"{}\" text-anchor=\"middle\">{x:.1}</text>",
            HEIGHT - MARGIN_B + 20.0
        )
        .expect("string write");
        let y = range.0 + f * (range.1 - range.0);
        let py = HEIGHT - MARGIN_B - f * (HEIGHT - MARGIN_T - MARGIN_B);
        writeln!(
            out,
            "  <text x=\"{}\" y=\"{py:.1}\" text-anchor=\"end\">{y:.2}</text>",
            MARGIN_L - 8.0
        )
        .expect("string write");
    }
    writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">x (a.u.)</text>",
        WIDTH / 2.0,
        HEIGHT - 12.0
    )
    .expect("string write");

    for s in &series {
        polyline(&mut out, xs, s, range, x_range);
    }

    // Legend.
    let mut ly = MARGIN_T + 10.0;
    for s in &series {
        writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{ly:.1}\" x2=\"{}\" y2=\"{ly:.1}\" stroke=\"{}\" stroke-width=\"1.6\" stroke-dasharray=\"{}\"/>",
            WIDTH - 200.0,
            WIDTH - 160.0,
            s.color,
            s.dash
        )
        .expect("string write");
        writeln!(
            out,
            "  <text x=\"{}\" y=\"{:.1}\">{}</text>",
            WIDTH - 152.0,
            ly + 4.0,
            s.label
        )
        .expect("string write");
        ly += 18.0;
    }
    writeln!(out, "</svg>").expect("string write");
    std::fs::write(path, out)?;
    Ok(())
}
