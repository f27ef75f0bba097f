use std::fmt::Write;

use super::{pathlines, screen_bounds_series, DiagramConfig, DiagramError, PathlineSet};
use crate::hyperbolic::HPoint;
use crate::trajectory::Trajectory;

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 22.0;
const MARGIN_BOTTOM: f64 = 22.0;
const FONT: &str = "font-family=\"sans-serif\" font-size=\"11\"";
const BOUNDS_STYLE: &str = "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"";
const CENTER_STYLE: &str =
    "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" stroke-dasharray=\"4 3\"";
const TARGET_STYLE: &str = "fill=\"none\" stroke=\"#000000\" stroke-width=\"3\"";
const PATHLINE_STYLE: &str = "fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"0.8\"";
const FRAME_STYLE: &str = "fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\"";

/// Visible world span of the raw target over time, drawn as bold lines.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetOverlay {
    pub lower: Vec<Vec<f64>>,
    pub upper: Vec<Vec<f64>>,
}

impl TargetOverlay {
    /// One target per trajectory sample.
    pub fn from_targets<const N: usize>(targets: &[HPoint<N>], r_half: &[f64; N]) -> Self {
        let span = |axis: usize, sign: f64| -> Vec<f64> {
            targets
                .iter()
                .map(|x| x.footprint()[axis] + sign * x.altitude() * r_half[axis])
                .collect()
        };
        Self {
            lower: (0..N).map(|k| span(k, -1.0)).collect(),
            upper: (0..N).map(|k| span(k, 1.0)).collect(),
        }
    }
}

struct Panel {
    top: f64,
    height: f64,
    lo: f64,
    hi: f64,
}

impl Panel {
    fn y(&self, value: f64) -> f64 {
        let h = self.height - MARGIN_TOP - MARGIN_BOTTOM;
        self.top + MARGIN_TOP + h * (self.hi - value) / (self.hi - self.lo)
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    if !(lo.is_finite() && hi.is_finite()) {
        return (-1.0, 1.0);
    }
    let pad = if hi > lo {
        0.05 * (hi - lo)
    } else {
        1.0f64.max(lo.abs() * 0.05)
    };
    (lo - pad, hi + pad)
}

fn polyline(out: &mut String, class: &str, style: &str, points: impl Iterator<Item = (f64, f64)>) {
    let mut pts = String::new();
    for (k, (x, y)) in points.enumerate() {
        if k > 0 {
            pts.push(' ');
        }
        let _ = write!(pts, "{x:.2},{y:.2}");
    }
    let _ = writeln!(
        out,
        "<polyline class=\"{class}\" {style} points=\"{pts}\"/>"
    );
}

fn frame(out: &mut String, panel: &Panel, width: f64, title: &str, t_max: f64) {
    let (x0, x1) = (MARGIN_LEFT, width - MARGIN_RIGHT);
    let (y0, y1) = (
        panel.top + MARGIN_TOP,
        panel.top + panel.height - MARGIN_BOTTOM,
    );
    let _ = writeln!(
        out,
        "<rect class=\"frame\" {FRAME_STYLE} x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>",
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(
        out,
        "<text {FONT} x=\"{x0:.2}\" y=\"{:.2}\">{title}</text>",
        panel.top + 14.0
    );
    for (value, y) in [(panel.hi, y0), (panel.lo, y1)] {
        let _ = writeln!(
            out,
            "<text {FONT} text-anchor=\"end\" x=\"{:.2}\" y=\"{:.2}\">{value:.3}</text>",
            x0 - 4.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text {FONT} text-anchor=\"end\" x=\"{x1:.2}\" y=\"{:.2}\">t = {t_max:.3} s</text>",
        y1 + 14.0
    );
}

/// World/screen diagram: for each screen axis a screen-bounds panel (world
/// coordinates) above an optical-pathline panel (screen coordinates), all
/// on a shared time axis.
pub fn render_worldscreen_svg<const N: usize>(
    traj: &Trajectory<N>,
    cfg: &DiagramConfig,
    overlay: Option<&TargetOverlay>,
) -> Result<String, DiagramError> {
    let set: PathlineSet = pathlines(traj, cfg)?;
    let bounds = screen_bounds_series(traj, &[cfg.r_half; N]);
    let width = cfg.width as f64;
    let ph = cfg.panel_height as f64;
    let t_max = traj.time(traj.len() - 1).max(traj.period());
    let x_of = |t: f64| MARGIN_LEFT + (width - MARGIN_LEFT - MARGIN_RIGHT) * t / t_max;
    let height = ph * 2.0 * N as f64;

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        cfg.width, height, cfg.width, height
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        cfg.width, height
    );
    let times: Vec<f64> = (0..traj.len()).map(|i| traj.time(i)).collect();
    for (axis, b) in bounds.iter().enumerate() {
        let label = if N == 1 {
            String::new()
        } else {
            format!(" u{}", axis + 1)
        };
        let mut values: Vec<f64> = b.lower.iter().chain(&b.upper).copied().collect();
        if let Some(o) = overlay {
            values.extend(o.lower[axis].iter().chain(&o.upper[axis]));
        }
        let (lo, hi) = padded_range(values.into_iter());
        let top = Panel {
            top: ph * 2.0 * axis as f64,
            height: ph,
            lo,
            hi,
        };
        let _ = writeln!(out, "<g class=\"bounds-panel\">");
        frame(
            &mut out,
            &top,
            width,
            &format!("screen bounds{label} (world)"),
            t_max,
        );
        if let Some(o) = overlay {
            for series in [&o.lower[axis], &o.upper[axis]] {
                polyline(
                    &mut out,
                    "target",
                    TARGET_STYLE,
                    times.iter().zip(series).map(|(&t, &p)| (x_of(t), top.y(p))),
                );
            }
        }
        for series in [&b.lower, &b.upper] {
            polyline(
                &mut out,
                "bounds",
                BOUNDS_STYLE,
                times.iter().zip(series).map(|(&t, &p)| (x_of(t), top.y(p))),
            );
        }
        polyline(
            &mut out,
            "center",
            CENTER_STYLE,
            times
                .iter()
                .zip(&b.center)
                .map(|(&t, &p)| (x_of(t), top.y(p))),
        );
        let _ = writeln!(out, "</g>");

        let bottom = Panel {
            top: ph * (2.0 * axis as f64 + 1.0),
            height: ph,
            lo: cfg.r_lo,
            hi: cfg.r_hi,
        };
        let _ = writeln!(out, "<g class=\"pathline-panel\">");
        frame(
            &mut out,
            &bottom,
            width,
            &format!("optical pathlines{label} (screen)"),
            t_max,
        );
        for line in set.for_axis(axis) {
            polyline(
                &mut out,
                "pathline",
                PATHLINE_STYLE,
                line.vertices.iter().map(|&(t, r)| (x_of(t), bottom.y(r))),
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
