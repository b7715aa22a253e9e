//! SVG heatmaps of sweep grids.
//!
//! Colors follow a linear two-ended ramp from [`LOW_COLOR`] at the grid
//! minimum to [`HIGH_COLOR`] at the maximum, interpolated per RGB channel.
//! Annihilated or undefined nodes are drawn in [`SENTINEL_COLOR`]. Gap grids
//! get their zero contour overlaid.

use std::fmt::Write as _;

use crate::contour::crossing_locus_grid;
use crate::error::Result;
use crate::grid::{Grid2D, Quantity};

pub const LOW_COLOR: [u8; 3] = [0x31, 0x36, 0x95];
pub const HIGH_COLOR: [u8; 3] = [0xfd, 0xae, 0x61];
pub const SENTINEL_COLOR: [u8; 3] = [0x9e, 0x9e, 0x9e];
pub const CONTOUR_COLOR: &str = "#ffffff";

const LEFT: f64 = 90.0;
const TOP: f64 = 50.0;
const PLOT: f64 = 520.0;
const BAR_X: f64 = LEFT + PLOT + 40.0;
const BAR_W: f64 = 22.0;
const WIDTH: f64 = BAR_X + BAR_W + 110.0;
const HEIGHT: f64 = TOP + PLOT + 70.0;
const BAR_STEPS: usize = 64;

/// Position `t ∈ [0, 1]` on the ramp.
pub fn ramp(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    std::array::from_fn(|k| {
        let (a, b) = (LOW_COLOR[k] as f64, HIGH_COLOR[k] as f64);
        (a + (b - a) * t).round() as u8
    })
}

pub fn hex([r, g, b]: [u8; 3]) -> String {
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn label(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        format!("{v:.4}")
    } else {
        format!("{v:.3e}")
    }
}

pub fn render_heatmap(g: &Grid2D) -> Result<String> {
    g.validate()?;
    let (n1, n2) = (g.axis1.count, g.axis2.count);
    let cw = PLOT / n1 as f64;
    let ch = PLOT / n2 as f64;
    let range = g.value_range();
    let color_of = |v: Option<f64>| match (v, range) {
        (Some(x), Some((lo, hi))) if hi > lo => ramp((x - lo) / (hi - lo)),
        (Some(_), _) => ramp(0.5),
        (None, _) => SENTINEL_COLOR,
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let fixed: Vec<String> = g.fixed.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="22" font-size="14">{} over ({}, {})</text>"#,
        g.quantity, g.axis1.name, g.axis2.name
    );
    let _ = writeln!(s, r#"<text x="{LEFT}" y="40" font-size="10">{}</text>"#, fixed.join(", "));

    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for i in 0..n1 {
        for j in 0..n2 {
            let x = LEFT + i as f64 * cw;
            let y = TOP + (n2 - 1 - j) as f64 * ch;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                cw + 0.01,
                ch + 0.01,
                hex(color_of(g.get(i, j)))
            );
        }
    }
    let _ = writeln!(s, "</g>");

    if g.quantity == Quantity::Gap {
        let locus = crossing_locus_grid(g)?;
        let px = |x: f64| LEFT + ((x - g.axis1.min) / (g.axis1.max - g.axis1.min) * (n1 - 1) as f64 + 0.5) * cw;
        let py = |y: f64| TOP + PLOT - ((y - g.axis2.min) / (g.axis2.max - g.axis2.min) * (n2 - 1) as f64 + 0.5) * ch;
        for line in &locus.polylines {
            let pts: Vec<String> = line.points.iter().map(|[x, y]| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
            let tag = if line.closed { "polygon" } else { "polyline" };
            let _ = writeln!(
                s,
                r#"<{tag} points="{}" fill="none" stroke="{CONTOUR_COLOR}" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
        }
    }

    // frame and axes
    let _ = writeln!(s, r##"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="#000000"/>"##);
    for (k, frac) in [0.0, 0.5, 1.0].iter().enumerate() {
        let xv = g.axis1.min + (g.axis1.max - g.axis1.min) * frac;
        let yv = g.axis2.min + (g.axis2.max - g.axis2.min) * frac;
        let anchor = ["start", "middle", "end"][k];
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{}</text>"#,
            LEFT + PLOT * frac,
            TOP + PLOT + 16.0,
            label(xv)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            LEFT - 6.0,
            TOP + PLOT * (1.0 - frac),
            label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        LEFT + PLOT / 2.0,
        TOP + PLOT + 40.0,
        g.axis1.name
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        LEFT - 60.0,
        TOP + PLOT / 2.0,
        LEFT - 60.0,
        TOP + PLOT / 2.0,
        g.axis2.name
    );

    // colour bar
    match range {
        Some((lo, hi)) if hi > lo => {
            let step = PLOT / BAR_STEPS as f64;
            for k in 0..BAR_STEPS {
                let t = (k as f64 + 0.5) / BAR_STEPS as f64;
                let y = TOP + PLOT - (k + 1) as f64 * step;
                let _ = writeln!(
                    s,
                    r#"<rect x="{BAR_X}" y="{y:.3}" width="{BAR_W}" height="{:.3}" fill="{}"/>"#,
                    step + 0.01,
                    hex(ramp(t))
                );
            }
            for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.2}" y="{:.2}" dominant-baseline="middle">{}</text>"#,
                    BAR_X + BAR_W + 6.0,
                    TOP + PLOT * (1.0 - frac),
                    label(lo + (hi - lo) * frac)
                );
            }
        }
        Some((lo, _)) => {
            let _ = writeln!(
                s,
                r#"<rect x="{BAR_X}" y="{TOP}" width="{BAR_W}" height="{PLOT}" fill="{}"/>"#,
                hex(ramp(0.5))
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" dominant-baseline="middle">constant {}</text>"#,
                BAR_X + BAR_W + 6.0,
                TOP + PLOT / 2.0,
                label(lo)
            );
        }
        None => {
            let _ = writeln!(
                s,
                r#"<text x="{BAR_X}" y="{:.2}">no numeric values</text>"#,
                TOP + PLOT / 2.0
            );
        }
    }
    if g.values.iter().any(Option::is_none) {
        let _ = writeln!(
            s,
            r#"<rect x="{BAR_X}" y="{:.2}" width="{BAR_W}" height="12" fill="{}"/><text x="{:.2}" y="{:.2}">NA</text>"#,
            TOP + PLOT + 20.0,
            hex(SENTINEL_COLOR),
            BAR_X + BAR_W + 6.0,
            TOP + PLOT + 30.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{run_sweep, AxisName, AxisSpec, PointParams, SweepConfig};

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), LOW_COLOR);
        assert_eq!(ramp(1.0), HIGH_COLOR);
        assert_eq!(ramp(-3.0), LOW_COLOR);
        assert_eq!(hex([0, 255, 16]), "#00ff10");
    }

    #[test]
    fn constant_grid_is_single_colour() {
        let cfg = SweepConfig::new(
            Quantity::ZeroTFidelity,
            AxisSpec::new(AxisName::LambdaField, -2.0, -1.0, 4),
            AxisSpec::new(AxisName::BField, 0.5, 1.0, 3),
            PointParams::default(),
        );
        let g = run_sweep(&cfg).unwrap();
        let svg = render_heatmap(&g).unwrap();
        let mid = hex(ramp(0.5));
        assert_eq!(svg.matches(&format!(r#"fill="{mid}""#)).count(), 12 + 1);
        assert!(svg.contains("constant 1.0000"));
    }

    #[test]
    fn gap_grid_has_contour_overlay() {
        let cfg = SweepConfig::new(
            Quantity::Gap,
            AxisSpec::new(AxisName::Gamma, -1.5, 1.5, 41),
            AxisSpec::new(AxisName::BField, -1.5, 1.5, 41),
            PointParams::default(),
        );
        let svg = render_heatmap(&run_sweep(&cfg).unwrap()).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<rect x=").count() - BAR_STEPS - 1, 41 * 41);
    }

    #[test]
    fn sentinels_use_neutral_colour() {
        let cfg = SweepConfig::new(
            Quantity::Fidelity,
            AxisSpec::new(AxisName::LambdaField, -2.0, 2.0, 3),
            AxisSpec::new(AxisName::BField, -2.0, 2.0, 3),
            PointParams::default(),
        );
        let mut g = run_sweep(&cfg).unwrap();
        g.values[4] = None;
        let svg = render_heatmap(&g).unwrap();
        assert!(svg.matches(&hex(SENTINEL_COLOR)).count() >= 2);
    }
}
