//! Hand-rolled SVG for flow traces: polygon snapshots, the diagonals of the
//! last polygon colored by phase, and a gldim-vs-step inset.

use std::f64::consts::PI;
use std::fmt::Write;

use stabflow_core::flow::StepRecord;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 560.0;
const PANEL: f64 = 520.0;
const MAX_SNAPSHOTS: usize = 8;

/// Records drawn as snapshots: evenly spaced, always including the first
/// and last.
pub fn snapshot_indices(len: usize) -> Vec<usize> {
    if len <= MAX_SNAPSHOTS {
        return (0..len).collect();
    }
    let mut out: Vec<usize> = (0..MAX_SNAPSHOTS)
        .map(|k| k * (len - 1) / (MAX_SNAPSHOTS - 1))
        .collect();
    out.dedup();
    out
}

/// Phase in `(-1, 1]` mapped to a hue.
fn phase_color(dx: f64, dy: f64) -> String {
    let phase = dy.atan2(dx) / PI;
    let hue = (phase.rem_euclid(2.0) * 180.0).round() as i64 % 360;
    format!("hsl({hue},70%,45%)")
}

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(records: &[StepRecord]) -> Self {
        let pts = records.iter().flat_map(|r| r.vertices.iter());
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            lo_x = lo_x.min(p[0]);
            lo_y = lo_y.min(p[1]);
            hi_x = hi_x.max(p[0]);
            hi_y = hi_y.max(p[1]);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
        Frame {
            min_x: lo_x,
            min_y: lo_y,
            scale: (PANEL - 40.0) / span,
        }
    }

    // y grows downwards in SVG
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            20.0 + (p[0] - self.min_x) * self.scale,
            PANEL - 20.0 - (p[1] - self.min_y) * self.scale,
        )
    }
}

fn polygon_path(frame: &Frame, vertices: &[[f64; 2]]) -> String {
    let mut d = String::new();
    for (k, v) in vertices.iter().enumerate() {
        let (x, y) = frame.map(*v);
        let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

fn inset(out: &mut String, records: &[StepRecord]) {
    let (x0, y0, w, h) = (PANEL + 60.0, 60.0, WIDTH - PANEL - 100.0, 260.0);
    let lo = records.iter().map(|r| r.gldim).fold(f64::MAX, f64::min);
    let hi = records.iter().map(|r| r.gldim).fold(f64::MIN, f64::max);
    let range = (hi - lo).max(1e-12);
    let last = (records.len() - 1).max(1) as f64;
    let _ = writeln!(
        out,
        r##"<g id="inset"><rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="#444"/>"##
    );
    let mut pts = String::new();
    for (k, r) in records.iter().enumerate() {
        let x = x0 + w * k as f64 / last;
        let y = y0 + h - h * (r.gldim - lo) / range;
        let _ = write!(pts, "{x:.3},{y:.3} ");
    }
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
        pts.trim_end()
    );
    let _ = writeln!(
        out,
        r#"<text x="{x0}" y="{}" font-size="12">gldim {hi:.6}</text>"#,
        y0 - 6.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{x0}" y="{}" font-size="12">{lo:.9} after {} steps</text></g>"#,
        y0 + h + 16.0,
        records.len() - 1
    );
}

pub fn render_trace(records: &[StepRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="100%" height="100%" fill="white"/>"#
    );
    if records.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let frame = Frame::fit(records);
    let shown = snapshot_indices(records.len());
    out.push_str("<g id=\"snapshots\">\n");
    for (k, &i) in shown.iter().enumerate() {
        let r = &records[i];
        let opacity = 0.25 + 0.75 * (k + 1) as f64 / shown.len() as f64;
        let _ = writeln!(
            out,
            r##"<path class="snapshot" data-step="{}" d="{}" fill="none" stroke="#2c3e50" stroke-opacity="{opacity:.3}"/>"##,
            r.step,
            polygon_path(&frame, &r.vertices)
        );
    }
    out.push_str("</g>\n<g id=\"diagonals\">\n");
    let last = &records[records.len() - 1].vertices;
    for i in 0..last.len() {
        for j in i + 2..last.len() {
            if i == 0 && j == last.len() - 1 {
                continue;
            }
            let (a, b) = (frame.map(last[i]), frame.map(last[j]));
            let color = phase_color(last[j][0] - last[i][0], last[j][1] - last[i][1]);
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="1.2"/>"#,
                a.0, a.1, b.0, b.1
            );
        }
    }
    out.push_str("</g>\n");
    inset(&mut out, records);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshots_keep_endpoints() {
        assert_eq!(snapshot_indices(3), vec![0, 1, 2]);
        let s = snapshot_indices(100);
        assert_eq!((s[0], s[s.len() - 1], s.len()), (0, 99, MAX_SNAPSHOTS));
    }

    #[test]
    fn colors_follow_phase() {
        assert_eq!(phase_color(1.0, 0.0), "hsl(0,70%,45%)");
        assert_eq!(phase_color(0.0, 1.0), "hsl(90,70%,45%)");
    }
}
