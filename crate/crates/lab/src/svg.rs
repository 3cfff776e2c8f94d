//! Static SVG pictures of profiles and sweeps.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use toric_core::{MomentProfile, Vec2};

use crate::experiments::SweepRecord;
use crate::LabError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// Extra geometry drawn over a profile.
#[derive(Clone, Debug, PartialEq)]
pub enum Overlay {
    /// Removed sector: vertex, unit direction of its axis, half-angle and
    /// the length of its sides.
    Sector { apex: Vec2, dir: Vec2, theta: f64, reach: f64 },
    /// Glued triangle.
    Triangle([Vec2; 3]),
    /// Reference curve, e.g. the graph of `g_c`.
    Curve(Vec<Vec2>),
}

struct Frame {
    scale: f64,
}

impl Frame {
    fn new(extent: f64) -> Frame {
        Frame { scale: (SIZE - 2.0 * MARGIN) / extent.max(f64::MIN_POSITIVE) }
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        (MARGIN + p.x * self.scale, SIZE - MARGIN - p.y * self.scale)
    }

    fn points(&self, pts: &[Vec2]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn boundary_points(p: &MomentProfile) -> Vec<Vec2> {
    let mut pts = vec![p.vertices()[0]];
    for piece in p.pieces() {
        let k = piece.sample_count();
        pts.extend((1..=k).map(|j| piece.point(j as f64 / k as f64)));
    }
    pts
}

fn overlay_points(o: &Overlay) -> Vec<Vec2> {
    match o {
        Overlay::Sector { apex, dir, theta, reach } => {
            let side = |s: f64| {
                let (c, sn) = (theta.cos(), s * theta.sin());
                *apex + Vec2::new(dir.x * c - dir.y * sn, dir.x * sn + dir.y * c) * *reach
            };
            vec![*apex, side(-1.0), side(1.0)]
        }
        Overlay::Triangle(t) => t.to_vec(),
        Overlay::Curve(c) => c.clone(),
    }
}

pub fn profile_svg(p: &MomentProfile, overlays: &[Overlay]) -> String {
    let pts = boundary_points(p);
    let extent = pts
        .iter()
        .chain(overlays.iter().flat_map(overlay_points).collect::<Vec<_>>().iter())
        .fold(0.0f64, |m, q| m.max(q.x).max(q.y))
        * 1.05;
    let f = Frame::new(extent);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let (ox, oy) = f.map(Vec2::new(0.0, 0.0));
    let (xe, _) = f.map(Vec2::new(extent, 0.0));
    let (_, ye) = f.map(Vec2::new(0.0, extent));
    let _ = writeln!(s, r#"<line class="axis" x1="{ox:.3}" y1="{oy:.3}" x2="{xe:.3}" y2="{oy:.3}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="{ox:.3}" y1="{oy:.3}" x2="{ox:.3}" y2="{ye:.3}" stroke="black"/>"#);
    for o in overlays {
        let pts = f.points(&overlay_points(o));
        let _ = match o {
            Overlay::Sector { .. } => writeln!(s, r#"<polygon class="sector" points="{pts}" fill="orange" fill-opacity="0.4"/>"#),
            Overlay::Triangle(_) => writeln!(s, r#"<polygon class="triangle" points="{pts}" fill="skyblue" fill-opacity="0.4"/>"#),
            Overlay::Curve(_) => writeln!(s, r#"<polyline class="curve" points="{pts}" fill="none" stroke="red"/>"#),
        };
    }
    let d: String = pts
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let (x, y) = f.map(q);
            format!("{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" })
        })
        .collect();
    let _ = writeln!(s, r#"<path class="profile" d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#);
    for q in [p.vertices()[0], *p.vertices().last().unwrap()] {
        let (x, y) = f.map(q);
        let _ = writeln!(s, r#"<circle class="endpoint" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

pub fn emit_profile_svg(p: &MomentProfile, overlays: &[Overlay], path: &Path) -> Result<(), LabError> {
    fs::write(path, profile_svg(p, overlays)).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))
}

/// Log-log plot of `product` against `eps`, with the tracked bound dashed.
pub fn sweep_svg(rows: &[SweepRecord], title: &str) -> String {
    let series = |pick: fn(&SweepRecord) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter()
            .filter_map(|r| Some((r.eps, pick(r)?)))
            .filter(|&(e, v)| e > 0.0 && v > 0.0 && v.is_finite())
            .map(|(e, v)| (e.log10(), v.log10()))
            .collect()
    };
    let product = series(|r| r.product);
    let bound = series(|r| r.bound_value);
    let all: Vec<(f64, f64)> = product.iter().chain(&bound).copied().collect();
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="20">{title}</text>"#);
    if !all.is_empty() {
        let lo = |v: fn(&(f64, f64)) -> f64| all.iter().map(v).fold(f64::INFINITY, f64::min).floor();
        let hi = |v: fn(&(f64, f64)) -> f64| all.iter().map(v).fold(f64::NEG_INFINITY, f64::max).ceil();
        let (x0, x1) = (lo(|p| p.0), hi(|p| p.0).max(lo(|p| p.0) + 1.0));
        let (y0, y1) = (lo(|p| p.1), hi(|p| p.1).max(lo(|p| p.1) + 1.0));
        let span = SIZE - 2.0 * MARGIN;
        let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) / (x1 - x0) * span, SIZE - MARGIN - (y - y0) / (y1 - y0) * span);
        let _ = writeln!(s, r#"<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="black"/>"#);
        for d in x0 as i32..=x1 as i32 {
            let (x, _) = map((d as f64, y0));
            let _ = writeln!(s, r#"<text class="tick" x="{x:.1}" y="{:.1}" font-size="10">1e{d}</text>"#, SIZE - MARGIN + 14.0);
        }
        for d in y0 as i32..=y1 as i32 {
            let (_, y) = map((x0, d as f64));
            let _ = writeln!(s, r#"<text class="tick" x="2" y="{y:.1}" font-size="10">1e{d}</text>"#);
        }
        let line = |pts: &[(f64, f64)]| pts.iter().map(|&p| map(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, r#"<polyline class="bound" points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#, line(&bound));
        let _ = writeln!(s, r#"<polyline class="product" points="{}" fill="none" stroke="blue"/>"#, line(&product));
        for &p in &product {
            let (x, y) = map(p);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="blue"/>"#);
        }
    }
    s.push_str("</svg>\n");
    s
}
