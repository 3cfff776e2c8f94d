//! Monotonicity and 4D-convexity flags of a profile.

use alloc::vec::Vec;

use crate::plane::Vec2;
use crate::profile::{MomentProfile, REL_TOL};
use crate::segment::Shape;

/// Where a flag fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Segment(usize),
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Flag {
    fn ok() -> Flag {
        Flag { holds: true, witness: None }
    }

    fn fail(w: Witness) -> Flag {
        Flag { holds: false, witness: Some(w) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub star_shaped: Flag,
    pub monotone: Flag,
    pub strictly_monotone: Flag,
    pub convex_4d: Flag,
}

/// Outward normals sampled along segment `i`, skipping points on the axes.
fn normals(p: &MomentProfile, i: usize, interior_only: bool) -> Vec<Vec2> {
    let piece = p.piece(i);
    if piece.is_line() {
        return alloc::vec![p.end_normal(i, false)];
    }
    let k = piece.sample_count();
    let range = if interior_only { 1..k } else { 0..k + 1 };
    range
        .filter_map(|j| {
            let t = j as f64 / k as f64;
            let q = piece.point(t);
            (q.x != 0.0 && q.y != 0.0).then(|| piece.normal(t))
        })
        .collect()
}

pub fn classify(p: &MomentProfile) -> Classification {
    let tol = REL_TOL;
    let mut monotone = Flag::ok();
    let mut strict = Flag::ok();
    for i in 0..p.segment_count() {
        if monotone.holds && normals(p, i, false).iter().any(|n| n.x < -tol || n.y < -tol) {
            monotone = Flag::fail(Witness::Segment(i));
        }
        if strict.holds && normals(p, i, true).iter().any(|n| n.x <= tol || n.y <= tol) {
            strict = Flag::fail(Witness::Segment(i));
        }
    }
    if !monotone.holds && strict.holds {
        strict = monotone;
    }
    Classification {
        star_shaped: Flag::ok(),
        monotone,
        strictly_monotone: strict,
        convex_4d: convex_4d(p),
    }
}

/// `(√w1, √w2)` of every vertex.
pub fn sqrt_transform(p: &MomentProfile) -> Vec<Vec2> {
    p.vertices().iter().map(|&v| sqrt_point(v)).collect()
}

pub fn sqrt_point(v: Vec2) -> Vec2 {
    Vec2::new(libm::sqrt(v.x.max(0.0)), libm::sqrt(v.y.max(0.0)))
}

/// Inverse of [`sqrt_point`] on the closed quadrant.
pub fn square_point(m: Vec2) -> Vec2 {
    Vec2::new(m.x * m.x, m.y * m.y)
}

/// The square-root image must be a strictly decreasing concave chain: left
/// turns in profile order, collinear within tolerance.
///
/// Straight `w`-segments with positive normals map to elliptic arcs, which are
/// concave, and μ-lines map to straight segments, so only arcs need interior
/// samples. At a vertex the μ-tangent is the `w`-tangent scaled by a positive
/// diagonal matrix, so the turn can be tested on `w`-tangents.
fn convex_4d(p: &MomentProfile) -> Flag {
    let mu = sqrt_transform(p);
    let scale = mu.iter().map(|m| m.norm()).fold(0.0, f64::max);
    let tol = REL_TOL * scale;
    for (i, w) in mu.windows(2).enumerate() {
        let d = w[1] - w[0];
        if !(d.x < -tol && d.y > tol) {
            return Flag::fail(Witness::Segment(i));
        }
    }
    for i in 0..p.segment_count() {
        let piece = p.piece(i);
        if matches!(piece.shape, Shape::Arc { .. }) {
            let k = piece.sample_count();
            let pts: Vec<Vec2> = (0..=k).map(|j| sqrt_point(piece.point(j as f64 / k as f64))).collect();
            for t in pts.windows(3) {
                if (t[1] - t[0]).cross(t[2] - t[1]) < -tol * tol {
                    return Flag::fail(Witness::Segment(i));
                }
            }
        }
    }
    for v in 1..p.vertices().len() - 1 {
        let d_in = p.piece(v - 1).derivative(1.0).unit();
        let d_out = p.piece(v).derivative(0.0).unit();
        if d_in.cross(d_out) < -REL_TOL {
            return Flag::fail(Witness::Vertex(v));
        }
    }
    Flag::ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polydisk_flags() {
        let c = classify(&MomentProfile::polydisk(1.0, 2.0).unwrap());
        assert!(c.monotone.holds);
        assert!(!c.strictly_monotone.holds);
        assert!(!c.convex_4d.holds);
    }

    #[test]
    fn ellipsoid_flags() {
        let c = classify(&MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap());
        assert!(c.monotone.holds && c.strictly_monotone.holds && c.convex_4d.holds);
    }

    #[test]
    fn notch_is_not_monotone() {
        let p = MomentProfile::from_vertices(&[(2.0, 0.0), (1.1, 0.9), (0.1, 0.1), (0.9, 1.1), (0.0, 2.0)]).unwrap();
        let c = classify(&p);
        assert_eq!(c.monotone, Flag { holds: false, witness: Some(Witness::Segment(1)) });
        assert!(!c.strictly_monotone.holds);
        assert!(!c.convex_4d.holds);
    }

    #[test]
    fn sqrt_transform_examples() {
        let p = MomentProfile::from_vertices(&[(4.0, 0.0), (0.0, 9.0)]).unwrap();
        assert_eq!(sqrt_transform(&p), alloc::vec![Vec2::new(2.0, 0.0), Vec2::new(0.0, 3.0)]);
        let m = sqrt_point(Vec2::new(0.5, 0.5));
        assert!((m.x - 0.5f64.sqrt()).abs() < 1e-16 && (m.y - 0.5f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn fc_domain_is_convex_and_strictly_monotone() {
        for &(b, c) in &[(1.0, 0.5), (2.0, 0.8), (4.0, 0.9)] {
            let p = MomentProfile::fc_domain(b, c, 12).unwrap();
            let f = classify(&p);
            assert!(f.convex_4d.holds, "b={b} c={c}: {:?}", f.convex_4d);
            assert!(f.strictly_monotone.holds, "b={b} c={c}");
        }
    }

    #[test]
    fn non_convex_w_polygon_is_rejected() {
        // (0.5, 0.2) lies inside the triangle hull: the path turns right there.
        let p = MomentProfile::from_vertices(&[(1.0, 0.0), (0.5, 0.2), (0.0, 1.0)]).unwrap();
        assert_eq!(classify(&p).convex_4d.witness, Some(Witness::Vertex(1)));
    }
}
