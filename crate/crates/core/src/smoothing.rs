//! Rounding of convex polygon corners by tangent circular arcs.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::plane::{wrap_angle, Vec2};
use crate::profile::{Family, MomentProfile, REL_TOL};
use crate::segment::{Segment, Shape};

/// Replace every convex corner between two straight segments by a circular
/// arc of radius `r` tangent to both. Reflex corners and corners next to a
/// curved piece are kept.
pub fn smooth_corners(p: &MomentProfile, r: f64) -> Result<MomentProfile> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::ParamOutOfRange("rounding radius must be non-negative"));
    }
    if r == 0.0 {
        return Ok(p.clone());
    }
    let verts = p.vertices();
    let segs = p.segments();
    let n = verts.len();
    // Tangent points per interior vertex: (incoming cut, outgoing cut, arc).
    let mut cuts: Vec<Option<(Vec2, Vec2, Shape)>> = alloc::vec![None; n];
    for v in 1..n - 1 {
        if !(segs[v - 1].is_line() && segs[v].is_line()) {
            continue;
        }
        let d_in = verts[v] - verts[v - 1];
        let d_out = verts[v + 1] - verts[v];
        let (u_in, u_out) = (d_in.unit(), d_out.unit());
        if u_in.cross(u_out) <= REL_TOL {
            continue;
        }
        let phi = wrap_angle(u_out.angle() - u_in.angle());
        let tangent = r * libm::tan(0.5 * phi);
        if tangent > 0.5 * d_in.norm() || tangent > 0.5 * d_out.norm() {
            return Err(Error::RadiusTooLarge { vertex: v });
        }
        let t1 = verts[v] - u_in * tangent;
        let t2 = verts[v] + u_out * tangent;
        let center = t1 + u_in.perp() * r;
        let start = (t1 - center).angle();
        cuts[v] = Some((t1, t2, Shape::Arc { center, radius: r, start, sweep: phi }));
    }

    let mut vertices = Vec::with_capacity(n * 2);
    let mut segments = Vec::with_capacity(n * 2);
    vertices.push(verts[0]);
    for v in 1..n {
        match cuts[v] {
            Some((t1, t2, arc)) => {
                vertices.push(t1);
                segments.push(segs[v - 1]);
                vertices.push(t2);
                segments.push(Segment::curve(arc));
            }
            None => {
                vertices.push(verts[v]);
                segments.push(segs[v - 1]);
            }
        }
    }
    MomentProfile::from_parts(vertices, segments, Family::Custom).map_err(|e| match e {
        Error::NotStarShaped { .. } | Error::SelfIntersection { .. } | Error::ArcMismatch { .. } => {
            Error::SmoothingBreaksStarShape
        }
        e => e,
    })
}

/// Total signed turning of the outward normal along the profile: curve
/// turning plus the exterior angles at vertices.
pub fn total_turning(p: &MomentProfile) -> f64 {
    let mut sum = 0.0;
    for i in 0..p.segment_count() {
        sum += p.piece(i).turning();
        if i + 1 < p.segment_count() {
            sum += wrap_angle(p.end_normal(i + 1, false).angle() - p.end_normal(i, true).angle());
        }
    }
    sum
}
