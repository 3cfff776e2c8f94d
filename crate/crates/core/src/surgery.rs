//! Strangulation and strain: the two profile surgeries that push the
//! product `ru·sys^{1/2}` to zero and to infinity.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::classify::{classify, Classification};
use crate::decimal::segment_normal;
use crate::error::{Error, Result};
use crate::invariants::area;
use crate::plane::{IVec, Vec2};
use crate::profile::{segments_cross, Family, MomentProfile};
use crate::reeb::{axis_orbits, cone_sites, min_orbit_at_vertex, OrbitDatum, OrbitLocation};
use crate::segment::{Piece, Segment};

/// New profile plus the certificates of a surgery.
#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryOutcome {
    pub profile: MomentProfile,
    /// `area(out) − area(in)`.
    pub volume_delta: f64,
    /// A-priori bound on `|volume_delta|`.
    pub volume_delta_bound: f64,
    pub new_orbit_witnesses: Vec<OrbitDatum>,
    pub preserved_flags: Classification,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrangulationSpec {
    pub eps: f64,
    pub ray_angle: f64,
    /// Half-angle of the removed sector.
    pub theta: f64,
    /// Max-norm of the ray hit point; `(w*, w*)` on the diagonal.
    pub w_star: f64,
    pub hit: Vec2,
    /// Sector vertex, `(ε, ε)` on the diagonal.
    pub apex: Vec2,
    /// Index of the apex in the new profile.
    pub apex_index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Strangulation {
    pub spec: StrangulationSpec,
    pub outcome: SurgeryOutcome,
    /// `16·w*²·θ < Vol(in)`, the side condition of the systolic bound.
    pub side_condition: bool,
}

/// Bisection steps for the sector half-angle.
pub const THETA_BISECTIONS: usize = 60;

/// Remove from `p` the sector with vertex at max-norm distance `eps` on the
/// ray at `ray_angle`, opening outward, with the largest half-angle whose
/// intersection with the boundary stays in the `eps`-box around the ray hit.
pub fn strangulate(p: &MomentProfile, eps: f64, ray_angle: f64) -> Result<Strangulation> {
    if !(ray_angle > 0.0 && ray_angle < FRAC_PI_2) {
        return Err(Error::RayMissesBoundary);
    }
    let u = ray_direction(ray_angle);
    let (_, _, hit) = p.ray_hit(u).ok_or(Error::RayMissesBoundary)?;
    let w_star = hit.max_norm();
    if !(eps > 0.0 && eps < w_star) {
        return Err(Error::EpsTooLarge { eps, w_star });
    }
    let apex = u * eps;
    let in_box = |q: Vec2| (q.x - hit.x).abs() <= eps && (q.y - hit.y).abs() <= eps;
    let offset = |q: Vec2| {
        let d = q - apex;
        libm::atan2(u.cross(d), u.dot(d))
    };

    let spacing = eps / 32.0;
    let mut samples = Vec::new();
    for piece in p.pieces() {
        let k = piece.sample_count().max(libm::ceil(piece.length() / spacing) as usize).min(1 << 20);
        samples.extend((0..=k).map(|j| piece.point(j as f64 / k as f64)));
    }
    let ok = |theta: f64| -> bool {
        if samples.iter().any(|&q| offset(q).abs() <= theta && !in_box(q)) {
            return false;
        }
        [-theta, theta].iter().all(|&s| match side_exit(p, apex, Vec2::from_angle(ray_angle + s)) {
            Some((_, _, q)) => in_box(q),
            None => false,
        })
    };
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
    for _ in 0..THETA_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = lo;
    if theta <= 0.0 {
        return Err(Error::EpsTooLarge { eps, w_star });
    }

    let (i1, t1, _) = side_exit(p, apex, Vec2::from_angle(ray_angle - theta)).ok_or(Error::ClippingBreaksStarShape)?;
    let (i2, t2, _) = side_exit(p, apex, Vec2::from_angle(ray_angle + theta)).ok_or(Error::ClippingBreaksStarShape)?;
    if (i1, t1) >= (i2, t2) {
        return Err(Error::ClippingBreaksStarShape);
    }
    let verts = p.vertices();
    let segs = p.segments();
    let piece1 = p.piece(i1);
    let piece2 = p.piece(i2);
    let p1 = piece1.point(t1);
    let p2 = piece2.point(t2);

    let mut vertices: Vec<Vec2> = verts[..=i1].to_vec();
    let mut segments: Vec<Segment> = segs[..i1].to_vec();
    if p1 != verts[i1] {
        segments.push(Segment { shape: piece1.split_shapes(t1).0, normal: segs[i1].normal });
        vertices.push(p1);
    }
    segments.push(Segment::line(segment_normal(p1, apex)));
    vertices.push(apex);
    let apex_index = vertices.len() - 1;
    segments.push(Segment::line(segment_normal(apex, p2)));
    vertices.push(p2);
    if p2 != verts[i2 + 1] {
        segments.push(Segment { shape: piece2.split_shapes(t2).1, normal: segs[i2].normal });
        vertices.push(verts[i2 + 1]);
    }
    segments.extend_from_slice(&segs[i2 + 1..]);
    vertices.extend_from_slice(&verts[i2 + 2..]);
    let out = MomentProfile::from_parts(vertices, segments, Family::Custom).map_err(|_| Error::ClippingBreaksStarShape)?;

    let vol_in = area(p);
    let witness = notch_witness(&out, apex_index, u);
    let bound = 8.0 * w_star * w_star * theta;
    Ok(Strangulation {
        spec: StrangulationSpec { eps, ray_angle, theta, w_star, hit, apex, apex_index },
        outcome: SurgeryOutcome {
            volume_delta: area(&out) - vol_in,
            volume_delta_bound: bound,
            new_orbit_witnesses: witness.into_iter().collect(),
            preserved_flags: classify(&out),
            profile: out,
        },
        side_condition: 2.0 * bound < vol_in,
    })
}

/// Direction of the ray with max-norm 1; exactly `(1, 1)` on the diagonal.
fn ray_direction(angle: f64) -> Vec2 {
    if angle == core::f64::consts::FRAC_PI_4 {
        return Vec2::new(1.0, 1.0);
    }
    let u = Vec2::from_angle(angle);
    u * (1.0 / u.max_norm())
}

/// First crossing of the ray `apex + s·dir`, `s > 0`, with the profile.
fn side_exit(p: &MomentProfile, apex: Vec2, dir: Vec2) -> Option<(usize, f64, Vec2)> {
    let mut best: Option<(f64, usize, f64)> = None;
    for (i, piece) in p.pieces().enumerate() {
        let f = |t: f64| dir.cross(piece.point(t) - apex);
        let k = if piece.is_line() { 1 } else { 64 };
        for j in 0..k {
            let (mut a, mut b) = (j as f64 / k as f64, (j + 1) as f64 / k as f64);
            let (fa, fb) = (f(a), f(b));
            if fa * fb > 0.0 || (fa == 0.0 && fb == 0.0) {
                continue;
            }
            let t = if piece.is_line() {
                (fa / (fa - fb)).clamp(0.0, 1.0)
            } else {
                for _ in 0..80 {
                    let m = 0.5 * (a + b);
                    if f(m) * fa > 0.0 {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                0.5 * (a + b)
            };
            let s = dir.dot(piece.point(t) - apex);
            if s > 0.0 && best.is_none_or(|(bs, _, _)| s < bs) {
                best = Some((s, i, t));
            }
        }
    }
    best.map(|(_, i, t)| (i, t, p.piece(i).point(t)))
}

/// Orbit at the notch apex whose normal is the primitive vector closest in
/// angle to the ray, found along the Stern–Brocot path towards it.
fn notch_witness(p: &MomentProfile, apex_index: usize, u: Vec2) -> Option<OrbitDatum> {
    let cone = cone_sites(p).into_iter().find(|c| c.location == OrbitLocation::Vertex(apex_index))?;
    let target = u.angle();
    let u = u.unit();
    let (mut l, mut r) = (IVec::new(1, 0), IVec::new(0, 1));
    let mut best: Option<(f64, OrbitDatum)> = None;
    let mut consider = |v: IVec| {
        if let Some(d) = cone.datum(v) {
            let miss = (v.to_vec2().angle() - target).abs();
            if best.is_none_or(|(m, _)| miss < m) {
                best = Some((miss, d));
            }
        }
    };
    consider(l);
    consider(r);
    for _ in 0..64 {
        let m = IVec::new(l.m + r.m, l.n + r.n);
        consider(m);
        let c = m.to_vec2().cross(u);
        if c == 0.0 {
            break;
        }
        if c > 0.0 {
            l = m;
        } else {
            r = m;
        }
    }
    best.map(|(_, d)| d)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrainSpec {
    pub eps: f64,
    /// Slope `dw2/dw1` of the flattened boundary at `(a, 0)`; infinite for a
    /// vertical segment.
    pub k: f64,
    /// `a + ε/k`.
    pub w_star: f64,
    /// `1/√ε`.
    pub spike_intercept: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Strain {
    pub spec: StrainSpec,
    pub outcome: SurgeryOutcome,
    /// Input and output are both strictly monotone.
    pub strictly_monotone_preserved: bool,
}

/// Glue the triangle `(0,0), (w*, ε), (1/√ε, 0)` onto a profile whose first
/// segment is straight.
pub fn strain(p: &MomentProfile, eps: f64, k: Option<f64>) -> Result<Strain> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::ParamOutOfRange("strain needs ε > 0"));
    }
    if !p.segments()[0].is_line() {
        return Err(Error::NotFlattened("the first piece is curved"));
    }
    let verts = p.vertices();
    let a = p.a_intercept();
    let v1 = verts[1];
    let dx = v1.x - a;
    let slope = if dx == 0.0 { f64::INFINITY } else { v1.y / dx };
    if let Some(k) = k {
        let same = if slope.is_infinite() { k.is_infinite() } else { (k - slope).abs() <= 1e-9 * slope.abs() };
        if !same {
            return Err(Error::NotFlattened("k differs from the slope of the first segment"));
        }
    }
    if eps >= v1.y {
        return Err(Error::EpsTooLargeForNeighborhood { eps, height: v1.y });
    }
    let w_star = a + eps * dx / v1.y;
    let tip = 1.0 / libm::sqrt(eps);
    if tip <= a {
        return Err(Error::ValidityConditionFails("the spike tip 1/sqrt(eps) must exceed the w1-intercept"));
    }
    if slope < 0.0 && -eps / (tip - w_star) <= slope {
        return Err(Error::ValidityConditionFails("the spike edge must be less steep than the boundary slope k"));
    }
    let tip_pt = Vec2::new(tip, 0.0);
    let junction = Vec2::new(w_star, eps);
    for (i, piece) in p.pieces().enumerate().skip(1) {
        if crosses_piece(&piece, tip_pt, junction) {
            return Err(Error::ValidityConditionFails(if i == 0 { "spike meets the flat segment" } else { "spike meets the profile" }));
        }
    }

    let mut vertices = alloc::vec![tip_pt, junction];
    vertices.extend_from_slice(&verts[1..]);
    let mut segments = alloc::vec![Segment::line(segment_normal(tip_pt, junction))];
    segments.extend_from_slice(p.segments());
    let out = MomentProfile::from_parts(vertices, segments, Family::Custom)
        .map_err(|_| Error::ValidityConditionFails("the strained profile is not star-shaped"))?;

    let mut witnesses = alloc::vec![axis_orbits(&out)[0]];
    witnesses.extend(min_orbit_at_vertex(&out, 1));
    let flags = classify(&out);
    let strict_in = classify(p).strictly_monotone.holds;
    Ok(Strain {
        spec: StrainSpec { eps, k: slope, w_star, spike_intercept: tip },
        outcome: SurgeryOutcome {
            volume_delta: area(&out) - area(p),
            volume_delta_bound: libm::sqrt(eps) / 2.0,
            new_orbit_witnesses: witnesses,
            preserved_flags: flags,
            profile: out,
        },
        strictly_monotone_preserved: strict_in && flags.strictly_monotone.holds,
    })
}

fn crosses_piece(piece: &Piece, a: Vec2, b: Vec2) -> bool {
    let k = piece.sample_count();
    (0..k).any(|j| segments_cross(a, b, piece.point(j as f64 / k as f64), piece.point((j + 1) as f64 / k as f64)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flattened {
    pub profile: MomentProfile,
    /// Slope `dw2/dw1` of the straight first segment.
    pub k: f64,
    pub area_change: f64,
}

/// Make the boundary straight on the first `radius` of arclength-chord from
/// `(a, 0)`, keeping the intercept. Polygonal profiles are returned unchanged.
pub fn flatten_near_intercept(p: &MomentProfile, radius: f64) -> Result<Flattened> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::ParamOutOfRange("flattening radius must be positive"));
    }
    let piece = p.piece(0);
    let v0 = piece.a;
    let slope = |q: Vec2| if q.x == v0.x { f64::INFINITY } else { q.y / (q.x - v0.x) };
    if (piece.b - v0).norm() <= radius {
        return Err(Error::RadiusTooLarge { vertex: 0 });
    }
    if piece.is_line() {
        return Ok(Flattened { profile: p.clone(), k: slope(piece.b), area_change: 0.0 });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let m = 0.5 * (lo + hi);
        if (piece.point(m) - v0).norm() < radius {
            lo = m;
        } else {
            hi = m;
        }
    }
    let t = 0.5 * (lo + hi);
    let q = piece.point(t);
    let mut vertices = alloc::vec![v0, q];
    vertices.extend_from_slice(&p.vertices()[1..]);
    let mut segments = alloc::vec![
        Segment::line(segment_normal(v0, q)),
        Segment { shape: piece.split_shapes(t).1, normal: p.segments()[0].normal },
    ];
    segments.extend_from_slice(&p.segments()[1..]);
    let out = MomentProfile::from_parts(vertices, segments, Family::Custom)?;
    let area_change = area(&out) - area(p);
    if area_change.abs() > radius * radius {
        return Err(Error::ValidityConditionFails("flattening changed the area by more than radius^2"));
    }
    Ok(Flattened { profile: out, k: slope(q), area_change })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ruelle_closed_form;
    use crate::reeb::{t_min, Method};
    use core::f64::consts::FRAC_PI_4;

    #[test]
    fn strangulated_ball() {
        let ball = MomentProfile::ball(2.0).unwrap();
        let s = strangulate(&ball, 0.1, FRAC_PI_4).unwrap();
        let out = &s.outcome.profile;
        assert_eq!(s.spec.apex, Vec2::new(0.1, 0.1));
        assert_eq!(s.spec.w_star, 1.0);
        assert_eq!(ruelle_closed_form(out), 4.0);
        let w = s.outcome.new_orbit_witnesses[0];
        assert_eq!(w.mn, IVec::new(1, 1));
        assert!((w.action - 0.2).abs() < 1e-15);
        assert!(t_min(out, Method::Fast).unwrap().action <= 0.2);
        assert!(s.outcome.volume_delta.abs() <= s.outcome.volume_delta_bound);
        assert!(!s.outcome.preserved_flags.monotone.holds);
    }

    #[test]
    fn strangulate_rejects_large_eps() {
        let ball = MomentProfile::ball(2.0).unwrap();
        assert!(matches!(strangulate(&ball, 2.0, FRAC_PI_4), Err(Error::EpsTooLarge { .. })));
    }

    #[test]
    fn strained_ellipsoid() {
        let e = MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap();
        let s = strain(&e, 1e-2, Some(-4.0)).unwrap();
        assert_eq!(s.spec.w_star, 1.0 - 1e-2 / 4.0);
        assert_eq!(ruelle_closed_form(&s.outcome.profile), 4.0 + 1.0 / 1e-2f64.sqrt());
        assert!(s.outcome.volume_delta >= 0.0 && s.outcome.volume_delta <= s.outcome.volume_delta_bound);
        assert!(s.strictly_monotone_preserved);
        let t = t_min(&s.outcome.profile, Method::Fast).unwrap();
        assert!((t.action - 1.0075).abs() < 1e-12, "{t:?}");
    }

    #[test]
    fn strain_needs_flat_start() {
        let f = MomentProfile::fc_domain(1.0, 0.5, 8).unwrap();
        assert!(matches!(strain(&f, 1e-3, None), Err(Error::NotFlattened(_))));
        let flat = flatten_near_intercept(&f, 0.05).unwrap();
        assert!(flat.k < 0.0);
        assert!(flat.area_change.abs() <= 0.05 * 0.05);
        assert!(strain(&flat.profile, 1e-4, Some(flat.k)).is_ok());
    }

    #[test]
    fn flatten_polygon_is_identity() {
        let e = MomentProfile::ellipsoid(1.0, 4.0, 2).unwrap();
        let f = flatten_near_intercept(&e, 0.1).unwrap();
        assert_eq!(f.profile, e);
        assert_eq!(f.k, -4.0);
        assert!(matches!(flatten_near_intercept(&e, 10.0), Err(Error::RadiusTooLarge { .. })));
    }
}
