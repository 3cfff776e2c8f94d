//! Reeb dynamics on the boundary of a toric domain: angular velocities,
//! closed orbits and their actions, the minimal action, and a numerical check
//! that the linearized flow is a shear.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::lattice::{primitive_box, walk, Bound, DirArc, Search, Site};
use crate::plane::{wrap_angle, IVec, Vec2};
use crate::profile::MomentProfile;

/// Default box size of the brute-force search.
pub const DEFAULT_ORACLE_CUTOFF: i64 = 200;

/// Where a closed orbit sits on the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitLocation {
    /// The circle over the `w1`-intercept.
    AxisA,
    /// The circle over the `w2`-intercept.
    AxisB,
    Segment(usize),
    Vertex(usize),
}

impl OrbitLocation {
    fn rank(self) -> u8 {
        match self {
            OrbitLocation::AxisA => 0,
            OrbitLocation::AxisB => 1,
            OrbitLocation::Segment(_) => 2,
            OrbitLocation::Vertex(_) => 3,
        }
    }

    pub fn index(self, p: &MomentProfile) -> usize {
        match self {
            OrbitLocation::AxisA => 0,
            OrbitLocation::AxisB => p.vertices().len() - 1,
            OrbitLocation::Segment(i) | OrbitLocation::Vertex(i) => i,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            OrbitLocation::AxisA => "axis_a",
            OrbitLocation::AxisB => "axis_b",
            OrbitLocation::Segment(_) => "segment",
            OrbitLocation::Vertex(_) => "vertex",
        }
    }
}

/// A closed Reeb orbit family: primitive normal `(m, n)`, base point and action.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitDatum {
    pub mn: IVec,
    pub base_point: Vec2,
    pub action: f64,
    pub location: OrbitLocation,
    /// The normal is an edge of its vertex cone.
    pub on_cone_boundary: bool,
}

impl OrbitDatum {
    /// Total order: action, then location kind and index, then the smaller
    /// `max(|m|, |n|)`, then `(m, n)`.
    pub fn order(&self, other: &OrbitDatum) -> Ordering {
        let loc = |o: &OrbitDatum| {
            let i = match o.location {
                OrbitLocation::Segment(i) | OrbitLocation::Vertex(i) => i,
                _ => 0,
            };
            (o.location.rank(), i)
        };
        self.action
            .total_cmp(&other.action)
            .then(loc(self).cmp(&loc(other)))
            .then(self.mn.max_abs().cmp(&other.mn.max_abs()))
            .then(self.mn.cmp(&other.mn))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Stern–Brocot descent with pruning.
    Fast,
    /// Scan every primitive vector with `max(|m|, |n|) ≤ cutoff`.
    Oracle { cutoff: i64 },
}

/// Angular velocities `(Θ1, Θ2) = 2π·ν/(ν·p)`.
pub fn reeb_angular_velocities(p: &MomentProfile, point: Vec2, normal: Vec2) -> Result<(f64, f64)> {
    let d = denominator(p, point, normal)?;
    Ok((TAU * normal.x / d, TAU * normal.y / d))
}

/// `(ν1 + ν2)/(ν·p)`.
pub fn rotation_density(p: &MomentProfile, point: Vec2, normal: Vec2) -> Result<f64> {
    let d = denominator(p, point, normal)?;
    Ok((normal.x + normal.y) / d)
}

fn denominator(p: &MomentProfile, point: Vec2, normal: Vec2) -> Result<f64> {
    let d = normal.dot(point);
    if d <= p.tol() {
        return Err(Error::DegenerateDenominator { value: d });
    }
    Ok(d)
}

pub fn axis_orbits(p: &MomentProfile) -> [OrbitDatum; 2] {
    let a = p.a_intercept();
    let b = p.b_intercept();
    [
        OrbitDatum { mn: IVec::new(1, 0), base_point: Vec2::new(a, 0.0), action: a, location: OrbitLocation::AxisA, on_cone_boundary: false },
        OrbitDatum { mn: IVec::new(0, 1), base_point: Vec2::new(0.0, b), action: b, location: OrbitLocation::AxisB, on_cone_boundary: false },
    ]
}

/// The orbit family over a straight segment with rational normal; the action
/// is constant along the segment and the midpoint is reported.
pub fn closed_orbit_on_segment(p: &MomentProfile, i: usize) -> Option<OrbitDatum> {
    let seg = p.segments().get(i)?;
    if !seg.is_line() {
        return None;
    }
    let mn = seg.rational_normal()?;
    let piece = p.piece(i);
    let mid = piece.point(0.5);
    Some(OrbitDatum { mn, base_point: mid, action: mn.pair(mid), location: OrbitLocation::Segment(i), on_cone_boundary: false })
}

/// Arc of normals at an interior vertex. At a reflex vertex the normal turns
/// clockwise and the arc runs from the outgoing to the incoming normal.
fn vertex_arc(p: &MomentProfile, v: usize) -> DirArc {
    let n_in = p.end_normal(v - 1, true);
    let n_out = p.end_normal(v, false);
    let segs = p.segments();
    let e_in = if segs[v - 1].is_line() { segs[v - 1].rational_normal() } else { None };
    let e_out = if segs[v].is_line() { segs[v].rational_normal() } else { None };
    let b_in = Bound::new(n_in, e_in, false);
    let b_out = Bound::new(n_out, e_out, false);
    let turn = match (e_in, e_out) {
        (Some(a), Some(b)) => a.cross(b).signum() as f64,
        _ => wrap_angle(n_out.angle() - n_in.angle()),
    };
    if turn >= 0.0 {
        DirArc::new(b_in, b_out)
    } else {
        DirArc::new(b_out, b_in)
    }
}

/// Open arc swept by the normal of a curved piece; its ends belong to the
/// adjacent vertices.
fn curve_arc(p: &MomentProfile, i: usize) -> DirArc {
    let piece = p.piece(i);
    let n0 = Bound::new(piece.normal(0.0), None, true);
    let n1 = Bound::new(piece.normal(1.0), None, true);
    if piece.turning() >= 0.0 {
        DirArc::new(n0, n1)
    } else {
        DirArc::new(n1, n0)
    }
}

/// A site together with its arc of normals.
#[derive(Clone, Copy, Debug)]
pub struct ConeSite {
    pub location: OrbitLocation,
    pub site: Site,
    pub arc: DirArc,
}

impl ConeSite {
    /// The orbit with normal `v`, if `v` lies in the arc.
    pub fn datum(&self, v: IVec) -> Option<OrbitDatum> {
        let boundary = self.arc.contains(v)?;
        let (action, q) = self.site.evaluate(v)?;
        Some(OrbitDatum { mn: v, base_point: q, action, location: self.location, on_cone_boundary: boundary })
    }
}

/// Vertex cones of interior vertices and normal sweeps of curved pieces.
pub fn cone_sites(p: &MomentProfile) -> Vec<ConeSite> {
    let mut out = Vec::new();
    let n = p.vertices().len();
    for v in 1..n - 1 {
        out.push(ConeSite { location: OrbitLocation::Vertex(v), site: Site::Point(p.vertices()[v]), arc: vertex_arc(p, v) });
    }
    for i in 0..p.segment_count() {
        if !p.segments()[i].is_line() {
            out.push(ConeSite { location: OrbitLocation::Segment(i), site: Site::Curve(p.piece(i)), arc: curve_arc(p, i) });
        }
    }
    out
}

fn fixed_orbits(p: &MomentProfile) -> Vec<OrbitDatum> {
    let mut out: Vec<OrbitDatum> = axis_orbits(p).into();
    out.extend((0..p.segment_count()).filter_map(|i| closed_orbit_on_segment(p, i)));
    out
}

struct Minimize<'a> {
    cone: &'a ConeSite,
    best: OrbitDatum,
}

impl Search for Minimize<'_> {
    fn threshold(&self) -> f64 {
        self.best.action
    }
    fn visit(&mut self, v: IVec) {
        if let Some(d) = self.cone.datum(v) {
            if d.order(&self.best) == Ordering::Less {
                self.best = d;
            }
        }
    }
}

struct Collect<'a> {
    cone: &'a ConeSite,
    cutoff: f64,
    found: Vec<OrbitDatum>,
}

impl Search for Collect<'_> {
    fn threshold(&self) -> f64 {
        self.cutoff
    }
    fn visit(&mut self, v: IVec) {
        if let Some(d) = self.cone.datum(v) {
            if d.action <= self.cutoff {
                self.found.push(d);
            }
        }
    }
}

fn collect(cone: &ConeSite, cutoff: f64) -> Vec<OrbitDatum> {
    let mut c = Collect { cone, cutoff: cutoff * (1.0 + 1e-12), found: Vec::new() };
    walk(&cone.site, &cone.arc, &mut c);
    c.found
}

fn sort_orbits(v: &mut Vec<OrbitDatum>) {
    v.sort_by(|a, b| a.order(b));
    v.dedup_by(|a, b| a.mn == b.mn && a.location == b.location);
}

/// Closed orbits at vertex `v` with action at most `cutoff`, by action.
pub fn orbits_at_vertex(p: &MomentProfile, v: usize, cutoff: f64) -> Result<Vec<OrbitDatum>> {
    let n = p.vertices().len();
    if v >= n {
        return Err(Error::ParamOutOfRange("vertex index out of range"));
    }
    let mut out = if v == 0 || v == n - 1 {
        let axis = axis_orbits(p)[if v == 0 { 0 } else { 1 }];
        if axis.action <= cutoff { alloc::vec![axis] } else { Vec::new() }
    } else {
        let cone = ConeSite { location: OrbitLocation::Vertex(v), site: Site::Point(p.vertices()[v]), arc: vertex_arc(p, v) };
        collect(&cone, cutoff)
    };
    sort_orbits(&mut out);
    Ok(out)
}

/// Lowest-action orbit in the normal cone of interior vertex `v`.
pub fn min_orbit_at_vertex(p: &MomentProfile, v: usize) -> Option<OrbitDatum> {
    let cone = cone_sites(p).into_iter().find(|c| c.location == OrbitLocation::Vertex(v))?;
    let sentinel = OrbitDatum {
        mn: IVec::new(0, 0),
        base_point: Vec2::new(0.0, 0.0),
        action: f64::INFINITY,
        location: OrbitLocation::Vertex(v),
        on_cone_boundary: false,
    };
    let mut m = Minimize { cone: &cone, best: sentinel };
    walk(&cone.site, &cone.arc, &mut m);
    m.best.action.is_finite().then_some(m.best)
}

/// Every closed orbit with action at most `cutoff`, in the total order.
pub fn enumerate_orbits(p: &MomentProfile, cutoff: f64) -> Vec<OrbitDatum> {
    let mut out: Vec<OrbitDatum> = fixed_orbits(p).into_iter().filter(|o| o.action <= cutoff).collect();
    for cone in cone_sites(p) {
        out.extend(collect(&cone, cutoff));
    }
    sort_orbits(&mut out);
    out
}

/// Minimal action of a closed Reeb orbit and the orbit attaining it.
pub fn t_min(p: &MomentProfile, method: Method) -> Result<OrbitDatum> {
    let mut best = fixed_orbits(p).into_iter().min_by(|a, b| a.order(b)).expect("axis orbits exist");
    let cones = cone_sites(p);
    match method {
        Method::Fast => {
            for cone in &cones {
                let mut m = Minimize { cone, best };
                walk(&cone.site, &cone.arc, &mut m);
                best = m.best;
            }
        }
        Method::Oracle { cutoff } => {
            if cutoff < 1 {
                return Err(Error::ParamOutOfRange("oracle cutoff must be positive"));
            }
            let vectors = primitive_box(cutoff);
            for cone in &cones {
                for &v in &vectors {
                    if let Some(d) = cone.datum(v) {
                        if d.order(&best) == Ordering::Less {
                            best = d;
                        }
                    }
                }
            }
            for cone in &cones {
                let bound = cone.site.outside_box_bound(&cone.arc, cutoff);
                if bound <= best.action * (1.0 + 1e-12) {
                    return Err(Error::OracleCutoffInsufficient {
                        cutoff,
                        location: cone.location.index(p),
                        bound,
                        best: best.action,
                    });
                }
            }
        }
    }
    Ok(best)
}

/// Outward unit normal at parameter `t` of segment `i`.
pub fn normal_at(p: &MomentProfile, i: usize, t: f64) -> Vec2 {
    if p.segments()[i].is_line() {
        p.end_normal(i, false)
    } else {
        p.piece(i).normal(t)
    }
}

/// Time-`T` linearized flow in the frame `e1 = (−ν2, ν1)` (in `w`),
/// `e2 = (−w2, w1)` (in `θ`), modulo the Reeb direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShearCheckResult {
    pub base_point: Vec2,
    pub time: f64,
    /// Row-major `[[M11, M12], [M21, M22]]`.
    pub monodromy: [[f64; 2]; 2],
    /// `M21 / T`; zero when `T = 0`.
    pub shear_over_time: f64,
    /// `max(|M11 − 1|, |M12|, |M22 − 1|)`.
    pub residual: f64,
}

/// Finite-difference monodromy of the Reeb flow at a boundary point.
///
/// Perturbations in `w` are pushed back onto the boundary along the ray
/// through the origin; the flow is exact (`w` fixed, `θ` linear in time).
pub fn shear_monodromy_check(p: &MomentProfile, point: Vec2, time: f64, h: f64) -> Result<ShearCheckResult> {
    if !(time >= 0.0 && h > 0.0) {
        return Err(Error::ParamOutOfRange("shear check needs T ≥ 0 and h > 0"));
    }
    let (i, t) = p.locate(point).ok_or(Error::PointNotOnBoundary)?;
    let nu = normal_at(p, i, t);
    let omega0 = reeb_angular_velocities(p, point, nu)?;
    let e1 = Vec2::new(-nu.y, nu.x);
    let e2 = Vec2::new(-point.y, point.x);
    let nu_w = nu.dot(point);

    // Perturb (w, θ) by (h·dw0, h·dθ0), project w back onto the boundary
    // radially and flow for `time`; return the coordinates in (e1, e2).
    let image = |dw0: Vec2, dth0: Vec2| -> Result<(f64, f64)> {
        let shifted = point + dw0 * h;
        let (j, s, q) = p.ray_hit(shifted.unit()).ok_or(Error::RayMissesBoundary)?;
        let omega = reeb_angular_velocities(p, q, normal_at(p, j, s))?;
        let dw = q - point;
        let dth = dth0 * h + Vec2::new(omega.0 - omega0.0, omega.1 - omega0.1) * time;
        Ok((dw.dot(e1) / h, nu.cross(dth) / nu_w / h))
    };
    let (m11, m21) = image(e1, Vec2::new(0.0, 0.0))?;
    let (m12, m22) = image(Vec2::new(0.0, 0.0), e2)?;

    let residual = (m11 - 1.0).abs().max(m12.abs()).max((m22 - 1.0).abs());
    if residual > 1e-2 {
        return Err(Error::StepTooLarge { residual });
    }
    Ok(ShearCheckResult {
        base_point: point,
        time,
        monodromy: [[m11, m12], [m21, m22]],
        shear_over_time: if time > 0.0 { m21 / time } else { 0.0 },
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn ball(c: f64) -> MomentProfile {
        MomentProfile::ball(c).unwrap()
    }

    #[test]
    fn ball_velocities() {
        let (t1, t2) = reeb_angular_velocities(&ball(1.0), Vec2::new(0.5, 0.5), Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
        assert!((t1 - 2.0 * PI).abs() < 1e-12 && (t2 - 2.0 * PI).abs() < 1e-12);
        let d = rotation_density(&ball(1.0), Vec2::new(0.5, 0.5), Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polydisk_edge_velocities() {
        let p = MomentProfile::polydisk(1.0, 2.0).unwrap();
        let (t1, t2) = reeb_angular_velocities(&p, Vec2::new(1.0, 0.5), Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!((t1, t2), (2.0 * PI, 0.0));
        assert_eq!(rotation_density(&p, Vec2::new(1.0, 1.0), Vec2::new(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(rotation_density(&p, Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn degenerate_denominator() {
        let r = reeb_angular_velocities(&ball(1.0), Vec2::new(0.5, 0.5), Vec2::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2));
        assert!(matches!(r, Err(Error::DegenerateDenominator { .. })));
    }

    #[test]
    fn segment_orbits() {
        let o = closed_orbit_on_segment(&ball(1.0), 0).unwrap();
        assert_eq!((o.mn, o.action), (IVec::new(1, 1), 1.0));
        let o = closed_orbit_on_segment(&MomentProfile::polydisk(1.0, 2.0).unwrap(), 0).unwrap();
        assert_eq!((o.mn, o.action), (IVec::new(1, 0), 1.0));
        let p = MomentProfile::from_vertices(&[(1.0, 0.0), (1.0 - 1.0 / PI, 1.0), (0.0, 1.2)]).unwrap();
        assert!(closed_orbit_on_segment(&p, 0).is_none());
    }

    #[test]
    fn polydisk_corner_orbits() {
        let p = MomentProfile::polydisk(1.0, 2.0).unwrap();
        let orbits = orbits_at_vertex(&p, 1, 4.0).unwrap();
        let got: Vec<(IVec, f64)> = orbits.iter().map(|o| (o.mn, o.action)).collect();
        assert_eq!(
            got,
            alloc::vec![(IVec::new(1, 0), 1.0), (IVec::new(0, 1), 2.0), (IVec::new(1, 1), 3.0), (IVec::new(2, 1), 4.0)]
        );
        assert!(orbits[0].on_cone_boundary && orbits[1].on_cone_boundary && !orbits[2].on_cone_boundary);
    }

    #[test]
    fn collinear_vertex() {
        let p = MomentProfile::ellipsoid(1.0, 1.0, 2).unwrap();
        let orbits = orbits_at_vertex(&p, 1, 10.0).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].mn, IVec::new(1, 1));
    }

    #[test]
    fn t_min_examples() {
        let p = MomentProfile::polydisk(1.0, 2.0).unwrap();
        let o = t_min(&p, Method::Fast).unwrap();
        assert_eq!((o.action, o.location), (1.0, OrbitLocation::AxisA));
        let e = MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap();
        assert_eq!(t_min(&e, Method::Fast).unwrap().action, 1.0);
        assert_eq!(t_min(&e, Method::Oracle { cutoff: 50 }).unwrap().action, 1.0);
    }

    #[test]
    fn notch_cone_contains_diagonal() {
        let eps = 0.1;
        let p = MomentProfile::from_vertices(&[(2.0, 0.0), (1.1, 0.9), (eps, eps), (0.9, 1.1), (0.0, 2.0)]).unwrap();
        let orbits = orbits_at_vertex(&p, 2, 2.0 * eps).unwrap();
        assert!(orbits.iter().any(|o| o.mn == IVec::new(1, 1) && (o.action - 2.0 * eps).abs() < 1e-15));
        let fast = t_min(&p, Method::Fast).unwrap();
        assert_eq!(fast, t_min(&p, Method::Oracle { cutoff: 200 }).unwrap());
        assert!(fast.action <= 2.0 * eps);
    }

    #[test]
    fn shear_on_ball() {
        let r = shear_monodromy_check(&ball(1.0), Vec2::new(0.5, 0.5), 1.0, 1e-6).unwrap();
        assert!(r.residual < 1e-4);
        assert!(r.monodromy[0][1].abs() < 1e-4);
        let z = shear_monodromy_check(&ball(1.0), Vec2::new(0.5, 0.5), 0.0, 1e-6).unwrap();
        assert_eq!(z.monodromy[1][0], 0.0);
    }
}
