//! Moment profiles: the boundary arc `∂₊Ω` of a star-shaped toric domain,
//! stored as a path from `(a, 0)` to `(0, b)`.

use alloc::vec::Vec;

use crate::decimal::segment_normal;
use crate::error::{Error, Result};
use crate::plane::{IVec, Vec2};
use crate::segment::{NormalClass, Piece, Segment, Shape};

/// Relative tolerance for geometric predicates, scaled by the profile diameter.
pub const REL_TOL: f64 = 1e-9;

/// Named family a profile was built from; carried into the file format.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Ellipsoid { a: f64, b: f64, n: usize },
    Polydisk { a: f64, b: f64 },
    Fc { b: f64, c: f64, n: usize },
    Custom,
}

/// Validated star-shaped moment profile.
///
/// Invariants: at least two vertices, the first on the positive `w1`-axis,
/// the last on the positive `w2`-axis, all others in the open quadrant; the
/// polar angle increases strictly along the path and every piece has
/// `ν·p > 0` away from the axes.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentProfile {
    vertices: Vec<Vec2>,
    segments: Vec<Segment>,
    family: Family,
}

impl MomentProfile {
    /// Build and validate a profile from vertices and per-segment data.
    pub fn from_parts(vertices: Vec<Vec2>, segments: Vec<Segment>, family: Family) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        if segments.len() != vertices.len() - 1 {
            return Err(Error::SegmentCountMismatch { expected: vertices.len() - 1, got: segments.len() });
        }
        let p = MomentProfile { vertices, segments, family };
        p.validate()?;
        Ok(p)
    }

    /// Polygonal profile through `points`; segment normals are rational when
    /// the coordinates are exact decimals.
    pub fn from_vertices(points: &[(f64, f64)]) -> Result<Self> {
        let vertices: Vec<Vec2> = points.iter().map(|&p| Vec2::from(p)).collect();
        let segments = vertices.windows(2).map(|w| Segment::line(segment_normal(w[0], w[1]))).collect();
        Self::from_parts(vertices, segments, Family::Custom)
    }

    /// Moment image of the ellipsoid `E(a, b)`: the segment `(a,0)–(0,b)`
    /// subdivided into `n` pieces.
    pub fn ellipsoid(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::ParamOutOfRange("ellipsoid intercepts must be positive"));
        }
        if n == 0 {
            return Err(Error::ParamOutOfRange("ellipsoid needs at least one segment"));
        }
        let normal = segment_normal(Vec2::new(a, 0.0), Vec2::new(0.0, b));
        let mut vertices = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let s = i as f64 / n as f64;
            let v = match i {
                0 => Vec2::new(a, 0.0),
                _ if i == n => Vec2::new(0.0, b),
                _ => Vec2::new(a * (1.0 - s), b * s),
            };
            vertices.push(v);
        }
        let segments = (0..n).map(|_| Segment::line(normal)).collect();
        Self::from_parts(vertices, segments, Family::Ellipsoid { a, b, n })
    }

    /// The round ball `B⁴(c)`.
    pub fn ball(c: f64) -> Result<Self> {
        Self::ellipsoid(c, c, 1)
    }

    /// Moment image of the polydisk `P(a, b)`.
    pub fn polydisk(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::ParamOutOfRange("polydisk sides must be positive"));
        }
        let mut p = Self::from_vertices(&[(a, 0.0), (a, b), (0.0, b)])?;
        p.family = Family::Polydisk { a, b };
        Ok(p)
    }

    /// The extremal convex family `X_{f_c}`: boundary `w2 = f_c(w1)` made of
    /// two square-root pieces joined by the line `w1 + w2 = c`.
    ///
    /// Requires `b ≥ 1`, `b/(1+b) ≤ c < 1`, `n ≥ 2` samples per piece.
    pub fn fc_domain(b: f64, c: f64, n: usize) -> Result<Self> {
        if !(b >= 1.0 && b.is_finite()) {
            return Err(Error::ParamOutOfRange("fc_domain needs b ≥ 1"));
        }
        let c_min = b / (1.0 + b);
        if !(c >= c_min * (1.0 - 1e-12) && c < 1.0) {
            return Err(Error::ParamOutOfRange("fc_domain needs b/(1+b) ≤ c < 1"));
        }
        if n < 2 {
            return Err(Error::ParamOutOfRange("fc_domain needs at least 2 samples per piece"));
        }
        let (left, right) = fc_breakpoints(b, c);
        let mu_lower_end = Vec2::new(c, libm::sqrt(c * (1.0 - c)));
        let mu_upper_start = Vec2::new(libm::sqrt(left), c / libm::sqrt(b));
        let w_lower_end = Vec2::new(right, c * (1.0 - c));
        let w_upper_start = Vec2::new(left, c * c / b);

        let mut vertices = Vec::new();
        let mut segments = Vec::new();
        vertices.push(Vec2::new(1.0, 0.0));
        // Lower piece: μ2 = √(c/(1−c))·(1 − μ1), μ1 from 1 down to c.
        for i in 1..n {
            let s = i as f64 / (n - 1) as f64;
            let v = if i == n - 1 {
                w_lower_end
            } else {
                let mu = Vec2::new(1.0, 0.0).lerp(mu_lower_end, s);
                Vec2::new(mu.x * mu.x, mu.y * mu.y)
            };
            vertices.push(v);
            segments.push(Segment::curve(Shape::MuLine));
        }
        // Middle piece w1 + w2 = c; degenerate when c = b/(1+b).
        if right - left > 1e-14 * (1.0 + right) {
            for i in 1..n {
                let s = i as f64 / (n - 1) as f64;
                let v = if i == n - 1 { w_upper_start } else { w_lower_end.lerp(w_upper_start, s) };
                vertices.push(v);
                segments.push(Segment::line(Some(IVec::new(1, 1))));
            }
        }
        // Upper piece: μ2 = √b − √((b−c)/c)·μ1, μ1 from √left down to 0.
        let mu_top = Vec2::new(0.0, libm::sqrt(b));
        for i in 1..n {
            let s = i as f64 / (n - 1) as f64;
            let v = if i == n - 1 {
                Vec2::new(0.0, b)
            } else {
                let mu = mu_upper_start.lerp(mu_top, s);
                Vec2::new(mu.x * mu.x, mu.y * mu.y)
            };
            vertices.push(v);
            segments.push(Segment::curve(Shape::MuLine));
        }
        Self::from_parts(vertices, segments, Family::Fc { b, c, n })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn piece(&self, i: usize) -> Piece {
        Piece::new(self.vertices[i], self.vertices[i + 1], self.segments[i].shape)
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        (0..self.segments.len()).map(move |i| self.piece(i))
    }

    /// `w1`-intercept `a(Ω)`.
    pub fn a_intercept(&self) -> f64 {
        self.vertices[0].x
    }

    /// `w2`-intercept `b(Ω)`.
    pub fn b_intercept(&self) -> f64 {
        self.vertices[self.vertices.len() - 1].y
    }

    pub fn diameter(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Absolute tolerance for this profile.
    pub fn tol(&self) -> f64 {
        REL_TOL * self.diameter()
    }

    /// Whether every piece is a straight segment.
    pub fn is_polygonal(&self) -> bool {
        self.segments.iter().all(|s| s.is_line())
    }

    /// Multiply all coordinates by `s > 0`. Normal classes are unchanged.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::ParamOutOfRange("scale must be positive"));
        }
        let vertices = self.vertices.iter().map(|&v| v * s).collect();
        let segments = self
            .segments
            .iter()
            .map(|seg| match seg.shape {
                Shape::Arc { center, radius, start, sweep } => Segment {
                    shape: Shape::Arc { center: center * s, radius: radius * s, start, sweep },
                    normal: seg.normal,
                },
                _ => *seg,
            })
            .collect();
        Self::from_parts(vertices, segments, Family::Custom)
    }

    /// Segment index and parameter where the ray from the origin in
    /// direction `u` meets the profile.
    pub fn ray_hit(&self, u: Vec2) -> Option<(usize, f64, Vec2)> {
        if !(u.x >= 0.0 && u.y >= 0.0) || (u.x == 0.0 && u.y == 0.0) {
            return None;
        }
        for (i, piece) in self.pieces().enumerate() {
            if let Some(t) = piece.ray_parameter(u) {
                return Some((i, t, piece.point(t)));
            }
        }
        None
    }

    /// Locate a point lying on the profile (within tolerance).
    pub fn locate(&self, point: Vec2) -> Option<(usize, f64)> {
        let (i, t, q) = self.ray_hit(point.unit())?;
        if (q - point).norm() <= 1e-7 * self.diameter().max(1.0) {
            Some((i, t))
        } else {
            None
        }
    }

    /// Outward normal at the start (`end = false`) or end of segment `i`.
    pub fn end_normal(&self, i: usize, end: bool) -> Vec2 {
        let piece = self.piece(i);
        if let (Shape::Line, Some(v)) = (piece.shape, self.segments[i].rational_normal()) {
            return v.to_vec2().unit();
        }
        piece.normal(if end { 1.0 } else { 0.0 })
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        let first = self.vertices[0];
        if !(first.y == 0.0 && first.x > 0.0) {
            return Err(Error::AxisViolation { index: 0 });
        }
        let last = self.vertices[n - 1];
        if !(last.x == 0.0 && last.y > 0.0) {
            return Err(Error::AxisViolation { index: n - 1 });
        }
        for (i, v) in self.vertices.iter().enumerate().take(n - 1).skip(1) {
            if !(v.x > 0.0 && v.y > 0.0) {
                return Err(Error::AxisViolation { index: i });
            }
        }
        for (i, seg) in self.segments.iter().enumerate() {
            if let Shape::Arc { center, radius, start, sweep } = seg.shape {
                let a = center + Vec2::from_angle(start) * radius;
                let b = center + Vec2::from_angle(start + sweep) * radius;
                let tol = 1e-9 * self.diameter();
                if (a - self.vertices[i]).norm() > tol || (b - self.vertices[i + 1]).norm() > tol {
                    return Err(Error::ArcMismatch { index: i });
                }
                if radius.is_nan() || radius <= 0.0 || sweep.abs() >= core::f64::consts::PI {
                    return Err(Error::ArcMismatch { index: i });
                }
            }
        }
        if let Err(e) = self.check_star_shaped() {
            if let Some((first, second)) = self.find_self_intersection() {
                return Err(Error::SelfIntersection { first, second });
            }
            return Err(e);
        }
        Ok(())
    }

    fn check_star_shaped(&self) -> Result<()> {
        let diam = self.diameter();
        for (i, piece) in self.pieces().enumerate() {
            let k = piece.sample_count();
            let mut prev = piece.a;
            for j in 1..=k {
                let q = piece.point(j as f64 / k as f64);
                if prev.cross(q) <= REL_TOL * prev.norm() * q.norm() {
                    return Err(Error::NotStarShaped { index: i });
                }
                prev = q;
            }
            if piece.is_line() {
                let nu = self.end_normal(i, false);
                if nu.dot(piece.point(0.5)) <= REL_TOL * diam {
                    return Err(Error::NotStarShaped { index: i });
                }
            } else {
                for j in 0..=k {
                    let t = j as f64 / k as f64;
                    let q = piece.point(t);
                    if q.x == 0.0 || q.y == 0.0 {
                        continue;
                    }
                    if piece.normal(t).dot(q) <= REL_TOL * diam {
                        return Err(Error::NotStarShaped { index: i });
                    }
                }
            }
        }
        Ok(())
    }

    fn find_self_intersection(&self) -> Option<(usize, usize)> {
        let mut chain: Vec<(usize, Vec2, Vec2)> = Vec::new();
        for (i, piece) in self.pieces().enumerate() {
            let k = piece.sample_count();
            let mut prev = piece.a;
            for j in 1..=k {
                let q = piece.point(j as f64 / k as f64);
                chain.push((i, prev, q));
                prev = q;
            }
        }
        for x in 0..chain.len() {
            for y in x + 2..chain.len() {
                let (si, p0, p1) = chain[x];
                let (sj, q0, q1) = chain[y];
                if segments_cross(p0, p1, q0, q1) {
                    return Some((si, sj));
                }
            }
        }
        None
    }
}

/// `(c(b−c)/b, c²)`: the `w1`-coordinates where the pieces of `f_c` meet.
pub fn fc_breakpoints(b: f64, c: f64) -> (f64, f64) {
    (c * (b - c) / b, c * c)
}

/// Proper or touching intersection of two closed segments.
pub fn segments_cross(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2) -> bool {
    let d1 = (p1 - p0).cross(q0 - p0);
    let d2 = (p1 - p0).cross(q1 - p0);
    let d3 = (q1 - q0).cross(p0 - q0);
    let d4 = (q1 - q0).cross(p1 - q0);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

impl NormalClass {
    pub fn label(&self) -> &'static str {
        match self {
            NormalClass::Rational(_) => "rational",
            NormalClass::Irrational => "irrational",
            NormalClass::Varying => "varying",
        }
    }
}
