//! Boundary pieces of a moment profile: straight segments and the two analytic
//! curve families used by the constructors and surgeries.

use crate::plane::{wrap_angle, IVec, Vec2};
use crate::quadrature::gauss_legendre_8;

/// Geometry of the piece joining two consecutive profile vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    /// Straight segment in the moment plane.
    Line,
    /// Image under `w = μ²` of the straight segment between the square roots
    /// of the endpoints. These are the pieces of toric domains whose
    /// square-root picture is polygonal.
    MuLine,
    /// Circular arc; angles are measured at `center`, `sweep > 0` is
    /// counterclockwise.
    Arc {
        center: Vec2,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

/// Whether the closed Reeb orbits over a piece come in a single family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalClass {
    /// Straight segment with rational normal; the primitive outward normal.
    Rational(IVec),
    /// Straight segment whose normal slope is not known to be rational.
    Irrational,
    /// Curved piece, normal varies along it.
    Varying,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub shape: Shape,
    pub normal: NormalClass,
}

impl Segment {
    pub fn line(normal: Option<IVec>) -> Self {
        Segment {
            shape: Shape::Line,
            normal: match normal {
                Some(v) => NormalClass::Rational(v),
                None => NormalClass::Irrational,
            },
        }
    }

    pub fn curve(shape: Shape) -> Self {
        Segment { shape, normal: NormalClass::Varying }
    }

    pub fn is_line(&self) -> bool {
        matches!(self.shape, Shape::Line)
    }

    pub fn rational_normal(&self) -> Option<IVec> {
        match self.normal {
            NormalClass::Rational(v) => Some(v),
            _ => None,
        }
    }
}

/// A segment together with its endpoints, parametrized over `t ∈ [0, 1]`.
#[derive(Clone, Copy, Debug)]
pub struct Piece {
    pub a: Vec2,
    pub b: Vec2,
    pub shape: Shape,
}

fn sqrt2(p: Vec2) -> Vec2 {
    Vec2::new(libm::sqrt(p.x.max(0.0)), libm::sqrt(p.y.max(0.0)))
}

impl Piece {
    pub fn new(a: Vec2, b: Vec2, shape: Shape) -> Self {
        Piece { a, b, shape }
    }

    pub fn is_line(&self) -> bool {
        matches!(self.shape, Shape::Line)
    }

    pub fn point(&self, t: f64) -> Vec2 {
        if t <= 0.0 {
            return self.a;
        }
        if t >= 1.0 {
            return self.b;
        }
        match self.shape {
            Shape::Line => self.a.lerp(self.b, t),
            Shape::MuLine => {
                let mu = sqrt2(self.a).lerp(sqrt2(self.b), t);
                Vec2::new(mu.x * mu.x, mu.y * mu.y)
            }
            Shape::Arc { center, radius, start, sweep } => {
                center + Vec2::from_angle(start + t * sweep) * radius
            }
        }
    }

    pub fn derivative(&self, t: f64) -> Vec2 {
        let t = t.clamp(0.0, 1.0);
        match self.shape {
            Shape::Line => self.b - self.a,
            Shape::MuLine => {
                let (m0, m1) = (sqrt2(self.a), sqrt2(self.b));
                let d = m1 - m0;
                let mu = m0.lerp(m1, t);
                Vec2::new(2.0 * mu.x * d.x, 2.0 * mu.y * d.y)
            }
            Shape::Arc { radius, start, sweep, .. } => {
                Vec2::from_angle(start + t * sweep).perp() * (radius * sweep)
            }
        }
    }

    /// Outward unit normal at parameter `t`.
    pub fn normal(&self, t: f64) -> Vec2 {
        let d = self.derivative(t);
        if d.norm() > 0.0 {
            return d.perp_cw().unit();
        }
        // Degenerate derivative (a μ-line through the origin); fall back to the chord.
        (self.b - self.a).perp_cw().unit()
    }

    /// `½∫ (w1 dw2 − w2 dw1)` along the piece, in closed form.
    pub fn area_term(&self) -> f64 {
        match self.shape {
            Shape::Line => 0.5 * self.a.cross(self.b),
            Shape::MuLine => {
                let m = sqrt2(self.a);
                let d = sqrt2(self.b) - m;
                let kappa = m.x * d.y - m.y * d.x;
                kappa * (m.x * m.y + 0.5 * (m.x * d.y + m.y * d.x) + d.x * d.y / 3.0)
            }
            Shape::Arc { center, radius, start, sweep } => {
                let prim = |th: f64| {
                    radius * center.x * libm::sin(th) - radius * center.y * libm::cos(th)
                        + radius * radius * th
                };
                0.5 * (prim(start + sweep) - prim(start))
            }
        }
    }

    /// Same integral by Gauss–Legendre panels; used to cross-check `area_term`.
    pub fn area_term_quadrature(&self, panels: usize) -> f64 {
        gauss_legendre_8(0.0, 1.0, panels.max(1), |t| {
            let p = self.point(t);
            let d = self.derivative(t);
            0.5 * (p.x * d.y - p.y * d.x)
        })
    }

    /// Signed turning of the outward normal from `t = 0` to `t = 1`.
    pub fn turning(&self) -> f64 {
        match self.shape {
            Shape::Line => 0.0,
            Shape::Arc { sweep, .. } => sweep,
            Shape::MuLine => wrap_angle(self.normal(1.0).angle() - self.normal(0.0).angle()),
        }
    }

    pub fn length(&self) -> f64 {
        match self.shape {
            Shape::Line => (self.b - self.a).norm(),
            Shape::Arc { radius, sweep, .. } => radius * sweep.abs(),
            Shape::MuLine => gauss_legendre_8(0.0, 1.0, 4, |t| self.derivative(t).norm()),
        }
    }

    /// Split at `t`, returning the shapes of the two halves.
    pub fn split_shapes(&self, t: f64) -> (Shape, Shape) {
        match self.shape {
            Shape::Line => (Shape::Line, Shape::Line),
            Shape::MuLine => (Shape::MuLine, Shape::MuLine),
            Shape::Arc { center, radius, start, sweep } => (
                Shape::Arc { center, radius, start, sweep: sweep * t },
                Shape::Arc { center, radius, start: start + sweep * t, sweep: sweep * (1.0 - t) },
            ),
        }
    }

    /// Parameter where the outward normal is parallel to `dir`, for curved
    /// pieces whose normal sweeps through `dir`.
    pub fn tangency(&self, dir: Vec2) -> Option<f64> {
        let turn = self.turning();
        if self.is_line() || turn == 0.0 {
            return None;
        }
        let s = turn.signum();
        let g = |t: f64| self.normal(t).cross(dir) * s;
        let (g0, g1) = (g(0.0), g(1.0));
        if self.normal(0.0).dot(dir) <= 0.0 && self.normal(1.0).dot(dir) <= 0.0 {
            return None;
        }
        if g0 < 0.0 || g1 > 0.0 {
            return None;
        }
        if let Shape::Arc { start, sweep, .. } = self.shape {
            // Outward normal is radial (ccw arc) or antiradial (cw arc).
            let radial = if sweep > 0.0 { dir } else { -dir };
            let rel = wrap_angle(radial.angle() - start);
            let tau = core::f64::consts::TAU;
            let rel = if sweep > 0.0 && rel < 0.0 {
                rel + tau
            } else if sweep < 0.0 && rel > 0.0 {
                rel - tau
            } else {
                rel
            };
            let t = rel / sweep;
            return Some(t.clamp(0.0, 1.0));
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Parameter where the ray from the origin in direction `u` crosses the
    /// piece, assuming the polar angle increases along it.
    pub fn ray_parameter(&self, u: Vec2) -> Option<f64> {
        let c0 = u.cross(self.a);
        let c1 = u.cross(self.b);
        if c0 > 0.0 || c1 < 0.0 {
            return None;
        }
        if let Shape::Line = self.shape {
            let d = self.b - self.a;
            let den = u.cross(d);
            if den == 0.0 {
                return None;
            }
            return Some((-c0 / den).clamp(0.0, 1.0));
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if u.cross(self.point(mid)) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Sample parameters: endpoints plus `k` interior points for curves.
    pub fn sample_count(&self) -> usize {
        if self.is_line() {
            1
        } else {
            32
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn closed_form_area_terms_match_quadrature() {
        let mu = Piece::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Shape::MuLine);
        assert!((mu.area_term() - 1.0 / 6.0).abs() < 1e-15);
        assert!((mu.area_term_quadrature(1) - 1.0 / 6.0).abs() < 1e-14);

        let arc = Piece::new(
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Shape::Arc { center: Vec2::new(0.0, 0.0), radius: 1.0, start: 0.0, sweep: FRAC_PI_2 },
        );
        assert!((arc.area_term() - PI / 4.0).abs() < 1e-15);
        assert!((arc.area_term_quadrature(4) - PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn mu_line_normal_is_vertical_at_axis_endpoint() {
        let mu = Piece::new(Vec2::new(1.0, 0.0), Vec2::new(0.25, 0.25), Shape::MuLine);
        let n = mu.normal(0.0);
        assert!(n.x.abs() < 1e-15 && (n.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tangency_on_arc_and_mu_line() {
        let arc = Piece::new(
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Shape::Arc { center: Vec2::new(0.0, 0.0), radius: 1.0, start: 0.0, sweep: FRAC_PI_2 },
        );
        let t = arc.tangency(Vec2::new(1.0, 1.0).unit()).unwrap();
        assert!((t - 0.5).abs() < 1e-12);
        assert!(arc.tangency(Vec2::new(-1.0, 1.0).unit()).is_none());

        let mu = Piece::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Shape::MuLine);
        let t = mu.tangency(Vec2::new(1.0, 1.0).unit()).unwrap();
        let p = mu.point(t);
        assert!((p.x - 0.25).abs() < 1e-12 && (p.y - 0.25).abs() < 1e-12);
    }

    #[test]
    fn ray_crossing() {
        let line = Piece::new(Vec2::new(2.0, 0.0), Vec2::new(0.0, 2.0), Shape::Line);
        let u = Vec2::new(1.0, 1.0).unit();
        let t = line.ray_parameter(u).unwrap();
        assert!((line.point(t) - Vec2::new(1.0, 1.0)).norm() < 1e-15);
    }
}
