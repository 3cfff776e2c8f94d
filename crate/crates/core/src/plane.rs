//! Planar vectors, integer lattice vectors and small numeric helpers.

use core::ops::{Add, Mul, Neg, Sub};

/// A point or direction in the moment plane, `x = w1`, `y = w2`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of `self × o`; positive when `o` is counterclockwise of `self`.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    #[inline]
    pub fn unit(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Clockwise quarter turn. For a boundary traversed from `(a,0)` to `(0,b)`
    /// this maps the tangent to the outward normal.
    #[inline]
    pub fn perp_cw(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        libm::atan2(self.y, self.x)
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Vec2 {
        Vec2::new(libm::cos(theta), libm::sin(theta))
    }

    pub fn max_norm(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        Vec2::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    /// Rotate by `quarter_turns · 90°` counterclockwise.
    pub fn rotate_quarter(self, quarter_turns: u8) -> Vec2 {
        match quarter_turns % 4 {
            0 => self,
            1 => Vec2::new(-self.y, self.x),
            2 => Vec2::new(-self.x, -self.y),
            _ => Vec2::new(self.y, -self.x),
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Vec2 {
    fn from((x, y): (f64, f64)) -> Self {
        Vec2::new(x, y)
    }
}

/// Integer vector `(m, n)` of the lattice Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IVec {
    pub m: i64,
    pub n: i64,
}

impl IVec {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn is_zero(self) -> bool {
        self.m == 0 && self.n == 0
    }

    pub fn is_primitive(self) -> bool {
        !self.is_zero() && gcd(self.m, self.n) == 1
    }

    /// Divide out the gcd. Zero stays zero.
    pub fn primitive(self) -> IVec {
        let g = gcd(self.m, self.n);
        if g == 0 {
            self
        } else {
            IVec::new(self.m / g, self.n / g)
        }
    }

    pub fn to_vec2(self) -> Vec2 {
        Vec2::new(self.m as f64, self.n as f64)
    }

    /// Linear form `m·w1 + n·w2`, the action of the orbit family with this
    /// winding vector based at `p`.
    #[inline]
    /// `m·x + n·y`, compensated so that equal exact values give equal floats.
    pub fn pair(self, p: Vec2) -> f64 {
        let (a, b) = (self.m as f64, self.n as f64);
        let p1 = a * p.x;
        let e1 = libm::fma(a, p.x, -p1);
        let p2 = b * p.y;
        let e2 = libm::fma(b, p.y, -p2);
        let s = p1 + p2;
        let bb = s - p1;
        let es = (p1 - (s - bb)) + (p2 - bb);
        s + (es + e1 + e2)
    }

    pub fn cross(self, o: IVec) -> i128 {
        self.m as i128 * o.n as i128 - self.n as i128 * o.m as i128
    }

    pub fn checked_add(self, o: IVec) -> Option<IVec> {
        Some(IVec::new(self.m.checked_add(o.m)?, self.n.checked_add(o.n)?))
    }

    pub fn rotate_quarter(self, quarter_turns: u8) -> IVec {
        match quarter_turns % 4 {
            0 => self,
            1 => IVec::new(-self.n, self.m),
            2 => IVec::new(-self.m, -self.n),
            _ => IVec::new(self.n, -self.m),
        }
    }

    pub fn max_abs(self) -> i64 {
        self.m.abs().max(self.n.abs())
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i64
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_angle(mut a: f64) -> f64 {
    use core::f64::consts::PI;
    while a <= -PI {
        a += 2.0 * PI;
    }
    while a > PI {
        a -= 2.0 * PI;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_primitive() {
        assert_eq!(gcd(12, -18), 6);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(IVec::new(4, -6).primitive(), IVec::new(2, -3));
        assert!(IVec::new(1, 0).is_primitive());
        assert!(!IVec::new(2, 0).is_primitive());
        assert!(!IVec::new(0, 0).is_primitive());
    }

    #[test]
    fn quarter_rotations_agree() {
        let v = IVec::new(3, -2);
        for q in 0..4 {
            let a = v.rotate_quarter(q).to_vec2();
            let b = v.to_vec2().rotate_quarter(q);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn outward_normal_of_ball_profile() {
        // (1,0) -> (0,1): clockwise perp of the tangent points away from the origin.
        let d = Vec2::new(-1.0, 1.0);
        assert_eq!(d.perp_cw(), Vec2::new(1.0, 1.0));
    }
}
