//! Minimization of the action `v·q` over primitive lattice vectors `v` whose
//! direction lies in an arc of outward normals.
//!
//! A site is either a corner point (its normal cone) or a curved piece (its
//! normal sweep, the orbit sits at the tangency point). The fast search walks
//! the Stern–Brocot tree of each quadrant of the arc; the oracle scans a box.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::plane::{gcd, IVec, Vec2};
use crate::segment::Piece;

const ZERO_CROSS: f64 = 1e-12;
const ANGLE_SLACK: f64 = 1e-12;
/// Largest coordinate a Stern–Brocot mediant may reach at a corner.
pub const MAX_COORD: i64 = 1 << 40;
/// Same for curved pieces. Near an end on an axis the actions of a curve
/// tend to the intercept without exceeding it by a margin, so the descent
/// towards that end is cut here.
pub const MAX_CURVE_COORD: i64 = 1 << 16;

/// One end of a direction arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bound {
    pub dir: Vec2,
    /// Primitive integer direction when the end is known to be rational.
    pub exact: Option<IVec>,
    pub open: bool,
}

impl Bound {
    pub fn new(dir: Vec2, exact: Option<IVec>, open: bool) -> Bound {
        Bound { dir: dir.unit(), exact, open }
    }

    /// Sign of `self × v`, zero within tolerance.
    fn cross_sign(&self, v: IVec) -> i8 {
        match self.exact {
            Some(e) => e.cross(v).signum() as i8,
            None => {
                let c = self.dir.cross(v.to_vec2());
                if c.abs() <= ZERO_CROSS * v.to_vec2().norm() {
                    0
                } else if c > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Counterclockwise arc of directions from `lo` to `hi`, width below π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirArc {
    pub lo: Bound,
    pub hi: Bound,
    /// Polar angle of `lo` in `[0, 2π)`.
    pub start: f64,
    pub width: f64,
}

impl DirArc {
    pub fn new(lo: Bound, hi: Bound) -> DirArc {
        let tau = core::f64::consts::TAU;
        let mut start = lo.dir.angle();
        if start < 0.0 {
            start += tau;
        }
        let mut width = hi.dir.angle() - lo.dir.angle();
        while width < 0.0 {
            width += tau;
        }
        while width >= tau {
            width -= tau;
        }
        if lo.exact.is_some() && lo.exact == hi.exact {
            width = 0.0;
        }
        if width > tau - 1e-9 {
            width = 0.0;
        }
        DirArc { lo, hi, start, width }
    }

    /// `Some(on_boundary)` when `v` points into the arc.
    pub fn contains(&self, v: IVec) -> Option<bool> {
        if v.is_zero() {
            return None;
        }
        let c_lo = self.lo.cross_sign(v);
        let c_hi = -self.hi.cross_sign(v);
        if c_lo < 0 || c_hi < 0 {
            return None;
        }
        let vf = v.to_vec2();
        if vf.dot(self.lo.dir) + vf.dot(self.hi.dir) <= 0.0 {
            return None;
        }
        let on_lo = c_lo == 0;
        let on_hi = c_hi == 0;
        if (on_lo && self.lo.open) || (on_hi && self.hi.open) {
            return None;
        }
        Some(on_lo || on_hi)
    }

    /// Sub-arcs cut by the coordinate axes, as `(quarter turns, lo, hi)` with
    /// angles in the frame rotated back to the first quadrant.
    fn quadrant_pieces(&self) -> Vec<(u8, f64, f64)> {
        let end = self.start + self.width;
        let q0 = libm::floor(self.start / FRAC_PI_2) as i64;
        let q1 = libm::floor(end / FRAC_PI_2) as i64;
        let mut out = Vec::new();
        for q in q0..=q1 {
            let base = q as f64 * FRAC_PI_2;
            let lo = (self.start - base).max(0.0);
            let hi = (end - base).min(FRAC_PI_2);
            // A sliver past an axis holds only the axis vector, which the
            // neighbouring piece already visits.
            let sliver = hi - lo <= ANGLE_SLACK && self.width > ANGLE_SLACK;
            if lo <= hi && !sliver {
                out.push(((q.rem_euclid(4)) as u8, lo, hi));
            }
        }
        out
    }
}

/// Where the orbits of an arc live.
#[derive(Clone, Copy, Debug)]
pub enum Site {
    Point(Vec2),
    Curve(Piece),
}

impl Site {
    /// Action and base point of the orbit with normal direction `v`.
    pub fn evaluate(&self, v: IVec) -> Option<(f64, Vec2)> {
        let q = match self {
            Site::Point(p) => *p,
            Site::Curve(piece) => piece.point(piece.tangency(v.to_vec2().unit())?),
        };
        let action = v.pair(q);
        (action > 0.0).then_some((action, q))
    }

    /// Base points at the two ends of the part of the site whose normals lie
    /// between the directions `u0` and `u1`.
    fn coord_limit(&self) -> i64 {
        match self {
            Site::Point(_) => MAX_COORD,
            Site::Curve(_) => MAX_CURVE_COORD,
        }
    }

    fn ends(&self, u0: Vec2, u1: Vec2) -> Option<[Vec2; 2]> {
        match self {
            Site::Point(p) => Some([*p, *p]),
            Site::Curve(piece) => {
                let t = |u: Vec2| {
                    piece.tangency(u).unwrap_or_else(|| {
                        // Direction just outside the sweep: take the nearer end.
                        let d0 = piece.normal(0.0).cross(u).abs() - piece.normal(0.0).dot(u);
                        let d1 = piece.normal(1.0).cross(u).abs() - piece.normal(1.0).dot(u);
                        if d0 <= d1 { 0.0 } else { 1.0 }
                    })
                };
                Some([piece.point(t(u0)), piece.point(t(u1))])
            }
        }
    }

    /// Lower bound on the action of every primitive `a·l + b·r` with
    /// `a, b ≥ 1`, given that its direction lies in the angle range `[c0, c1]`.
    /// `l` and `r` lie in a common closed quadrant.
    pub fn subtree_bound(&self, l: IVec, r: IVec, c0: f64, c1: f64) -> f64 {
        let (u0, u1) = (Vec2::from_angle(c0), Vec2::from_angle(c1));
        let Some(q) = self.ends(u0, u1) else {
            return f64::NEG_INFINITY;
        };
        let lq = l.pair(q[0]).min(l.pair(q[1]));
        let rq = r.pair(q[0]).min(r.pair(q[1]));
        let b1 = if lq >= 0.0 && rq >= 0.0 { lq + rq } else { f64::NEG_INFINITY };
        let h = [u0.dot(q[0]), u0.dot(q[1]), u1.dot(q[0]), u1.dot(q[1])].into_iter().fold(f64::INFINITY, f64::min);
        let b2 = if h > 0.0 { (l.to_vec2() + r.to_vec2()).norm() * h } else { f64::NEG_INFINITY };
        b1.max(b2)
    }

    /// Lower bound on the action of every primitive vector in `arc` with
    /// `max(|m|, |n|) > cutoff`.
    pub fn outside_box_bound(&self, arc: &DirArc, cutoff: i64) -> f64 {
        let k = (cutoff + 1) as f64;
        let mut best = f64::INFINITY;
        for (rot, lo, hi) in arc.quadrant_pieces() {
            let back = (4 - rot) % 4;
            let u0 = Vec2::from_angle(lo).rotate_quarter(rot);
            let u1 = Vec2::from_angle(hi).rotate_quarter(rot);
            let Some(q) = self.ends(u0, u1) else {
                return 0.0;
            };
            let q = [q[0].rotate_quarter(back), q[1].rotate_quarter(back)];
            let q1 = q[0].x.min(q[1].x);
            let q2 = q[0].y.min(q[1].y);
            let mut bound = 0.0f64;
            if q1 >= 0.0 && q2 >= 0.0 {
                // Primitive vectors outside the box have both coordinates ≥ 1.
                bound = (k * q1 + q2).min(q1 + k * q2);
            }
            let mut dirs = alloc::vec![Vec2::from_angle(lo), Vec2::from_angle(hi)];
            if lo <= core::f64::consts::FRAC_PI_4 && core::f64::consts::FRAC_PI_4 <= hi {
                dirs.push(Vec2::new(1.0, 1.0));
            }
            let h = dirs
                .iter()
                .flat_map(|d| q.iter().map(move |p| d.dot(*p) / d.max_norm()))
                .fold(f64::INFINITY, f64::min);
            bound = bound.max(k * h);
            best = best.min(bound);
        }
        best.max(0.0)
    }
}

/// Callbacks driving [`walk`].
pub trait Search {
    /// Subtrees whose bound exceeds this are pruned.
    fn threshold(&self) -> f64;
    /// Offered every vector reached; membership is the visitor's business.
    fn visit(&mut self, v: IVec);
}

/// Stern–Brocot descent over every quadrant piece of `arc`, pruning with
/// [`Site::subtree_bound`].
pub fn walk(site: &Site, arc: &DirArc, search: &mut impl Search) {
    for (rot, lo, hi) in arc.quadrant_pieces() {
        let offset = rot as f64 * FRAC_PI_2;
        let orig = |v: IVec| v.rotate_quarter(rot);
        let (l0, r0) = (IVec::new(1, 0), IVec::new(0, 1));
        search.visit(orig(l0));
        search.visit(orig(r0));
        let mut stack: Vec<(IVec, IVec)> = alloc::vec![(l0, r0)];
        while let Some((l, r)) = stack.pop() {
            let al = libm::atan2(l.n as f64, l.m as f64);
            let ar = libm::atan2(r.n as f64, r.m as f64);
            if ar.min(hi + ANGLE_SLACK) <= al.max(lo - ANGLE_SLACK) {
                continue;
            }
            let c1 = ar.min(hi);
            let c0 = al.max(lo).min(c1);
            let bound = site.subtree_bound(orig(l), orig(r), c0 + offset, c1 + offset);
            if bound > search.threshold() * (1.0 + 1e-12) {
                continue;
            }
            let m = IVec::new(l.m + r.m, l.n + r.n);
            if m.max_abs() > site.coord_limit() {
                continue;
            }
            search.visit(orig(m));
            stack.push((m, r));
            stack.push((l, m));
        }
    }
}

/// All primitive vectors with `max(|m|, |n|) ≤ cutoff`, in lexicographic order.
pub fn primitive_box(cutoff: i64) -> Vec<IVec> {
    let mut out = Vec::new();
    for m in -cutoff..=cutoff {
        for n in -cutoff..=cutoff {
            if gcd(m, n) == 1 {
                out.push(IVec::new(m, n));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Collect {
        arc: DirArc,
        limit: f64,
        site: Site,
        found: Vec<IVec>,
    }

    impl Search for Collect {
        fn threshold(&self) -> f64 {
            self.limit
        }
        fn visit(&mut self, v: IVec) {
            if self.arc.contains(v).is_some() {
                if let Some((a, _)) = self.site.evaluate(v) {
                    if a <= self.limit {
                        self.found.push(v);
                    }
                }
            }
        }
    }

    fn quadrant() -> DirArc {
        DirArc::new(Bound::new(Vec2::new(1.0, 0.0), Some(IVec::new(1, 0)), false), Bound::new(Vec2::new(0.0, 1.0), Some(IVec::new(0, 1)), false))
    }

    #[test]
    fn contains_and_boundary() {
        let arc = quadrant();
        assert_eq!(arc.contains(IVec::new(1, 0)), Some(true));
        assert_eq!(arc.contains(IVec::new(2, 1)), Some(false));
        assert_eq!(arc.contains(IVec::new(-1, 1)), None);
        assert_eq!(arc.contains(IVec::new(-1, 0)), None);
    }

    #[test]
    fn zero_width_arc() {
        let d = IVec::new(4, 1);
        let arc = DirArc::new(Bound::new(d.to_vec2(), Some(d), false), Bound::new(d.to_vec2(), Some(d), false));
        assert_eq!(arc.width, 0.0);
        assert_eq!(arc.contains(d), Some(true));
        assert_eq!(arc.contains(IVec::new(-4, -1)), None);
        assert_eq!(arc.contains(IVec::new(3, 1)), None);
    }

    #[test]
    fn walk_matches_box_scan() {
        let site = Site::Point(Vec2::new(1.0, 2.0));
        let mut c = Collect { arc: quadrant(), limit: 9.0, site, found: Vec::new() };
        walk(&site, &quadrant(), &mut c);
        c.found.sort();
        c.found.dedup();
        let mut brute: Vec<IVec> = primitive_box(20)
            .into_iter()
            .filter(|&v| quadrant().contains(v).is_some() && v.pair(Vec2::new(1.0, 2.0)) <= 9.0)
            .collect();
        brute.sort();
        assert_eq!(c.found, brute);
    }

    #[test]
    fn box_count() {
        // primitive vectors with max norm ≤ 1: the 8 neighbours of the origin
        assert_eq!(primitive_box(1).len(), 8);
    }
}
