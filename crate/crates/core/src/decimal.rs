//! Exact decimal reading of float coordinates.
//!
//! A coordinate is treated as an exact decimal when its shortest round-trip
//! representation needs at most [`EXACT_DIGITS`] significant digits. Values
//! produced by irrational operations (square roots, trigonometry) need 16 or
//! 17 digits and are treated as inexact. Rationality of a segment normal is
//! decided on these exact values, never on float slopes.

use core::fmt::Write;

use crate::plane::{gcd_u128, IVec, Vec2};

/// Significant digits up to which a float is read as the decimal it prints as.
pub const EXACT_DIGITS: usize = 15;

/// `mant · 10^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub mant: i128,
    pub exp: i32,
}

struct Buf {
    bytes: [u8; 64],
    len: usize,
}

impl Write for Buf {
    fn write_str(&mut self, s: &str) -> core::fmt::Result {
        let b = s.as_bytes();
        if self.len + b.len() > self.bytes.len() {
            return Err(core::fmt::Error);
        }
        self.bytes[self.len..self.len + b.len()].copy_from_slice(b);
        self.len += b.len();
        Ok(())
    }
}

impl Decimal {
    pub const ZERO: Decimal = Decimal { mant: 0, exp: 0 };

    /// Exact decimal value of `x`, if it has at most [`EXACT_DIGITS`] digits.
    pub fn exact(x: f64) -> Option<Decimal> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Decimal::ZERO);
        }
        let mut buf = Buf { bytes: [0; 64], len: 0 };
        write!(buf, "{:e}", x).ok()?;
        let s = core::str::from_utf8(&buf.bytes[..buf.len]).ok()?;
        let (mantissa, exponent) = s.split_once('e')?;
        let exponent: i32 = exponent.parse().ok()?;
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa),
        };
        let mut digits: i128 = 0;
        let mut count = 0usize;
        let mut frac = 0i32;
        let mut after_dot = false;
        for c in mantissa.chars() {
            if c == '.' {
                after_dot = true;
                continue;
            }
            digits = digits * 10 + c.to_digit(10)? as i128;
            count += 1;
            if after_dot {
                frac += 1;
            }
        }
        if count > EXACT_DIGITS {
            return None;
        }
        let mant = if neg { -digits } else { digits };
        Some(Decimal { mant, exp: exponent - frac }.normalized())
    }

    fn normalized(mut self) -> Decimal {
        if self.mant == 0 {
            return Decimal::ZERO;
        }
        while self.mant % 10 == 0 {
            self.mant /= 10;
            self.exp += 1;
        }
        self
    }

    fn rescale(self, exp: i32) -> Option<i128> {
        debug_assert!(exp <= self.exp);
        let shift = u32::try_from(self.exp - exp).ok()?;
        self.mant.checked_mul(10i128.checked_pow(shift)?)
    }

    pub fn checked_sub(self, o: Decimal) -> Option<Decimal> {
        let e = self.exp.min(o.exp);
        let d = self.rescale(e)?.checked_sub(o.rescale(e)?)?;
        Some(Decimal { mant: d, exp: e }.normalized())
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0
    }
}

fn coordinate_delta(a: f64, b: f64) -> Option<Decimal> {
    if a.to_bits() == b.to_bits() {
        return Some(Decimal::ZERO);
    }
    Decimal::exact(b)?.checked_sub(Decimal::exact(a)?)
}

/// Primitive integer direction parallel to the decimal vector `(x, y)`.
pub fn primitive_direction(x: Decimal, y: Decimal) -> Option<IVec> {
    if x.is_zero() && y.is_zero() {
        return None;
    }
    let (x, y) = match (x.is_zero(), y.is_zero()) {
        (true, _) => (0i128, y.mant.signum()),
        (_, true) => (x.mant.signum(), 0i128),
        _ => {
            let e = x.exp.min(y.exp);
            (x.rescale(e)?, y.rescale(e)?)
        }
    };
    let g = gcd_u128(x.unsigned_abs(), y.unsigned_abs()) as i128;
    let (m, n) = (x / g, y / g);
    Some(IVec::new(i64::try_from(m).ok()?, i64::try_from(n).ok()?))
}

/// Primitive outward normal `(Δw2, −Δw1)` of the straight segment `a → b`,
/// when both coordinate differences are exact decimals.
pub fn segment_normal(a: Vec2, b: Vec2) -> Option<IVec> {
    let dx = coordinate_delta(a.x, b.x)?;
    let dy = coordinate_delta(a.y, b.y)?;
    let neg_dx = Decimal { mant: -dx.mant, exp: dx.exp };
    primitive_direction(dy, neg_dx)
}
