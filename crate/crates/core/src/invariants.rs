//! Volume, Ruelle invariant, systolic and Ruelle ratios, Gromov width of
//! monotone domains, and the convexity criterion.

use crate::classify::{classify, Classification};
use crate::error::{Error, Result};
use crate::plane::Vec2;
use crate::profile::MomentProfile;
use crate::quadrature::gauss_legendre_8;
use crate::reeb::{normal_at, t_min, Method, OrbitDatum};

/// Area of the region under the profile, which is the 4D volume `Vol(X_Ω)`.
pub fn area(p: &MomentProfile) -> f64 {
    p.pieces().map(|piece| piece.area_term()).sum()
}

/// Same area by Gauss–Legendre panels on every piece.
pub fn area_quadrature(p: &MomentProfile, panels: usize) -> f64 {
    p.pieces().map(|piece| piece.area_term_quadrature(panels)).sum()
}

/// `Ru = a + b`.
pub fn ruelle_closed_form(p: &MomentProfile) -> f64 {
    p.a_intercept() + p.b_intercept()
}

/// `∫ (ν1 + ν2)/(ν·w) (w1 dw2 − w2 dw1)` along the profile, with about `n`
/// Gauss–Legendre nodes per piece.
pub fn ruelle_quadrature(p: &MomentProfile, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParamOutOfRange("ruelle quadrature needs n ≥ 2"));
    }
    let panels = n.div_ceil(8);
    let tol = p.tol();
    let mut total = 0.0;
    for i in 0..p.segment_count() {
        let piece = p.piece(i);
        let mut err = None;
        total += gauss_legendre_8(0.0, 1.0, panels, |t| {
            let w = piece.point(t);
            let dw = piece.derivative(t);
            let nu = normal_at(p, i, t);
            let den = nu.dot(w);
            if den <= tol {
                err = Some(den);
                return 0.0;
            }
            (nu.x + nu.y) / den * (w.x * dw.y - w.y * dw.x)
        });
        if let Some(value) = err {
            return Err(Error::DegenerateDenominator { value });
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantReport {
    pub area: f64,
    pub contact_volume: f64,
    pub ruelle: f64,
    pub ruelle_quadrature: f64,
    pub t_min: f64,
    pub t_min_orbit: OrbitDatum,
    pub sys: f64,
    pub ru: f64,
    pub product: f64,
    pub classification: Classification,
}

/// Quadrature nodes per piece used by [`report`].
pub const REPORT_QUADRATURE_NODES: usize = 64;

pub fn report(p: &MomentProfile) -> Result<InvariantReport> {
    let orbit = t_min(p, Method::Fast)?;
    report_with(p, orbit)
}

/// [`report`] with an already computed minimal orbit.
pub fn report_with(p: &MomentProfile, orbit: OrbitDatum) -> Result<InvariantReport> {
    let area = area(p);
    let contact_volume = 2.0 * area;
    let ruelle = ruelle_closed_form(p);
    let t = orbit.action;
    Ok(InvariantReport {
        area,
        contact_volume,
        ruelle,
        ruelle_quadrature: ruelle_quadrature(p, REPORT_QUADRATURE_NODES)?,
        t_min: t,
        t_min_orbit: orbit,
        sys: t * t / contact_volume,
        ru: ruelle / libm::sqrt(contact_volume),
        product: ruelle * t / contact_volume,
        classification: classify(p),
    })
}

/// Gromov width of a monotone domain: the first value `L` at which the line
/// `w1 + w2 = L` touches the profile.
pub fn gromov_width_monotone(p: &MomentProfile) -> Result<f64> {
    let c = classify(p);
    if let Some(w) = c.monotone.witness {
        let segment = match w {
            crate::classify::Witness::Segment(i) | crate::classify::Witness::Vertex(i) => i,
        };
        return Err(Error::NotMonotone { segment });
    }
    let mut best = p.vertices().iter().map(|v| v.x + v.y).fold(f64::INFINITY, f64::min);
    let diag = Vec2::new(1.0, 1.0).unit();
    for piece in p.pieces().filter(|piece| !piece.is_line()) {
        if let Some(t) = piece.tangency(diag) {
            let q = piece.point(t);
            best = best.min(q.x + q.y);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolGrCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `Vol ≤ b·c_Gr` with the larger intercept as `b`.
pub fn vol_gr_bound_check(p: &MomentProfile) -> Result<VolGrCheck> {
    let c_gr = gromov_width_monotone(p)?;
    let lhs = area(p);
    let rhs = p.a_intercept().max(p.b_intercept()) * c_gr;
    Ok(VolGrCheck { lhs, rhs, holds: lhs <= rhs * (1.0 + 1e-12) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    BelowLower,
    AboveUpper,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::BelowLower => "below_lower",
            Verdict::AboveUpper => "above_upper",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Printed with every verdict.
pub const VERDICT_NOTE: &str = "below_lower/above_upper certify non-convexity only relative to the supplied thresholds; \
the true constants are unknown, known only to satisfy c <= 1/2 and C >= 3";

/// Thresholds `(c, C)` used when none are given.
pub const DEFAULT_THRESHOLDS: (f64, f64) = (0.5, 3.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriterionVerdict {
    pub product: f64,
    pub lower: f64,
    pub upper: f64,
    pub verdict: Verdict,
    pub note: &'static str,
}

pub fn verdict_for(product: f64, lower: f64, upper: f64) -> Result<CriterionVerdict> {
    if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
        return Err(Error::BadThresholds);
    }
    let verdict = if product < lower {
        Verdict::BelowLower
    } else if product > upper {
        Verdict::AboveUpper
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionVerdict { product, lower, upper, verdict, note: VERDICT_NOTE })
}

pub fn criterion_verdict(p: &MomentProfile, lower: f64, upper: f64) -> Result<CriterionVerdict> {
    if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
        return Err(Error::BadThresholds);
    }
    verdict_for(report(p)?.product, lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_report() {
        let r = report(&MomentProfile::ball(1.0).unwrap()).unwrap();
        assert_eq!((r.area, r.contact_volume, r.ruelle, r.t_min, r.sys, r.ru, r.product), (0.5, 1.0, 2.0, 1.0, 1.0, 2.0, 2.0));
    }

    #[test]
    fn ellipsoid_report() {
        let r = report(&MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap()).unwrap();
        assert_eq!((r.ruelle, r.area, r.contact_volume, r.t_min, r.sys, r.ru, r.product), (5.0, 2.0, 4.0, 1.0, 0.25, 2.5, 1.25));
    }

    #[test]
    fn named_ruelle_values() {
        assert_eq!(ruelle_closed_form(&MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap()), 5.0);
        assert_eq!(ruelle_closed_form(&MomentProfile::ball(2.0).unwrap()), 4.0);
        let q = ruelle_quadrature(&MomentProfile::ellipsoid(1.0, 4.0, 64).unwrap(), 8).unwrap();
        assert!((q - 5.0).abs() < 1e-12);
    }

    #[test]
    fn areas() {
        assert_eq!(area(&MomentProfile::ball(1.0).unwrap()), 0.5);
        assert_eq!(area(&MomentProfile::polydisk(1.0, 2.0).unwrap()), 2.0);
    }

    #[test]
    fn gromov_widths() {
        assert_eq!(gromov_width_monotone(&MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap()).unwrap(), 1.0);
        assert_eq!(gromov_width_monotone(&MomentProfile::ball(3.0).unwrap()).unwrap(), 3.0);
        let notch = MomentProfile::from_vertices(&[(2.0, 0.0), (1.1, 0.9), (0.1, 0.1), (0.9, 1.1), (0.0, 2.0)]).unwrap();
        assert!(matches!(gromov_width_monotone(&notch), Err(Error::NotMonotone { .. })));
    }

    #[test]
    fn vol_gr_examples() {
        let c = vol_gr_bound_check(&MomentProfile::polydisk(1.0, 2.0).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (2.0, 2.0, true));
        let c = vol_gr_bound_check(&MomentProfile::ellipsoid(1.0, 4.0, 1).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (2.0, 4.0, true));
        let c = vol_gr_bound_check(&MomentProfile::ball(1.0).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (0.5, 1.0, true));
    }

    #[test]
    fn verdicts() {
        let v = criterion_verdict(&MomentProfile::polydisk(1.0, 1000.0).unwrap(), 0.4, 3.0).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!((v.product - 0.5005).abs() < 1e-12);
        assert_eq!(verdict_for(1.0, 3.0, 0.5), Err(Error::BadThresholds));
        assert_eq!(verdict_for(0.1, 0.4, 3.0).unwrap().verdict, Verdict::BelowLower);
        assert_eq!(verdict_for(3.5, 0.4, 3.0).unwrap().verdict, Verdict::AboveUpper);
    }
}
