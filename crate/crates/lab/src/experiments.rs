//! ε-sweeps, corpus bounds and the `f_c` scan.

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use toric_core::invariants::{area, area_quadrature, gromov_width_monotone, report, ruelle_closed_form};
use toric_core::reeb::{t_min, Method};
use toric_core::surgery::{flatten_near_intercept, strain, strangulate};
use toric_core::{classify, Error, MomentProfile};

use crate::corpus::{convex_4d_corpus, monotone_corpus, star_shaped_corpus};
use crate::svg::sweep_svg;
use crate::tables::write_sweep_csv;
use crate::{load_profile, LabError};

/// Slack used when comparing a measured value against a bound.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOp {
    Strangulate,
    Strain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub op: SweepOp,
    /// Family spec or profile file.
    pub profile: String,
    pub eps_grid: Vec<f64>,
    pub ray_angle: f64,
    /// Flatten the profile near `(a, 0)` before straining.
    pub flatten_radius: Option<f64>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// Slack for bound comparisons.
    pub tol: f64,
    pub oracle_cutoff: i64,
    pub seed: u64,
    pub corpus_size: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            op: SweepOp::Strangulate,
            profile: String::new(),
            eps_grid: Vec::new(),
            ray_angle: FRAC_PI_4,
            flatten_radius: None,
            csv: None,
            svg: None,
            tol: BOUND_SLACK,
            oracle_cutoff: 200,
            seed: 0,
            corpus_size: 100,
        }
    }
}

/// One ε of a surgery sweep. Measured fields are empty when the surgery
/// failed for that ε; the reason is in `error`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub eps: f64,
    pub area: Option<f64>,
    pub ruelle: Option<f64>,
    pub t_min: Option<f64>,
    pub sys: Option<f64>,
    pub ru: Option<f64>,
    pub product: Option<f64>,
    /// Strangulation: `4ε²/Vol(in)`, an upper bound for `sys`.
    /// Strain: `T_min(in)/(6ε·Vol(in))`, a claimed lower bound for `product`.
    pub bound_value: Option<f64>,
    pub bound_holds: Option<bool>,
    /// Strain only: `T_min(in)/(6√ε·Vol(in))`, the lower bound that follows
    /// from `ru² ≥ 1/(3ε·Vol)` and `sys ≥ T_min²/(12·Vol)`.
    pub alt_bound_value: Option<f64>,
    pub alt_bound_holds: Option<bool>,
    pub volume_delta: Option<f64>,
    pub volume_delta_bound: Option<f64>,
    pub w_star: Option<f64>,
    /// Strangulation only: half-angle of the removed sector.
    pub theta: Option<f64>,
    /// Strangulation: `16·w*²·θ < Vol(in)`. Strain: `√ε < Vol(in)`.
    pub side_condition: Option<bool>,
    pub strictly_monotone: Option<bool>,
    pub error: Option<String>,
}

impl SweepRecord {
    pub const FIELDS: [&'static str; 18] = [
        "eps",
        "area",
        "ruelle",
        "t_min",
        "sys",
        "ru",
        "product",
        "bound_value",
        "bound_holds",
        "alt_bound_value",
        "alt_bound_holds",
        "volume_delta",
        "volume_delta_bound",
        "w_star",
        "theta",
        "side_condition",
        "strictly_monotone",
        "error",
    ];

    fn failed(eps: f64, e: Error) -> SweepRecord {
        SweepRecord {
            eps,
            area: None,
            ruelle: None,
            t_min: None,
            sys: None,
            ru: None,
            product: None,
            bound_value: None,
            bound_holds: None,
            alt_bound_value: None,
            alt_bound_holds: None,
            volume_delta: None,
            volume_delta_bound: None,
            w_star: None,
            theta: None,
            side_condition: None,
            strictly_monotone: None,
            error: Some(e.to_string()),
        }
    }
}

/// Input quantities the per-ε bounds refer to.
#[derive(Clone, Copy, Debug)]
struct Baseline {
    area: f64,
    t_min: f64,
}

fn sweep_row(op: SweepOp, p: &MomentProfile, base: Baseline, eps: f64, ray: f64, tol: f64) -> Result<SweepRecord, Error> {
    let (out, mut row) = match op {
        SweepOp::Strangulate => {
            let s = strangulate(p, eps, ray)?;
            let bound = 4.0 * eps * eps / base.area;
            let mut row = SweepRecord::failed(eps, Error::PointNotOnBoundary);
            row.bound_value = Some(bound);
            row.volume_delta = Some(s.outcome.volume_delta);
            row.volume_delta_bound = Some(s.outcome.volume_delta_bound);
            row.w_star = Some(s.spec.w_star);
            row.theta = Some(s.spec.theta);
            row.side_condition = Some(s.side_condition);
            (s.outcome.profile, row)
        }
        SweepOp::Strain => {
            let s = strain(p, eps, None)?;
            let mut row = SweepRecord::failed(eps, Error::PointNotOnBoundary);
            row.bound_value = Some(base.t_min / (6.0 * eps * base.area));
            row.alt_bound_value = Some(base.t_min / (6.0 * eps.sqrt() * base.area));
            row.volume_delta = Some(s.outcome.volume_delta);
            row.volume_delta_bound = Some(s.outcome.volume_delta_bound);
            row.w_star = Some(s.spec.w_star);
            row.side_condition = Some(eps.sqrt() < base.area);
            (s.outcome.profile, row)
        }
    };
    let r = report(&out)?;
    row.error = None;
    row.area = Some(r.area);
    row.ruelle = Some(r.ruelle);
    row.t_min = Some(r.t_min);
    row.sys = Some(r.sys);
    row.ru = Some(r.ru);
    row.product = Some(r.product);
    row.strictly_monotone = Some(r.classification.strictly_monotone.holds);
    match op {
        SweepOp::Strangulate => row.bound_holds = row.bound_value.map(|b| r.sys <= b + tol),
        SweepOp::Strain => {
            row.bound_holds = row.bound_value.map(|b| r.product >= b - tol);
            row.alt_bound_holds = row.alt_bound_value.map(|b| r.product >= b - tol);
        }
    }
    Ok(row)
}

/// The profile a sweep operates on, flattened if requested.
pub fn sweep_input(config: &RunConfig) -> Result<MomentProfile, LabError> {
    let p = load_profile(&config.profile)?;
    Ok(match config.flatten_radius {
        Some(r) => flatten_near_intercept(&p, r)?.profile,
        None => p,
    })
}

/// Apply the surgery at every ε (in parallel), one record per ε sorted by
/// descending ε. Writes the CSV and the log-log plot when configured.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepRecord>, LabError> {
    let p = sweep_input(config)?;
    let base = Baseline { area: area(&p), t_min: t_min(&p, Method::Fast)?.action };
    let mut grid = config.eps_grid.clone();
    grid.sort_by(|a, b| b.total_cmp(a));
    let rows: Vec<SweepRecord> = grid
        .par_iter()
        .map(|&eps| {
            sweep_row(config.op, &p, base, eps, config.ray_angle, config.tol).unwrap_or_else(|e| SweepRecord::failed(eps, e))
        })
        .collect();
    if let Some(path) = &config.csv {
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows)?;
        fs::write(path, buf).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &config.svg {
        let title = match config.op {
            SweepOp::Strangulate => "strangulation: product vs eps",
            SweepOp::Strain => "strain: product vs eps",
        };
        fs::write(path, sweep_svg(&rows, title)).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(rows)
}

/// Extremes of `product` over one corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusStats {
    pub count: usize,
    pub min_product: f64,
    pub argmin: usize,
    pub max_product: f64,
    pub argmax: usize,
    /// Indices whose product is outside the bound being tested.
    pub violations: Vec<usize>,
    /// Profiles whose report could not be computed.
    pub failures: Vec<(usize, String)>,
}

fn stats(products: &[Result<f64, Error>], violates: impl Fn(f64) -> bool) -> CorpusStats {
    let mut s = CorpusStats {
        count: products.len(),
        min_product: f64::INFINITY,
        argmin: 0,
        max_product: f64::NEG_INFINITY,
        argmax: 0,
        violations: Vec::new(),
        failures: Vec::new(),
    };
    for (i, r) in products.iter().enumerate() {
        match r {
            Ok(x) => {
                if *x < s.min_product {
                    s.min_product = *x;
                    s.argmin = i;
                }
                if *x > s.max_product {
                    s.max_product = *x;
                    s.argmax = i;
                }
                if violates(*x) {
                    s.violations.push(i);
                }
            }
            Err(e) => s.failures.push((i, e.to_string())),
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolydiskRow {
    pub b: f64,
    pub product: f64,
    /// `(1 + b)/(2b)`.
    pub expected: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSummary {
    /// Monotone polygons, tested against `product ≥ 1/2`.
    pub monotone: CorpusStats,
    /// Convex (in `R⁴`) monotone profiles, tested against `product ≤ 3`.
    pub convex_4d: CorpusStats,
    pub polydisks: Vec<PolydiskRow>,
    /// Monotone polygons where `T_min` equals the Gromov width to `1e-12`.
    pub t_min_equals_gromov: usize,
    /// Profiles flagged strictly monotone but not monotone.
    pub strict_not_monotone: usize,
}

impl CorpusSummary {
    pub fn violations(&self) -> usize {
        self.monotone.violations.len() + self.convex_4d.violations.len()
    }
}

/// Products over seeded monotone and convex corpora plus the polydisk family.
pub fn run_corpus_bounds(config: &RunConfig) -> Result<CorpusSummary, LabError> {
    let n = config.corpus_size;
    let mono = monotone_corpus(n, config.seed);
    let convex = convex_4d_corpus(n, config.seed);
    let eval = |p: &MomentProfile| report(p).map(|r| (r.product, r.t_min, r.classification));
    let mono_r: Vec<_> = mono.par_iter().map(eval).collect();
    let convex_r: Vec<_> = convex.par_iter().map(eval).collect();
    let products = |rs: &[Result<(f64, f64, toric_core::Classification), Error>]| -> Vec<Result<f64, Error>> {
        rs.iter().map(|r| r.as_ref().map(|x| x.0).map_err(|e| e.clone())).collect()
    };
    let tol = config.tol;
    let t_min_equals_gromov = mono
        .iter()
        .zip(&mono_r)
        .filter(|(p, r)| match (r, gromov_width_monotone(p)) {
            (Ok((_, t, _)), Ok(g)) => (t - g).abs() <= 1e-12 * g.max(1.0),
            _ => false,
        })
        .count();
    let strict_not_monotone = mono_r
        .iter()
        .chain(&convex_r)
        .filter(|r| matches!(r, Ok((_, _, c)) if c.strictly_monotone.holds && !c.monotone.holds))
        .count();
    let mut polydisks = Vec::new();
    for b in [1.0, 10.0, 100.0, 1000.0] {
        let r = report(&MomentProfile::polydisk(1.0, b)?)?;
        polydisks.push(PolydiskRow { b, product: r.product, expected: (1.0 + b) / (2.0 * b) });
    }
    Ok(CorpusSummary {
        monotone: stats(&products(&mono_r), |x| x < 0.5 - tol),
        convex_4d: stats(&products(&convex_r), |x| x > 3.0 + tol),
        polydisks,
        t_min_equals_gromov,
        strict_not_monotone,
    })
}

/// `Vol(X_{f_c}) = c²/2 + (b−c)²c/(6b) + c(1−c)²/6`.
pub fn fc_volume(b: f64, c: f64) -> f64 {
    c * c / 2.0 + (b - c) * (b - c) * c / (6.0 * b) + c * (1.0 - c) * (1.0 - c) / 6.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FcRow {
    pub c: f64,
    pub volume_closed_form: f64,
    pub volume_quadrature: f64,
    pub gromov_width: f64,
    /// `c_Gr / Vol` with the computed width and the quadrature volume.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FcScan {
    pub b: f64,
    pub rows: Vec<FcRow>,
    pub argmax_c: f64,
    pub max_ratio: f64,
}

/// Gauss–Legendre panels per piece for the quadrature volume.
pub const FC_PANELS: usize = 16;
/// μ-samples per piece of the `f_c` profile.
pub const FC_SAMPLES: usize = 32;

/// `n` evenly spaced values of `c` in `[b/(1+b), 1)`.
pub fn fc_grid(b: f64, n: usize) -> Vec<f64> {
    let c0 = b / (1.0 + b);
    (0..n).map(|i| c0 + (1.0 - c0) * i as f64 / n as f64).collect()
}

pub fn run_fc_scan(b: f64, grid: &[f64]) -> Result<FcScan, LabError> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::ParamOutOfRange("fc scan needs b > 0").into());
    }
    let c0 = b / (1.0 + b);
    let rows = grid
        .par_iter()
        .map(|&c| {
            if !(c >= c0 && c < 1.0) {
                return Err(Error::ParamOutOfRange("fc scan needs c in [b/(1+b), 1)"));
            }
            let p = MomentProfile::fc_domain(b, c, FC_SAMPLES)?;
            let vq = area_quadrature(&p, FC_PANELS);
            let g = gromov_width_monotone(&p)?;
            Ok(FcRow { c, volume_closed_form: fc_volume(b, c), volume_quadrature: vq, gromov_width: g, ratio: g / vq })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let best = rows.iter().fold(None::<&FcRow>, |m, r| match m {
        Some(m) if m.ratio >= r.ratio => Some(m),
        _ => Some(r),
    });
    Ok(FcScan {
        b,
        argmax_c: best.map_or(f64::NAN, |r| r.c),
        max_ratio: best.map_or(f64::NAN, |r| r.ratio),
        rows,
    })
}

/// Fast and brute-force `T_min` on a seeded corpus of star-shaped polygons.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleAgreement {
    pub compared: usize,
    /// Profiles where the brute-force cutoff could not certify its answer.
    pub inconclusive: usize,
    /// Indices where action, location or normal differ.
    pub mismatches: Vec<usize>,
}

pub fn oracle_agreement(n: usize, seed: u64, cutoff: i64) -> OracleAgreement {
    let corpus = star_shaped_corpus(n, seed);
    let results: Vec<_> = corpus
        .par_iter()
        .map(|p| (t_min(p, Method::Fast), t_min(p, Method::Oracle { cutoff })))
        .collect();
    let mut out = OracleAgreement { compared: 0, inconclusive: 0, mismatches: Vec::new() };
    for (i, (fast, oracle)) in results.into_iter().enumerate() {
        match (fast, oracle) {
            (_, Err(Error::OracleCutoffInsufficient { .. })) => out.inconclusive += 1,
            (Ok(f), Ok(o)) => {
                out.compared += 1;
                if f.action != o.action || f.location != o.location || f.mn != o.mn {
                    out.mismatches.push(i);
                }
            }
            _ => out.mismatches.push(i),
        }
    }
    out
}

/// `|Ru_quad − (a+b)| / (a+b)` for one profile.
pub fn ruelle_relative_error(p: &MomentProfile, nodes: usize) -> Result<f64, Error> {
    let exact = ruelle_closed_form(p);
    Ok((toric_core::invariants::ruelle_quadrature(p, nodes)? - exact).abs() / exact)
}

/// Flags that must agree with the monotone hierarchy on any profile.
pub fn hierarchy_consistent(p: &MomentProfile) -> bool {
    let c = classify(p);
    (!c.strictly_monotone.holds || c.monotone.holds) && c.star_shaped.holds
}
