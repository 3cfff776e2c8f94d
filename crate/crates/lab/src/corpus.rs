//! Seeded random profiles.
//!
//! Every generator draws from its own ChaCha stream so that the corpora are
//! independent of each other and reproducible from one seed. Draws that fail
//! validation are rejected and redrawn.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::{classify, Family, MomentProfile, Segment, Shape, Vec2};

const STAR_STREAM: u64 = 1;
const MONOTONE_STREAM: u64 = 2;
const CONVEX_STREAM: u64 = 3;

/// Maximum draws per accepted profile.
const MAX_DRAWS: usize = 10_000;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn round_to(x: f64, digits: i32) -> f64 {
    let s = 10f64.powi(digits);
    (x * s).round() / s
}

fn accept<F>(rng: &mut ChaCha8Rng, mut draw: F) -> MomentProfile
where
    F: FnMut(&mut ChaCha8Rng) -> Option<MomentProfile>,
{
    for _ in 0..MAX_DRAWS {
        if let Some(p) = draw(rng) {
            return p;
        }
    }
    panic!("corpus generator rejected {MAX_DRAWS} draws in a row");
}

/// Star-shaped polygon with 2-decimal vertices at increasing polar angle.
pub fn star_shaped_polygon(rng: &mut ChaCha8Rng) -> MomentProfile {
    accept(rng, |rng| {
        let k = rng.random_range(1..=7);
        let mut angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..FRAC_PI_2 - 0.05)).collect();
        angles.sort_by(f64::total_cmp);
        let mut pts = vec![(round_to(rng.random_range(0.5..2.5), 2), 0.0)];
        for t in angles {
            let r: f64 = rng.random_range(0.4..2.5);
            pts.push((round_to(r * t.cos(), 2), round_to(r * t.sin(), 2)));
        }
        pts.push((0.0, round_to(rng.random_range(0.5..2.5), 2)));
        MomentProfile::from_vertices(&pts).ok()
    })
}

/// Monotone polygon: `k ∈ [4, 12]` vertices, `w1` decreasing and `w2`
/// increasing along the profile, 3-decimal coordinates.
pub fn monotone_polygon(rng: &mut ChaCha8Rng) -> MomentProfile {
    accept(rng, |rng| {
        let k = rng.random_range(4..=12usize);
        let a = round_to(rng.random_range(0.5..3.0), 3);
        let b = round_to(rng.random_range(0.5..3.0), 3);
        let mut xs: Vec<f64> = (0..k - 2).map(|_| round_to(rng.random_range(0.0..a), 3)).collect();
        let mut ys: Vec<f64> = (0..k - 2).map(|_| round_to(rng.random_range(0.0..b), 3)).collect();
        xs.sort_by(|u, v| v.total_cmp(u));
        ys.sort_by(f64::total_cmp);
        let mut pts = vec![(a, 0.0)];
        pts.extend(xs.into_iter().zip(ys).filter(|&(x, y)| x > 0.0 && y > 0.0));
        pts.push((0.0, b));
        pts.dedup();
        let p = MomentProfile::from_vertices(&pts).ok()?;
        classify(&p).monotone.holds.then_some(p)
    })
}

/// Concave decreasing chain in `√`-coordinates mapped back by `w = μ²`:
/// every piece is a μ-line and the profile is convex in `R⁴`.
pub fn convex_4d_profile(rng: &mut ChaCha8Rng) -> MomentProfile {
    accept(rng, |rng| {
        let k = rng.random_range(1..=6usize);
        let mut slopes: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..FRAC_PI_2 - 0.05)).collect();
        slopes.sort_by(f64::total_cmp);
        let lens: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
        // Walk from the w2-axis to the w1-axis, getting steeper.
        let drop: f64 = slopes.iter().zip(&lens).map(|(t, l)| l * t.sin()).sum();
        let mut mu = vec![Vec2::new(0.0, drop)];
        for (t, l) in slopes.iter().zip(&lens) {
            let last = *mu.last().unwrap();
            mu.push(last + Vec2::new(t.cos(), -t.sin()) * *l);
        }
        let n = mu.len();
        mu[n - 1].y = 0.0;
        let vertices: Vec<Vec2> = mu.iter().rev().map(|m| Vec2::new(m.x * m.x, m.y * m.y)).collect();
        let segments = vec![Segment::curve(Shape::MuLine); k];
        let p = MomentProfile::from_parts(vertices, segments, Family::Custom).ok()?;
        let c = classify(&p);
        (c.monotone.holds && c.convex_4d.holds).then_some(p)
    })
}

pub fn star_shaped_corpus(n: usize, seed: u64) -> Vec<MomentProfile> {
    let mut r = rng(seed, STAR_STREAM);
    (0..n).map(|_| star_shaped_polygon(&mut r)).collect()
}

pub fn monotone_corpus(n: usize, seed: u64) -> Vec<MomentProfile> {
    let mut r = rng(seed, MONOTONE_STREAM);
    (0..n).map(|_| monotone_polygon(&mut r)).collect()
}

pub fn convex_4d_corpus(n: usize, seed: u64) -> Vec<MomentProfile> {
    let mut r = rng(seed, CONVEX_STREAM);
    (0..n).map(|_| convex_4d_profile(&mut r)).collect()
}
