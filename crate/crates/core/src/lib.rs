//! Invariants, closed Reeb orbits and surgeries of star-shaped toric domains
//! in R⁴, computed from their moment-plane profiles.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod classify;
pub mod decimal;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod plane;
pub mod profile;
pub mod quadrature;
pub mod reeb;
pub mod segment;
pub mod smoothing;
pub mod surgery;

pub use classify::{classify, sqrt_transform, Classification, Flag, Witness};
pub use error::{Error, Result};
pub use invariants::{report, CriterionVerdict, InvariantReport, Verdict};
pub use plane::{IVec, Vec2};
pub use profile::{Family, MomentProfile};
pub use reeb::{t_min, Method, OrbitDatum, OrbitLocation};
pub use segment::{NormalClass, Segment, Shape};
