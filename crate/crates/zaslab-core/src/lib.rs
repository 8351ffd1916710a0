//! Mass and capacity functionals of zero-area singularities (ZAS) in
//! spherically symmetric, conformally flat, asymptotically flat 3-manifolds.
//!
//! The metric under study is `g = φ(r)⁴ δ` on `{r > r_min}`, described by a
//! [`profile::RadialProfile`].  On top of that single object the crate builds:
//!
//! - sphere geometry and curvature (`geometry`): areas, areal radii, mean
//!   curvature, scalar curvature, resolutions of regular singularities;
//! - mass functionals (`mass`): Hawking, ADM, regular mass, the singularity
//!   mass obtained as a limit over shrinking spheres, and the conformal mass
//!   shift under harmonic factors;
//! - the radial harmonic boundary-value problem and capacities (`harmonic`);
//! - weak inverse mean curvature flow with minimizing-hull jumps (`imcf`);
//! - theorem-level verification suites (`verify`) over a built-in catalog of
//!   closed-form model geometries (`catalog`).
//!
//! Everything is pure `f64` math over `alloc`; the crate is `no_std`-compatible
//! (enable the `libm` feature instead of the default `std`).  IO, file formats
//! and the CLI live in the companion `zaslab` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod error;
pub mod extrapolate;
pub mod geometry;
pub mod harmonic;
pub mod imcf;
mod json_num;
pub mod mass;
pub mod profile;
pub mod quad;
pub mod report;
mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use profile::{Profile, RadialProfile};
