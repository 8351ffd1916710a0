//! Sphere geometry, curvature, and resolutions of regular singular boundaries.
//!
//! All surfaces are centered coordinate spheres of g = φ⁴δ.  A `Resolution`
//! rewrites the same physical metric as φ̄⁴ḡ with ḡ = λ⁴δ, φ̄ = λ⁻¹φ for a
//! positive radial weight λ; the boundary-mass functional must not see λ.

use crate::error::{Error, Result};
use crate::profile::Profile;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
#[allow(unused_imports)]
use num_traits::Float;

const PI: f64 = core::f64::consts::PI;

/// Geometric data of the centered sphere at coordinate radius r.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SphereGeometry {
    pub r: f64,
    /// A = 4π r² φ⁴.
    pub area: f64,
    /// ρ = r φ² = √(A/4π).
    pub areal_radius: f64,
    /// Outward mean curvature H = (2/(rφ²))(1 + 2rφ′/φ).
    pub mean_curvature: f64,
}

/// Sphere area, areal radius and mean curvature at radius r.
pub fn sphere_geometry<P: Profile>(profile: &P, r: f64) -> Result<SphereGeometry> {
    let p = profile.eval(r)?;
    let areal = r * p.phi * p.phi;
    Ok(SphereGeometry {
        r,
        area: 4.0 * PI * areal * areal,
        areal_radius: areal,
        mean_curvature: 2.0 * (p.phi + 2.0 * r * p.dphi) / (r * p.phi * p.phi * p.phi),
    })
}

/// Scalar curvature R = −8 φ⁻⁵ Δ_δφ with Δ_δφ = φ″ + 2φ′/r.
pub fn scalar_curvature<P: Profile>(profile: &P, r: f64) -> Result<f64> {
    let p = profile.eval(r)?;
    let lap = p.d2phi + 2.0 * p.dphi / r;
    Ok(-8.0 * lap / p.phi.powi(5))
}

/// Conformal transformation of mean curvature between a resolution and the
/// physical metric: H = φ̄⁻²H̄ + 4φ̄⁻³·ν̄(φ̄).
pub fn mean_curvature_transform(phi_bar: f64, dphi_dnu: f64, h_bar: f64) -> Result<f64> {
    if !(phi_bar > 0.0) {
        return Err(Error::Domain { what: "conformal factor must be positive", value: phi_bar });
    }
    let inv = 1.0 / phi_bar;
    Ok(inv * inv * h_bar + 4.0 * inv * inv * inv * dphi_dnu)
}

/// A positive radial weight λ(r) with closed-form derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadialWeight {
    /// λ ≡ 1.
    Identity,
    /// λ ≡ k for a positive constant k.
    Constant(f64),
    /// λ = 1 + amplitude·e^(−rate·r).
    OnePlusExp { amplitude: f64, rate: f64 },
}

impl RadialWeight {
    /// (λ, λ′) at r.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        match *self {
            RadialWeight::Identity => (1.0, 0.0),
            RadialWeight::Constant(k) => (k, 0.0),
            RadialWeight::OnePlusExp { amplitude, rate } => {
                let e = (-rate * r).exp();
                (1.0 + amplitude * e, -amplitude * rate * e)
            }
        }
    }
}

/// A resolution (ḡ = λ⁴δ, φ̄ = λ⁻¹φ) of the metric defined by `profile`.
///
/// Stacked rescalings multiply their weights; the physical metric is
/// independent of the stack by construction.
#[derive(Debug, Clone)]
pub struct Resolution<P> {
    pub profile: P,
    weights: Vec<RadialWeight>,
}

impl<P: Profile> Resolution<P> {
    /// The default resolution λ ≡ 1.
    pub fn identity(profile: P) -> Self {
        Resolution { profile, weights: Vec::new() }
    }

    /// Total weight λ(r) and its derivative, by the product rule over the
    /// rescaling stack.
    pub fn lambda(&self, r: f64) -> (f64, f64) {
        let mut lam = 1.0;
        let mut dlam = 0.0;
        for w in &self.weights {
            let (l, dl) = w.eval(r);
            dlam = dlam * l + lam * dl;
            lam *= l;
        }
        (lam, dlam)
    }

    /// Background conformal factor φ̄ = λ⁻¹φ and its radial derivative.
    pub fn background_phi(&self, r: f64) -> Result<(f64, f64)> {
        let p = self.profile.eval(r)?;
        let (lam, dlam) = self.lambda(r);
        let phi_bar = p.phi / lam;
        let dphi_bar = p.dphi / lam - dlam * p.phi / (lam * lam);
        Ok((phi_bar, dphi_bar))
    }
}

/// Push a further weight onto a resolution, checking λ > 0 on a sample grid
/// reaching from the inner boundary far into the asymptotic region.
pub fn rescale_resolution<P: Profile>(
    res: Resolution<P>,
    weight: RadialWeight,
) -> Result<Resolution<P>> {
    let lo = res.profile.r_min();
    let hi = 65536.0 * res.profile.characteristic_radius();
    let mut r = if lo > 0.0 { lo } else { 1e-6 * res.profile.characteristic_radius() };
    loop {
        let (lam, _) = weight.eval(r);
        if !(lam > 0.0) || !lam.is_finite() {
            return Err(Error::Domain { what: "rescaling weight must stay positive", value: lam });
        }
        if r >= hi {
            break;
        }
        r = (r * 1.5).max(r + 1e-3 * res.profile.characteristic_radius());
    }
    let mut weights = res.weights;
    weights.push(weight);
    Ok(Resolution { profile: res.profile, weights })
}

/// Sampled structural facts about a profile: positivity, asymptotic decay,
/// singular-boundary classification, and the scalar-curvature sign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidityReport {
    /// φ > 0 held at every sampled interior radius.
    pub positive: bool,
    /// sup |r·(φ − 1)| over the sampled geometric grid.
    pub decay_sup: f64,
    /// Decay bound finite and positivity held.
    pub asymptotically_flat: bool,
    /// Sphere areas collapse at the inner boundary (r_min > 0 and φ → 0).
    pub zas: bool,
    /// The boundary admits a one-sided derivative of φ that is finite and
    /// nonzero (resolvable singularity).
    pub regular_zas: bool,
    /// One-sided dφ/dr at the inner boundary (NaN when r_min = 0).
    pub boundary_dphi: f64,
    /// Smallest sampled scalar curvature.
    pub min_scalar_curvature: f64,
    /// Scalar-curvature nonnegativity hypothesis (up to sampling noise).
    pub scalar_curvature_nonnegative: bool,
}

/// Sampled validity/classification report.
///
/// The scalar-curvature grid starts a few percent of the characteristic
/// radius outside r_min: φ⁻⁵ amplifies rounding noise in the boundary layer
/// where φ → 0, and the hypothesis checks only consume the sign on the flow
/// region anyway.
pub fn validate_profile<P: Profile>(profile: &P) -> ValidityReport {
    let r_min = profile.r_min();
    let rs = profile.characteristic_radius();
    let far = 65536.0 * rs;

    let mut positive = true;
    let mut decay_sup = 0.0f64;
    let mut saw_decay_sample = false;

    // Near-boundary positivity probes.
    if r_min > 0.0 {
        for j in 1..=40 {
            let r = r_min * (1.0 + 0.5f64.powi(j));
            if let Ok(p) = profile.eval(r) {
                if !(p.phi > 0.0) {
                    positive = false;
                }
            }
        }
    }
    // Geometric grid outward; doubles from the boundary scale to the far zone.
    let mut r = if r_min > 0.0 { r_min * 1.0009765625 } else { rs / 1024.0 };
    while r <= far {
        match profile.eval(r) {
            Ok(p) => {
                if !(p.phi > 0.0) && r > r_min {
                    positive = false;
                }
                if r >= rs {
                    if let Ok(pm1) = profile.phi_minus_one(r) {
                        let decay = (r * pm1).abs();
                        saw_decay_sample = true;
                        if !decay.is_finite() || decay > decay_sup {
                            decay_sup = decay;
                        }
                    }
                }
            }
            Err(Error::Interpolation { .. }) => break, // table exhausted
            Err(_) => {}
        }
        r *= 2.0;
    }
    let asymptotically_flat = positive && decay_sup.is_finite() && (saw_decay_sample || r_min == 0.0);

    // Boundary classification.
    let (zas, regular_zas, boundary_dphi) = if r_min > 0.0 {
        let probe = |j: i32| profile.eval(r_min * (1.0 + 0.5f64.powi(j))).map(|p| p.phi);
        let phi0 = profile.eval(r_min).map(|p| p.phi).unwrap_or(f64::NAN);
        let vanishes = if phi0.is_finite() && phi0.abs() < 1e-9 {
            true
        } else {
            match (probe(20), probe(40)) {
                (Ok(a), Ok(b)) => b < 0.5 * a || b < 1e-9,
                _ => false,
            }
        };
        let dphi0 = profile.eval(r_min).map(|p| p.dphi).unwrap_or(f64::NAN);
        let regular = if vanishes && dphi0.is_finite() && dphi0.abs() > 1e-12 {
            // One-sided difference quotient must agree with the declared
            // derivative for the boundary differential to be trustworthy.
            let d = r_min * 0.5f64.powi(18);
            match profile.eval(r_min + d) {
                Ok(p) => ((p.phi - phi0.max(0.0)) / d - dphi0).abs() <= 0.05 * dphi0.abs(),
                Err(_) => false,
            }
        } else {
            false
        };
        (vanishes, regular, dphi0)
    } else {
        (false, false, f64::NAN)
    };

    // Scalar-curvature sign profile, sampled outside the degenerate layer.
    let mut min_r = f64::INFINITY;
    let mut max_abs_r = 0.0f64;
    let mut r = r_min + 0.05 * rs;
    while r <= far {
        match scalar_curvature(profile, r) {
            Ok(curv) => {
                if curv < min_r {
                    min_r = curv;
                }
                if curv.abs() > max_abs_r {
                    max_abs_r = curv.abs();
                }
            }
            Err(Error::Interpolation { .. }) => break,
            Err(_) => {}
        }
        r *= 1.5;
    }
    let scalar_curvature_nonnegative =
        min_r.is_finite() && min_r >= -1e-8 * max_abs_r.max(1.0);

    ValidityReport {
        positive,
        decay_sup,
        asymptotically_flat,
        zas,
        regular_zas,
        boundary_dphi,
        min_scalar_curvature: min_r,
        scalar_curvature_nonnegative,
    }
}
