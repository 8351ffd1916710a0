//! Radial conformal factors φ(r) defining the metric g = φ⁴δ on {r > r_min}.
//!
//! The closed-form families, their hand-differentiated derivatives, a natural
//! cubic spline for tabulated data, and a compactly supported bump wrapper
//! used by the locality checks.  Large-r evaluation of φ − 1 has dedicated
//! cancellation-free paths because the ADM mass is read off `r·(φ − 1)` at
//! radii ~2¹³.

use crate::error::{Error, Result};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
#[allow(unused_imports)]
use num_traits::Float;

/// Value of φ and its first two radial derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub phi: f64,
    pub dphi: f64,
    pub d2phi: f64,
}

/// A radial conformal factor with derivative access and asymptotic metadata.
///
/// `eval` at `r == r_min` is allowed and returns one-sided limits; kinds whose
/// boundary derivative blows up report `dphi = ∞` there rather than erroring.
pub trait Profile {
    /// Inner boundary of the coordinate domain (0 when the metric fills all
    /// of space minus the origin).
    fn r_min(&self) -> f64;

    /// Declared decay order of φ − 1 (1 means O(1/r)).
    fn asymptotic_order(&self) -> i32 {
        1
    }

    /// Length scale of the geometry; drives cutoff and sampling choices.
    fn characteristic_radius(&self) -> f64 {
        1.0
    }

    /// Upper edge of the evaluable domain, if any (tabulated data).
    fn r_max(&self) -> Option<f64> {
        None
    }

    fn eval(&self, r: f64) -> Result<ProfilePoint>;

    /// Evaluate at radius r_min + u for an exactly-known boundary gap u > 0.
    ///
    /// Closed forms whose φ vanishes at the boundary override this to
    /// compute φ from u itself, so boundary-layer quadrature can place its
    /// nodes in the gap variable with full mantissa resolution; within
    /// r < 2·r_min the result agrees bit-for-bit with `eval` (the
    /// subtraction r − r_min is exact there).
    fn eval_gap(&self, u: f64) -> Result<ProfilePoint> {
        self.eval(self.r_min() + u)
    }

    /// φ(r) − 1 without catastrophic cancellation at large r.
    fn phi_minus_one(&self, r: f64) -> Result<f64> {
        Ok(self.eval(r)?.phi - 1.0)
    }
}

impl<P: Profile + ?Sized> Profile for &P {
    fn r_min(&self) -> f64 {
        (**self).r_min()
    }
    fn asymptotic_order(&self) -> i32 {
        (**self).asymptotic_order()
    }
    fn characteristic_radius(&self) -> f64 {
        (**self).characteristic_radius()
    }
    fn r_max(&self) -> Option<f64> {
        (**self).r_max()
    }
    fn eval(&self, r: f64) -> Result<ProfilePoint> {
        (**self).eval(r)
    }
    fn eval_gap(&self, u: f64) -> Result<ProfilePoint> {
        (**self).eval_gap(u)
    }
    fn phi_minus_one(&self, r: f64) -> Result<f64> {
        (**self).phi_minus_one(r)
    }
}

/// The built-in conformal-factor families.
///
/// JSON form is `{"kind": "...", "params": {...}}`; tabulated samples are
/// `[r, phi]` pairs with strictly increasing r.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "camelCase")]
pub enum RadialProfile {
    /// φ ≡ 1.
    Flat,
    /// φ = 1 + m/2r with m < 0; domain r > −m/2 where φ vanishes.
    NegSchwarzschild { m: f64 },
    /// φ = 1 + m/2r with m > 0; domain r > 0, minimal sphere at r = m/2.
    PosSchwarzschild { m: f64 },
    /// φ = ((r − r0)/r)^α; domain r > r0.
    PowerLaw {
        #[serde(alias = "α")]
        alpha: f64,
        r0: f64,
    },
    /// φ = (r − r0)(r + a)/r²; domain r > r0.
    Boosted { r0: f64, a: f64 },
    /// Cubic-spline interpolation of [r, φ] samples; extrapolation forbidden.
    Tabulated(TabulatedProfile),
}

impl RadialProfile {
    /// Parameter-range check mirroring the kind constraints (m sign, α > 0,
    /// a ≥ 0, r0 > 0).  Evaluation itself trusts the parameters.
    pub fn check_params(&self) -> Result<()> {
        match *self {
            RadialProfile::Flat | RadialProfile::Tabulated(_) => Ok(()),
            RadialProfile::NegSchwarzschild { m } => {
                if m < 0.0 && m.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Domain { what: "negSchwarzschild requires m < 0", value: m })
                }
            }
            RadialProfile::PosSchwarzschild { m } => {
                if m > 0.0 && m.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Domain { what: "posSchwarzschild requires m > 0", value: m })
                }
            }
            RadialProfile::PowerLaw { alpha, r0 } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    Err(Error::Domain { what: "powerLaw requires α > 0", value: alpha })
                } else if !(r0 > 0.0 && r0.is_finite()) {
                    Err(Error::Domain { what: "powerLaw requires r0 > 0", value: r0 })
                } else {
                    Ok(())
                }
            }
            RadialProfile::Boosted { r0, a } => {
                if !(r0 > 0.0 && r0.is_finite()) {
                    Err(Error::Domain { what: "boosted requires r0 > 0", value: r0 })
                } else if !(a >= 0.0 && a.is_finite()) {
                    Err(Error::Domain { what: "boosted requires a ≥ 0", value: a })
                } else {
                    Ok(())
                }
            }
        }
    }

    fn guard(&self, r: f64) -> Result<()> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::Domain { what: "radius must be positive", value: r });
        }
        if r < self.r_min() {
            return Err(Error::Domain { what: "r below inner boundary", value: r });
        }
        Ok(())
    }
}

impl Profile for RadialProfile {
    fn r_min(&self) -> f64 {
        match *self {
            RadialProfile::Flat | RadialProfile::PosSchwarzschild { .. } => 0.0,
            RadialProfile::NegSchwarzschild { m } => -0.5 * m,
            RadialProfile::PowerLaw { r0, .. } => r0,
            RadialProfile::Boosted { r0, .. } => r0,
            RadialProfile::Tabulated(ref t) => t.r_lo(),
        }
    }

    fn characteristic_radius(&self) -> f64 {
        match *self {
            RadialProfile::Flat => 1.0,
            RadialProfile::NegSchwarzschild { m } | RadialProfile::PosSchwarzschild { m } => {
                m.abs().max(1.0)
            }
            RadialProfile::PowerLaw { r0, .. } => (2.0 * r0).max(1.0),
            RadialProfile::Boosted { r0, a } => (2.0 * r0).max(a).max(1.0),
            RadialProfile::Tabulated(ref t) => t.r_lo().max(1.0),
        }
    }

    fn r_max(&self) -> Option<f64> {
        match *self {
            RadialProfile::Tabulated(ref t) => Some(t.r_hi()),
            _ => None,
        }
    }

    fn eval(&self, r: f64) -> Result<ProfilePoint> {
        self.guard(r)?;
        match *self {
            RadialProfile::Flat => Ok(ProfilePoint { phi: 1.0, dphi: 0.0, d2phi: 0.0 }),
            RadialProfile::NegSchwarzschild { m } | RadialProfile::PosSchwarzschild { m } => {
                Ok(ProfilePoint {
                    // (r + m/2)/r rather than 1 + m/2r: for m < 0 the
                    // numerator is the exact boundary gap (Sterbenz), which
                    // keeps deep boundary-layer evaluations noise-free.
                    phi: (r + 0.5 * m) / r,
                    dphi: -0.5 * m / (r * r),
                    d2phi: m / (r * r * r),
                })
            }
            RadialProfile::PowerLaw { alpha, r0 } => {
                // u = (r − r0)/r: the subtraction is exact near r0, so deep
                // boundary-layer evaluations keep full relative accuracy.
                let u = (r - r0) / r;
                let du = r0 / (r * r);
                let d2u = -2.0 * r0 / (r * r * r);
                let phi = u.powf(alpha);
                let dphi = alpha * u.powf(alpha - 1.0) * du;
                let d2phi = alpha * (alpha - 1.0) * u.powf(alpha - 2.0) * du * du
                    + alpha * u.powf(alpha - 1.0) * d2u;
                Ok(ProfilePoint { phi, dphi, d2phi })
            }
            RadialProfile::Boosted { r0, a } => Ok(ProfilePoint {
                // Product form for φ (no cancellation anywhere); expanded
                // forms for the derivatives (small terms, no cancellation of
                // the leading order).
                phi: (r - r0) * (r + a) / (r * r),
                dphi: -(a - r0) / (r * r) + 2.0 * a * r0 / (r * r * r),
                d2phi: 2.0 * (a - r0) / (r * r * r) - 6.0 * a * r0 / (r * r * r * r),
            }),
            RadialProfile::Tabulated(ref t) => t.eval(r),
        }
    }

    fn eval_gap(&self, u: f64) -> Result<ProfilePoint> {
        if !(u > 0.0) || !u.is_finite() {
            return Err(Error::Domain { what: "boundary gap must be positive", value: u });
        }
        match *self {
            RadialProfile::NegSchwarzschild { m } => {
                let r = -0.5 * m + u;
                Ok(ProfilePoint {
                    phi: u / r,
                    dphi: -0.5 * m / (r * r),
                    d2phi: m / (r * r * r),
                })
            }
            RadialProfile::PowerLaw { alpha, r0 } => {
                let r = r0 + u;
                let uf = u / r;
                let du = r0 / (r * r);
                let d2u = -2.0 * r0 / (r * r * r);
                let phi = uf.powf(alpha);
                let dphi = alpha * uf.powf(alpha - 1.0) * du;
                let d2phi = alpha * (alpha - 1.0) * uf.powf(alpha - 2.0) * du * du
                    + alpha * uf.powf(alpha - 1.0) * d2u;
                Ok(ProfilePoint { phi, dphi, d2phi })
            }
            RadialProfile::Boosted { r0, a } => {
                let r = r0 + u;
                Ok(ProfilePoint {
                    phi: u * (r + a) / (r * r),
                    dphi: -(a - r0) / (r * r) + 2.0 * a * r0 / (r * r * r),
                    d2phi: 2.0 * (a - r0) / (r * r * r) - 6.0 * a * r0 / (r * r * r * r),
                })
            }
            _ => self.eval(self.r_min() + u),
        }
    }

    fn phi_minus_one(&self, r: f64) -> Result<f64> {
        self.guard(r)?;
        match *self {
            RadialProfile::Flat => Ok(0.0),
            RadialProfile::NegSchwarzschild { m } | RadialProfile::PosSchwarzschild { m } => {
                Ok(0.5 * m / r)
            }
            RadialProfile::PowerLaw { alpha, r0 } => Ok((alpha * (-r0 / r).ln_1p()).exp_m1()),
            RadialProfile::Boosted { r0, a } => Ok((a - r0) / r - a * r0 / (r * r)),
            RadialProfile::Tabulated(ref t) => Ok(t.eval(r)?.phi - 1.0),
        }
    }
}

/// Raw serialized form of a tabulated profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSamples {
    samples: Vec<[f64; 2]>,
}

/// Natural cubic spline through strictly increasing (r, φ) samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSamples", into = "RawSamples")]
pub struct TabulatedProfile {
    samples: Vec<[f64; 2]>,
    /// Spline second derivatives at the knots (natural end conditions).
    m2: Vec<f64>,
}

impl TabulatedProfile {
    pub fn new(samples: Vec<[f64; 2]>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::Domain {
                what: "tabulated profile needs at least 3 samples",
                value: samples.len() as f64,
            });
        }
        for w in samples.windows(2) {
            if !(w[1][0] > w[0][0]) {
                return Err(Error::Domain {
                    what: "tabulated radii must be strictly increasing",
                    value: w[1][0],
                });
            }
        }
        for s in &samples {
            if !s[0].is_finite() || !s[1].is_finite() || s[1] < 0.0 {
                return Err(Error::Domain { what: "tabulated φ must be finite and ≥ 0", value: s[1] });
            }
        }
        let m2 = natural_spline_m2(&samples);
        Ok(TabulatedProfile { samples, m2 })
    }

    pub fn r_lo(&self) -> f64 {
        self.samples[0][0]
    }

    pub fn r_hi(&self) -> f64 {
        self.samples[self.samples.len() - 1][0]
    }

    fn eval(&self, r: f64) -> Result<ProfilePoint> {
        let (lo, hi) = (self.r_lo(), self.r_hi());
        if r < lo {
            return Err(Error::Domain { what: "r below inner boundary", value: r });
        }
        if r > hi {
            return Err(Error::Interpolation { r, lo, hi });
        }
        // Last segment owns the right endpoint.
        let i = match self.samples.partition_point(|s| s[0] <= r) {
            0 => 0,
            k if k >= self.samples.len() => self.samples.len() - 2,
            k => k - 1,
        };
        let [x0, y0] = self.samples[i];
        let [x1, y1] = self.samples[i + 1];
        let (m0, m1) = (self.m2[i], self.m2[i + 1]);
        let h = x1 - x0;
        let (dl, dr) = (r - x0, x1 - r);
        let phi = m0 * dr * dr * dr / (6.0 * h)
            + m1 * dl * dl * dl / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * dr
            + (y1 / h - m1 * h / 6.0) * dl;
        let dphi = -m0 * dr * dr / (2.0 * h) + m1 * dl * dl / (2.0 * h) - (y0 / h - m0 * h / 6.0)
            + (y1 / h - m1 * h / 6.0);
        let d2phi = (m0 * dr + m1 * dl) / h;
        Ok(ProfilePoint { phi, dphi, d2phi })
    }
}

impl TryFrom<RawSamples> for TabulatedProfile {
    type Error = Error;
    fn try_from(raw: RawSamples) -> Result<Self> {
        TabulatedProfile::new(raw.samples)
    }
}

impl From<TabulatedProfile> for RawSamples {
    fn from(t: TabulatedProfile) -> Self {
        RawSamples { samples: t.samples }
    }
}

/// Tridiagonal solve for natural-spline second derivatives.
fn natural_spline_m2(samples: &[[f64; 2]]) -> Vec<f64> {
    let n = samples.len();
    let mut m2 = alloc::vec![0.0; n];
    if n < 3 {
        return m2;
    }
    // Thomas algorithm on the interior knots.
    let mut diag = alloc::vec![0.0; n];
    let mut rhs = alloc::vec![0.0; n];
    let mut upper = alloc::vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = samples[i][0] - samples[i - 1][0];
        let h1 = samples[i + 1][0] - samples[i][0];
        let d = (samples[i + 1][1] - samples[i][1]) / h1 - (samples[i][1] - samples[i - 1][1]) / h0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = d;
    }
    for i in 2..n - 1 {
        let lower = upper[i - 1]; // symmetric tridiagonal
        let w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for i in (1..n - 1).rev() {
        m2[i] = (rhs[i] - upper[i] * m2[i + 1]) / diag[i];
    }
    m2
}

/// A base profile with a smooth, compactly supported bump added to φ:
/// w(r) = ε·exp(−1/(1 − x²)), x = (r − center)/half_width.
///
/// Support must lie strictly outside the inner boundary; asymptotic data is
/// unchanged because the bump vanishes identically at large r.
#[derive(Debug, Clone)]
pub struct BumpedProfile<P> {
    base: P,
    center: f64,
    half_width: f64,
    amplitude: f64,
}

impl<P: Profile> BumpedProfile<P> {
    pub fn new(base: P, center: f64, half_width: f64, amplitude: f64) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::Domain { what: "bump half-width must be positive", value: half_width });
        }
        if center - half_width <= base.r_min() {
            return Err(Error::Domain {
                what: "bump support must avoid the inner boundary",
                value: center - half_width,
            });
        }
        Ok(BumpedProfile { base, center, half_width, amplitude })
    }

    /// (w, w′, w″) of the bump alone.
    fn bump(&self, r: f64) -> (f64, f64, f64) {
        let x = (r - self.center) / self.half_width;
        let q = 1.0 - x * x;
        // exp(−1/q) underflows long before q reaches this floor, so the
        // cutoff only avoids inf/NaN in the rational prefactors.
        if q < 1e-8 {
            return (0.0, 0.0, 0.0);
        }
        let b = (-1.0 / q).exp();
        let s = -2.0 * x / (q * q);
        let ds = (-2.0 - 6.0 * x * x) / (q * q * q);
        let w = self.amplitude * b;
        let dw = w * s / self.half_width;
        let d2w = w * (s * s + ds) / (self.half_width * self.half_width);
        (w, dw, d2w)
    }
}

impl<P: Profile> Profile for BumpedProfile<P> {
    fn r_min(&self) -> f64 {
        self.base.r_min()
    }
    fn asymptotic_order(&self) -> i32 {
        self.base.asymptotic_order()
    }
    fn characteristic_radius(&self) -> f64 {
        self.base.characteristic_radius()
    }
    fn r_max(&self) -> Option<f64> {
        self.base.r_max()
    }
    fn eval(&self, r: f64) -> Result<ProfilePoint> {
        let p = self.base.eval(r)?;
        let (w, dw, d2w) = self.bump(r);
        Ok(ProfilePoint { phi: p.phi + w, dphi: p.dphi + dw, d2phi: p.d2phi + d2w })
    }
    fn eval_gap(&self, u: f64) -> Result<ProfilePoint> {
        let p = self.base.eval_gap(u)?;
        // The bump is smooth and supported away from the boundary, so the
        // reconstructed radius costs nothing here.
        let (w, dw, d2w) = self.bump(self.base.r_min() + u);
        Ok(ProfilePoint { phi: p.phi + w, dphi: p.dphi + dw, d2phi: p.d2phi + d2w })
    }
    fn phi_minus_one(&self, r: f64) -> Result<f64> {
        Ok(self.base.phi_minus_one(r)? + self.bump(r).0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_is_identity() {
        let p = RadialProfile::Flat;
        let v = p.eval(2.0).unwrap();
        assert_eq!((v.phi, v.dphi, v.d2phi), (1.0, 0.0, 0.0));
    }

    #[test]
    fn neg_schwarzschild_point_values() {
        let p = RadialProfile::NegSchwarzschild { m: -1.0 };
        let v = p.eval(1.0).unwrap();
        assert_eq!(v.phi, 0.5);
        assert_eq!(v.dphi, 0.5);
        assert_eq!(v.d2phi, -1.0);
        assert_eq!(p.r_min(), 0.5);
        // φ vanishes exactly at the boundary.
        assert_eq!(p.eval(0.5).unwrap().phi, 0.0);
    }

    #[test]
    fn boosted_point_values() {
        let p = RadialProfile::Boosted { r0: 0.5, a: 1.0 };
        let v = p.eval(1.0).unwrap();
        assert!((v.phi - 1.0).abs() < 1e-15);
        assert!((v.dphi - 0.5).abs() < 1e-15);
        // φ″ = 2(a−r0)/r³ − 6ar0/r⁴ = 1 − 3 = −2 at r = 1.
        assert!((v.d2phi + 2.0).abs() < 1e-15);
    }

    #[test]
    fn power_law_unit_exponent_matches_closed_form() {
        let p = RadialProfile::PowerLaw { alpha: 1.0, r0: 2.0 };
        let v = p.eval(4.0).unwrap();
        assert!((v.phi - 0.5).abs() < 1e-15);
        assert!((v.dphi - 2.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn power_law_boundary_blowup_is_one_sided_infinite() {
        let p = RadialProfile::PowerLaw { alpha: 0.25, r0: 1.0 };
        let v = p.eval(1.0).unwrap();
        assert_eq!(v.phi, 0.0);
        assert!(v.dphi.is_infinite());
    }

    #[test]
    fn domain_violations_error() {
        let p = RadialProfile::NegSchwarzschild { m: -1.0 };
        assert!(matches!(p.eval(0.49), Err(Error::Domain { .. })));
        let f = RadialProfile::Flat;
        assert!(matches!(f.eval(-1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn phi_minus_one_matches_direct_subtraction_at_moderate_r() {
        let profiles = [
            RadialProfile::NegSchwarzschild { m: -1.0 },
            RadialProfile::PowerLaw { alpha: 0.25, r0: 1.0 },
            RadialProfile::Boosted { r0: 0.5, a: 1.0 },
        ];
        for p in profiles {
            for r in [2.0, 5.0, 17.0] {
                let direct = p.eval(r).unwrap().phi - 1.0;
                let stable = p.phi_minus_one(r).unwrap();
                assert!((direct - stable).abs() < 1e-14, "{p:?} at {r}");
            }
        }
    }

    #[test]
    fn spline_reproduces_cubic_data_closely() {
        // y = r³ on a fine grid; natural spline is not exact for cubics at the
        // ends but should be very close in the interior.
        let samples: Vec<[f64; 2]> = (0..=200)
            .map(|i| {
                let r = 1.0 + i as f64 * 0.01;
                [r, r * r * r]
            })
            .collect();
        let t = TabulatedProfile::new(samples).unwrap();
        let v = t.eval(2.0).unwrap();
        assert!((v.phi - 8.0).abs() < 1e-8);
        assert!((v.dphi - 12.0).abs() < 1e-5);
        assert!((v.d2phi - 12.0).abs() < 1e-2);
    }

    #[test]
    fn spline_range_errors() {
        let t = TabulatedProfile::new(alloc::vec![[1.0, 1.0], [2.0, 1.1], [3.0, 1.0]]).unwrap();
        assert!(matches!(t.eval(0.9), Err(Error::Domain { .. })));
        assert!(matches!(t.eval(3.1), Err(Error::Interpolation { .. })));
        assert!(t.eval(3.0).is_ok());
        assert!(t.eval(1.0).is_ok());
    }

    #[test]
    fn bump_is_smooth_and_compact() {
        let b = BumpedProfile::new(RadialProfile::Flat, 3.0, 0.8, 0.05).unwrap();
        assert_eq!(b.eval(2.19).unwrap().phi, 1.0);
        assert_eq!(b.eval(3.81).unwrap().phi, 1.0);
        let mid = b.eval(3.0).unwrap();
        assert!((mid.phi - (1.0 + 0.05 * (-1.0f64).exp())).abs() < 1e-15);
        assert!(mid.dphi.abs() < 1e-12);
        // Finite-difference check of the bump derivatives at an asymmetric point.
        let h = 1e-6;
        let f = |r: f64| b.eval(r).unwrap().phi;
        let fd1 = (f(2.7 + h) - f(2.7 - h)) / (2.0 * h);
        assert!((fd1 - b.eval(2.7).unwrap().dphi).abs() < 1e-8);
        let fd2 = (f(2.7 + h) - 2.0 * f(2.7) + f(2.7 - h)) / (h * h);
        assert!((fd2 - b.eval(2.7).unwrap().d2phi).abs() < 1e-3);
    }

    #[test]
    fn check_params_enforces_kind_constraints() {
        assert!(RadialProfile::NegSchwarzschild { m: 1.0 }.check_params().is_err());
        assert!(RadialProfile::PosSchwarzschild { m: -1.0 }.check_params().is_err());
        assert!(RadialProfile::PowerLaw { alpha: 0.0, r0: 1.0 }.check_params().is_err());
        assert!(RadialProfile::Boosted { r0: 0.5, a: -0.1 }.check_params().is_err());
        assert!(RadialProfile::NegSchwarzschild { m: -1.0 }.check_params().is_ok());
    }
}
