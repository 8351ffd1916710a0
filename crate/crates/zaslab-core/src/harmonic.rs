//! The radial g-harmonic boundary-value problem and capacities.
//!
//! Δ_g h = 0 with h = 0 on the sphere at r_inner and h → 1 at infinity
//! reduces radially to (φ²r²h′)′ = 0, so h′ = c/(r²φ²) and
//! c = 1/∫_{r_inner}^∞ ds/(s²φ²).  Everything here is built from that one
//! exterior integral: capacities are 4πc, the energy functional is the
//! Dirichlet integral 4π∫φ²r²(u′)²dr, and multiplying a profile by h shifts
//! the ADM mass by −2c.
//!
//! Quadrature layout: a boundary-layer substitution s = r_min + eᵗ tames the
//! (s − r_min)^(−2α) blow-up near a singular boundary, the mid-range is
//! adaptive Gauss–Kronrod, and beyond r_cut the tail uses the asymptotic
//! series of 1/(s²φ²) with coefficients fitted from φ − 1 at large radii.

use crate::error::{Error, Result};
use crate::extrapolate::{richardson_pair, tail_limit};
use crate::profile::Profile;
use crate::quad;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

const PI: f64 = core::f64::consts::PI;

/// Relative tolerance budget of the flux-constant quadrature.
const FLUX_REL_TOL: f64 = 1e-12;

/// The solved radial harmonic function.
///
/// Invariants: h(inner_radius) = 0, h strictly increasing, h → 1 at infinity;
/// the asymptotic expansion is h = 1 − C/r + o(1/r) with C equal to the flux
/// constant in this flat-normalized gauge (cross-checked at construction).
#[derive(Debug, Clone)]
pub struct HarmonicFunction<P> {
    profile: P,
    inner_radius: f64,
    flux_constant: f64,
    asymptotic_coefficient: f64,
}

impl<P: Profile> HarmonicFunction<P> {
    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// c in h′(r) = c/(r²φ²).
    pub fn flux_constant(&self) -> f64 {
        self.flux_constant
    }

    /// C in h = 1 − C/r + o(1/r).
    pub fn asymptotic_coefficient(&self) -> f64 {
        self.asymptotic_coefficient
    }

    /// h(r).
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if r < self.inner_radius {
            return Err(Error::Domain { what: "harmonic function below inner sphere", value: r });
        }
        let tail = exterior_flux_integral(&self.profile, r, None)?;
        Ok(1.0 - self.flux_constant * tail)
    }

    /// 1 − h(r) without cancellation at large r.
    pub fn one_minus(&self, r: f64) -> Result<f64> {
        if r < self.inner_radius {
            return Err(Error::Domain { what: "harmonic function below inner sphere", value: r });
        }
        Ok(self.flux_constant * exterior_flux_integral(&self.profile, r, None)?)
    }

    /// h′(r) = c/(r²φ²).
    pub fn derivative(&self, r: f64) -> Result<f64> {
        let p = self.profile.eval(r)?;
        Ok(self.flux_constant / (r * r * p.phi * p.phi))
    }
}

/// Solve the radial harmonic problem exterior to the sphere at `r_inner`.
pub fn solve_harmonic<P: Profile + Clone>(profile: &P, r_inner: f64) -> Result<HarmonicFunction<P>> {
    if !(r_inner > profile.r_min()) || !r_inner.is_finite() {
        return Err(Error::Domain { what: "inner sphere must lie inside the domain", value: r_inner });
    }
    let total = exterior_flux_integral(profile, r_inner, None)?;
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::Quadrature { what: "exterior flux integral", error_estimate: total });
    }
    let c = 1.0 / total;

    // Tail self-consistency: the coefficient of 1/r in 1 − h must reproduce c.
    let rs = profile.characteristic_radius();
    let probe = match profile.r_max() {
        Some(hi) => 0.45 * hi,
        None => 32768.0 * rs.max(r_inner / 512.0),
    };
    let t1 = probe * (c * exterior_flux_integral(profile, probe, None)?);
    let t2 = 2.0 * probe * (c * exterior_flux_integral(profile, 2.0 * probe, None)?);
    let c_hat = richardson_pair(t1, t2, 1);
    if (c_hat - c).abs() > 1e-9 * c.abs().max(1e-12) {
        return Err(Error::Mismatch { what: "flux constant vs asymptotic coefficient", expected: c, got: c_hat });
    }

    Ok(HarmonicFunction {
        profile: profile.clone(),
        inner_radius: r_inner,
        flux_constant: c,
        asymptotic_coefficient: c_hat,
    })
}

/// ∫_lo^hi ds/(s²φ²), with hi = None meaning ∞.
///
/// Splits into boundary layer, adaptive mid-range, and the fitted asymptotic
/// tail; each piece is integrated to FLUX_REL_TOL.
pub(crate) fn exterior_flux_integral<P: Profile>(
    profile: &P,
    lo: f64,
    hi: Option<f64>,
) -> Result<f64> {
    let r_min = profile.r_min();
    if !(lo > r_min) {
        return Err(Error::Domain { what: "flux integral starts at or below r_min", value: lo });
    }
    let rs = profile.characteristic_radius();
    let r_cut = match profile.r_max() {
        Some(hi_table) => (1000.0 * rs).min(0.5 * hi_table),
        None => 1000.0 * rs,
    };
    let hi_eff = hi.unwrap_or(f64::INFINITY);
    if hi_eff < lo {
        return Err(Error::Domain { what: "flux integral with reversed bounds", value: hi_eff });
    }
    if hi_eff == lo {
        return Ok(0.0);
    }

    let f = |s: f64| match profile.eval(s) {
        Ok(p) => 1.0 / (s * s * p.phi * p.phi),
        Err(_) => f64::NAN,
    };

    let mut total = 0.0;
    let mut cursor = lo;

    // Boundary layer, driven by the gap u = s − r_min: inside the layer u is
    // exact (Sterbenz), the closed forms evaluate φ from u directly, and the
    // log substitution u = e^t turns the corner into a smooth exponential.
    // Placing quadrature nodes in s instead would quantize them to
    // ulp(r_min) — a relative grain of ulp(r_min)/gap that swamps tight
    // tolerances once the gap is small — while t-space nodes keep full
    // mantissa resolution at every depth.
    if r_min > 0.0 && (lo - r_min) < 0.05 * r_min {
        let layer_end = (1.5 * r_min).min(hi_eff).min(r_cut);
        if layer_end > lo {
            let t0 = (lo - r_min).ln();
            let t1 = (layer_end - r_min).ln();
            let q = quad::integrate(
                |t| {
                    let u = t.exp();
                    let s = r_min + u;
                    match profile.eval_gap(u) {
                        Ok(p) => u / (s * s * p.phi * p.phi),
                        Err(_) => f64::NAN,
                    }
                },
                t0,
                t1,
                FLUX_REL_TOL,
                0.0,
                "harmonic flux integral (boundary layer)",
            )?;
            total += q.value;
            cursor = layer_end;
        }
    }

    // Mid-range.
    let mid_end = hi_eff.min(r_cut);
    if mid_end > cursor {
        let q = quad::integrate(f, cursor, mid_end, FLUX_REL_TOL, 0.0, "harmonic flux integral")?;
        total += q.value;
        cursor = mid_end;
    }

    // Tail.
    if hi_eff > cursor {
        let start = cursor.max(r_cut);
        if hi_eff.is_infinite() {
            total += tail_series(profile, start)?;
        } else {
            // Finite upper bound beyond the cutoff.
            total += tail_series(profile, start)? - tail_series(profile, hi_eff)?;
        }
    }

    if total.is_nan() {
        return Err(Error::Quadrature { what: "harmonic flux integral", error_estimate: f64::NAN });
    }
    Ok(total)
}

/// ∫_R^∞ ds/(s²φ²) from the expansion 1/φ² = 1 − 2C/s + (3C² − 2D)/s² + …:
/// T(R) = 1/R − C/R² + (3C² − 2D)/(3R³).
fn tail_series<P: Profile>(profile: &P, big_r: f64) -> Result<f64> {
    let (c, d) = asymptotic_coefficients(profile)?;
    Ok(1.0 / big_r - c / (big_r * big_r) + (3.0 * c * c - 2.0 * d) / (3.0 * big_r * big_r * big_r))
}

/// Leading coefficients of φ = 1 + C/r + D/r² + …, fitted from φ − 1.
fn asymptotic_coefficients<P: Profile>(profile: &P) -> Result<(f64, f64)> {
    let (r1, r2) = match profile.r_max() {
        Some(hi) => (0.55 * hi, 0.97 * hi),
        None => {
            let r1 = 65536.0 * profile.characteristic_radius();
            (r1, 2.0 * r1)
        }
    };
    let s1 = r1 * profile.phi_minus_one(r1)?;
    let s2 = r2 * profile.phi_minus_one(r2)?;
    // S(r) = C + D/r through two samples.
    let d = (s1 - s2) / (1.0 / r1 - 1.0 / r2);
    let c = s1 - d / r1;
    Ok((c, d))
}

/// Capacity of the centered sphere at r: the Dirichlet-energy infimum over
/// functions 1 on the sphere and 0 at infinity, which the harmonic minimizer
/// attains with energy 4πc.
pub fn capacity_surface<P: Profile + Clone>(profile: &P, r: f64) -> Result<f64> {
    Ok(4.0 * PI * solve_harmonic(profile, r)?.flux_constant())
}

/// The shrinking-sphere schedule r_i = r_min(1 + 2^{-i}), i = 4..=20.
pub fn default_shrinking_radii(r_min: f64) -> Vec<f64> {
    (4..=20).map(|i| r_min * (1.0 + 0.5f64.powi(i))).collect()
}

/// A boundary limit extracted from a shrinking-sphere sequence.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct BoundaryCapacity {
    pub value: f64,
    /// (r_i, 4πc_i) pairs actually evaluated.
    pub sequence: Vec<(f64, f64)>,
    pub uncertainty: f64,
}

/// Capacity of the singular boundary: limit of sphere capacities along the
/// default shrinking schedule.  Values indistinguishable from zero clamp to
/// exactly 0 (capacity is nonnegative).
pub fn capacity_zas<P: Profile + Clone>(profile: &P) -> Result<BoundaryCapacity> {
    let radii = default_shrinking_radii(require_singular(profile)?);
    capacity_zas_along(profile, &radii)
}

/// Same limit along a caller-supplied decreasing radius sequence.
pub fn capacity_zas_along<P: Profile + Clone>(
    profile: &P,
    radii: &[f64],
) -> Result<BoundaryCapacity> {
    require_singular(profile)?;
    let mut sequence = Vec::with_capacity(radii.len());
    for &r in radii {
        let c = solve_harmonic(profile, r)?.flux_constant();
        sequence.push((r, 4.0 * PI * c));
    }
    let values: Vec<f64> = sequence.iter().map(|&(_, v)| v).collect();
    let lim = tail_limit(&values).ok_or(Error::Convergence {
        what: "capacity limit needs a longer sequence",
        change: f64::INFINITY,
        tol: 0.0,
    })?;
    let mut value = lim.value.max(0.0);
    if value < 1e-9 {
        value = 0.0;
    }
    Ok(BoundaryCapacity { value, sequence, uncertainty: lim.uncertainty })
}

fn require_singular<P: Profile>(profile: &P) -> Result<f64> {
    let r_min = profile.r_min();
    if r_min > 0.0 {
        Ok(r_min)
    } else {
        Err(Error::Domain { what: "no singular inner boundary (r_min = 0)", value: r_min })
    }
}

/// A piecewise-differentiable radial test function for the energy functional.
pub trait RadialTestFunction {
    fn value(&self, r: f64) -> f64;
    /// One-sided derivative; corners are resolved by segment splitting.
    fn slope(&self, r: f64) -> f64;
    /// Radius beyond which the function is identically its final value.
    fn support_end(&self) -> Option<f64>;
    /// Radii where the slope is discontinuous.
    fn corners(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// u = r_inner/r: the flat-space minimizer.
#[derive(Debug, Clone, Copy)]
pub struct CoulombTail {
    pub r_inner: f64,
}

impl RadialTestFunction for CoulombTail {
    fn value(&self, r: f64) -> f64 {
        self.r_inner / r
    }
    fn slope(&self, r: f64) -> f64 {
        -self.r_inner / (r * r)
    }
    fn support_end(&self) -> Option<f64> {
        None
    }
}

/// Piecewise-linear interpolation through (r, u) knots; constant outside.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Domain { what: "piecewise-linear needs ≥ 2 knots", value: knots.len() as f64 });
        }
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Domain { what: "knot radii must increase", value: w[1].0 });
            }
        }
        Ok(PiecewiseLinear { knots })
    }
}

impl RadialTestFunction for PiecewiseLinear {
    fn value(&self, r: f64) -> f64 {
        let k = &self.knots;
        if r <= k[0].0 {
            return k[0].1;
        }
        if r >= k[k.len() - 1].0 {
            return k[k.len() - 1].1;
        }
        let i = k.partition_point(|&(x, _)| x <= r) - 1;
        let (x0, y0) = k[i];
        let (x1, y1) = k[i + 1];
        y0 + (y1 - y0) * (r - x0) / (x1 - x0)
    }
    fn slope(&self, r: f64) -> f64 {
        let k = &self.knots;
        if r < k[0].0 || r > k[k.len() - 1].0 {
            return 0.0;
        }
        let i = (k.partition_point(|&(x, _)| x < r).max(1) - 1).min(k.len() - 2);
        let (x0, y0) = k[i];
        let (x1, y1) = k[i + 1];
        let _ = x0;
        (y1 - y0) / (x1 - x0)
    }
    fn support_end(&self) -> Option<f64> {
        // Constant (not necessarily zero) beyond the last knot; zero final
        // value makes it compactly supported for the energy integral.
        let last = self.knots[self.knots.len() - 1];
        if last.1 == 0.0 {
            Some(last.0)
        } else {
            None
        }
    }
    fn corners(&self) -> Vec<f64> {
        self.knots.iter().map(|&(x, _)| x).collect()
    }
}

/// u = 1 − h: the curved-space minimizer as a test function.
#[derive(Debug, Clone)]
pub struct HarmonicComplement<P>(pub HarmonicFunction<P>);

impl<P: Profile> RadialTestFunction for HarmonicComplement<P> {
    fn value(&self, r: f64) -> f64 {
        self.0.one_minus(r).unwrap_or(f64::NAN)
    }
    fn slope(&self, r: f64) -> f64 {
        self.0.derivative(r).map(|d| -d).unwrap_or(f64::NAN)
    }
    fn support_end(&self) -> Option<f64> {
        None
    }
}

/// Dirichlet energy 4π∫_{r_inner}^∞ φ²r²(u′)² dr of an admissible test
/// function (u(r_inner) = 1, u → 0 at infinity).
///
/// By the variational principle this dominates capacity_surface(r_inner).
pub fn energy<P: Profile, U: RadialTestFunction>(
    profile: &P,
    u: &U,
    r_inner: f64,
) -> Result<f64> {
    if !(r_inner > profile.r_min()) {
        return Err(Error::Domain { what: "energy inner sphere below domain", value: r_inner });
    }
    if (u.value(r_inner) - 1.0).abs() > 1e-9 {
        return Err(Error::Domain { what: "test function must equal 1 on the inner sphere", value: u.value(r_inner) });
    }

    let integrand = |r: f64| match profile.eval(r) {
        Ok(p) => {
            let du = u.slope(r);
            p.phi * p.phi * r * r * du * du
        }
        Err(_) => f64::NAN,
    };

    let rs = profile.characteristic_radius();
    let far_cut = match profile.r_max() {
        Some(hi) => hi,
        None => 1000.0 * rs.max(r_inner),
    };

    let outer = match u.support_end() {
        Some(b) => {
            if b > far_cut && profile.r_max().is_some() {
                return Err(Error::Domain { what: "test function support exceeds tabulated range", value: b });
            }
            b.min(far_cut)
        }
        None => {
            if (u.value(8.0 * far_cut.max(r_inner)) - 0.0).abs() > 1e-3 && profile.r_max().is_none() {
                return Err(Error::Domain {
                    what: "test function must decay to 0 at infinity",
                    value: u.value(8.0 * far_cut),
                });
            }
            far_cut
        }
    };

    // Split at slope corners so the adaptive rule only ever sees smooth pieces.
    let mut cuts: Vec<f64> = alloc::vec![r_inner];
    for c in u.corners() {
        if c > r_inner && c < outer {
            cuts.push(c);
        }
    }
    cuts.push(outer);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut total = 0.0;
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            total += quad::integrate(integrand, w[0], w[1], 1e-11, 0.0, "energy integral")?.value;
        }
    }

    // Unbounded tails beyond the cutoff via u = 1/s.
    if u.support_end().is_none() && profile.r_max().is_none() {
        total += quad::integrate_semi_infinite(integrand, outer, 1e-11, 0.0, "energy tail")?.value;
    }

    if total.is_nan() {
        return Err(Error::Quadrature { what: "energy integral", error_estimate: f64::NAN });
    }
    Ok(4.0 * PI * total)
}

/// Upper bound on the capacity of an outward-minimizing sphere in terms of
/// its area A₀ and Hawking mass m₀, obtained by feeding flow level sets into
/// the energy functional:
/// cap ≤ 2√(16πA₀) + 2√((16π)^{3/2}√A₀·|m₀|).
pub fn capacity_energy_bound(initial_area: f64, initial_mass: f64) -> f64 {
    let s = 16.0 * PI;
    2.0 * (s * initial_area).sqrt()
        + 2.0 * (s.powf(1.5) * initial_area.sqrt() * initial_mass.abs()).sqrt()
}

/// A profile multiplied by a harmonic factor: φ_new = h·φ on {r > r_h}.
///
/// The composition keeps asymptotic flatness and shifts the monopole
/// coefficient by −c, hence the ADM mass by −2c.
#[derive(Debug, Clone)]
pub struct ProductProfile<P> {
    base: P,
    factor: HarmonicFunction<P>,
}

impl<P: Profile + Clone> ProductProfile<P> {
    pub fn new(base: P, factor: HarmonicFunction<P>) -> Self {
        ProductProfile { base, factor }
    }

    pub fn factor(&self) -> &HarmonicFunction<P> {
        &self.factor
    }
}

impl<P: Profile + Clone> Profile for ProductProfile<P> {
    fn r_min(&self) -> f64 {
        self.factor.inner_radius()
    }
    fn characteristic_radius(&self) -> f64 {
        self.base.characteristic_radius().max(2.0 * self.factor.inner_radius())
    }
    fn r_max(&self) -> Option<f64> {
        self.base.r_max()
    }
    fn eval(&self, r: f64) -> Result<crate::profile::ProfilePoint> {
        if r < self.factor.inner_radius() {
            return Err(Error::Domain { what: "r below harmonic factor zero set", value: r });
        }
        let p = self.base.eval(r)?;
        let h = self.factor.evaluate(r)?;
        let c = self.factor.flux_constant();
        let dh = c / (r * r * p.phi * p.phi);
        let d2h = -2.0 * c * (p.phi + r * p.dphi) / (r * r * r * p.phi * p.phi * p.phi);
        Ok(crate::profile::ProfilePoint {
            phi: h * p.phi,
            dphi: dh * p.phi + h * p.dphi,
            d2phi: d2h * p.phi + 2.0 * dh * p.dphi + h * p.d2phi,
        })
    }
    fn phi_minus_one(&self, r: f64) -> Result<f64> {
        // hφ − 1 = (h − 1)φ + (φ − 1), both factors cancellation-free.
        let pm1 = self.base.phi_minus_one(r)?;
        let phi = pm1 + 1.0;
        Ok(-self.factor.one_minus(r)? * phi + pm1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::RadialProfile;

    #[test]
    fn flat_newtonian_potential() {
        let h = solve_harmonic(&RadialProfile::Flat, 1.0).unwrap();
        assert!((h.flux_constant() - 1.0).abs() < 1e-10);
        assert!((h.asymptotic_coefficient() - 1.0).abs() < 1e-9);
        assert!(h.evaluate(1.0).unwrap().abs() < 1e-10);
        assert!((h.evaluate(2.0).unwrap() - 0.5).abs() < 1e-10);
        assert!((h.evaluate(1e8).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn neg_schwarzschild_flux_constant() {
        // ∫₁^∞ ds/(s − 0.5)² = 2, so c = 0.5.
        let p = RadialProfile::NegSchwarzschild { m: -1.0 };
        let h = solve_harmonic(&p, 1.0).unwrap();
        assert!((h.flux_constant() - 0.5).abs() < 1e-10, "c = {}", h.flux_constant());
    }

    #[test]
    fn power_law_quarter_flux_limit() {
        // c(r) = 1/(2(1 − √((r−1)/r))) → 1/2 as r → 1⁺.
        let p = RadialProfile::PowerLaw { alpha: 0.25, r0: 1.0 };
        let c = solve_harmonic(&p, 1.0 + 1e-6).unwrap().flux_constant();
        let expected = 0.5 / (1.0 - (1e-6f64 / (1.0 + 1e-6)).sqrt());
        assert!((c - expected).abs() < 1e-9 * expected, "c = {c}, expected {expected}");
    }

    #[test]
    fn capacity_examples() {
        assert!((capacity_surface(&RadialProfile::Flat, 1.0).unwrap() - 4.0 * PI).abs() < 1e-8);
        let neg = RadialProfile::NegSchwarzschild { m: -1.0 };
        assert!((capacity_surface(&neg, 1.0).unwrap() - 2.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn capacity_zas_limits() {
        let neg = RadialProfile::NegSchwarzschild { m: -1.0 };
        let cap = capacity_zas(&neg).unwrap();
        assert_eq!(cap.value, 0.0, "got {} ± {}", cap.value, cap.uncertainty);

        let pl = RadialProfile::PowerLaw { alpha: 0.25, r0: 1.0 };
        let cap = capacity_zas(&pl).unwrap();
        assert!((cap.value - 2.0 * PI).abs() < 1e-6, "got {}", cap.value);

        let pl75 = RadialProfile::PowerLaw { alpha: 0.75, r0: 1.0 };
        let cap = capacity_zas(&pl75).unwrap();
        assert!(cap.value < 1e-6, "got {}", cap.value);
    }

    #[test]
    fn energy_flat_examples() {
        // The minimizer attains the capacity.
        let e = energy(&RadialProfile::Flat, &CoulombTail { r_inner: 1.0 }, 1.0).unwrap();
        assert!((e - 4.0 * PI).abs() < 1e-8);
        // Linear hat: 4π∫₁² r² dr = 4π·7/3.
        let hat = PiecewiseLinear::new(alloc::vec![(1.0, 1.0), (2.0, 0.0)]).unwrap();
        let e = energy(&RadialProfile::Flat, &hat, 1.0).unwrap();
        assert!((e - 4.0 * PI * 7.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn harmonic_complement_attains_capacity() {
        let p = RadialProfile::Boosted { r0: 0.5, a: 1.0 };
        let h = solve_harmonic(&p, 0.8).unwrap();
        let cap = 4.0 * PI * h.flux_constant();
        let e = energy(&p, &HarmonicComplement(h), 0.8).unwrap();
        assert!((e - cap).abs() < 1e-8 * cap, "energy {e} vs capacity {cap}");
    }

    #[test]
    fn inadmissible_test_functions_error() {
        let bad = PiecewiseLinear::new(alloc::vec![(1.0, 0.7), (2.0, 0.0)]).unwrap();
        assert!(energy(&RadialProfile::Flat, &bad, 1.0).is_err());
    }

    #[test]
    fn product_profile_shifts_monopole() {
        // Flat base with factor vanishing at r = 1: φ_new = 1 − 1/r, the
        // negative Schwarzschild factor of mass −2.
        let h = solve_harmonic(&RadialProfile::Flat, 1.0).unwrap();
        let prod = ProductProfile::new(RadialProfile::Flat, h);
        let v = prod.eval(2.0).unwrap();
        assert!((v.phi - 0.5).abs() < 1e-10);
        assert!((v.dphi - 0.25).abs() < 1e-10);
        let pm1 = prod.phi_minus_one(1e6).unwrap();
        assert!((pm1 * 1e6 + 1.0).abs() < 1e-6, "r(φ−1) = {}", pm1 * 1e6);
    }

    #[test]
    fn solve_rejects_bad_inner_radius() {
        let p = RadialProfile::NegSchwarzschild { m: -1.0 };
        assert!(solve_harmonic(&p, 0.5).is_err());
        assert!(solve_harmonic(&p, 0.4).is_err());
    }
}
