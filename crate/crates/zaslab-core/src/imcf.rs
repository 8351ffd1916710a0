//! Weak inverse mean curvature flow through centered spheres.
//!
//! In the smooth regime the flow is just A(r(t)) = A(r₀)eᵗ.  Where the area
//! functional is non-monotone (necks), the weak formulation replaces the
//! current sphere by its strictly minimizing hull: the flow jumps outward to
//! the bottom of the next valley of A that has the same area, and continues
//! from there.  Valley bottoms that can be reached this way are exactly the
//! suffix-record minima of A beyond the starting hull, so their areas are
//! strictly increasing with radius and every jump preserves area.
//!
//! r(t) is right-continuous: at a jump level the sample sits on the far side.

use crate::error::{Error, Result};
use crate::geometry::sphere_geometry;
use crate::mass::{adm_mass, hawking_mass};
use crate::profile::Profile;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
#[allow(unused_imports)]
use num_traits::Float;

/// One point of the flow, sampled uniformly in flow time.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub r: f64,
    pub area: f64,
    pub mean_curvature: f64,
    pub hawking_mass: f64,
}

/// A hull-replacement jump: area is preserved, radius is not.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JumpRecord {
    pub t: f64,
    pub r_before: f64,
    pub r_after: f64,
    pub area: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowTrace {
    /// Requested starting sphere.
    pub initial_radius: f64,
    /// Its strictly minimizing hull, where the flow actually starts.
    pub hull_radius: f64,
    pub samples: Vec<FlowSample>,
    pub jumps: Vec<JumpRecord>,
}

/// Areal radius ρ = rφ²; A = 4πρ², and sign(ρ′) = sign(φ + 2rφ′) = sign(H).
fn areal_radius<P: Profile>(profile: &P, r: f64) -> Result<f64> {
    let p = profile.eval(r)?;
    Ok(r * p.phi * p.phi)
}

/// Sign of ρ′ (meaningful for r > r_min where φ > 0).
fn slope_sign<P: Profile>(profile: &P, r: f64) -> Result<i32> {
    let p = profile.eval(r)?;
    let g = p.phi + 2.0 * r * p.dphi;
    Ok(if g > 0.0 {
        1
    } else if g < 0.0 {
        -1
    } else {
        0
    })
}

/// Interior critical points of ρ on (lo, hi), located by sign change of
/// φ + 2rφ′ on a log grid and refined by bisection.  Returns (radius, kind)
/// with kind +1 for local minima, −1 for local maxima.
fn critical_points<P: Profile>(profile: &P, lo: f64, hi: f64) -> Result<Vec<(f64, i32)>> {
    let mut out = Vec::new();
    if !(hi > lo) {
        return Ok(out);
    }
    let span = (hi / lo).ln();
    let n = ((span / core::f64::consts::LN_10) * 512.0).ceil().max(64.0) as usize;
    let mut prev_r = lo;
    let mut prev_s = slope_sign(profile, lo)?;
    for j in 1..=n {
        let r = lo * (span * j as f64 / n as f64).exp();
        let s = slope_sign(profile, r)?;
        if s != prev_s && prev_s != 0 && s != 0 {
            // Bisect the sign change.
            let (mut a, mut b) = (prev_r, r);
            for _ in 0..90 {
                if b - a <= 1e-14 * b {
                    break;
                }
                let mid = 0.5 * (a + b);
                if slope_sign(profile, mid)? == prev_s {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push((0.5 * (a + b), s));
        }
        if s != 0 {
            prev_s = s;
        }
        prev_r = r;
    }
    Ok(out)
}

/// How far outward jump candidates are searched for.
fn scan_end<P: Profile>(profile: &P, beyond: f64) -> f64 {
    let hi = (64.0 * profile.characteristic_radius()).max(4.0 * beyond);
    match profile.r_max() {
        Some(m) => hi.min(m),
        None => hi,
    }
}

/// Radius of the strictly minimizing hull of the sphere at r: the largest
/// minimizer of area over spheres at radius ≥ r (ties within 1e-12 go
/// outward).  Equals r itself when area is already non-decreasing ahead.
pub fn minimizing_hull_radius<P: Profile>(profile: &P, r: f64) -> Result<f64> {
    let rho0 = areal_radius(profile, r)?;
    let mut best_r = r;
    let mut best = rho0;
    for (s, kind) in critical_points(profile, r, scan_end(profile, r))? {
        if kind != 1 {
            continue;
        }
        let rho = areal_radius(profile, s)?;
        if rho < best * (1.0 + 1e-12) {
            best_r = s;
            best = best.min(rho);
        }
    }
    Ok(best_r)
}

/// Solve ρ(s) = target on the increasing branch starting at `lo`, with the
/// solution known to lie below `hi_hint` if given.
fn solve_on_branch<P: Profile>(
    profile: &P,
    lo: f64,
    hi_hint: Option<f64>,
    target: f64,
) -> Result<f64> {
    let mut hi = match hi_hint {
        Some(h) => h,
        None => {
            let mut h = (lo * 2.0).max(lo + profile.characteristic_radius());
            let mut guard = 0;
            while areal_radius(profile, h)? < target {
                h *= 2.0;
                guard += 1;
                if guard > 200 {
                    return Err(Error::Convergence {
                        what: "flow level bracket",
                        change: h,
                        tol: target,
                    });
                }
            }
            h
        }
    };
    let mut lo = lo;
    if areal_radius(profile, lo)? >= target {
        return Ok(lo);
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if areal_radius(profile, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Run the weak flow from the sphere at r0 for flow time t_max, sampling
/// n_samples points uniformly in t (endpoints included).
pub fn weak_flow<P: Profile>(
    profile: &P,
    r0: f64,
    t_max: f64,
    n_samples: usize,
) -> Result<FlowTrace> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain { what: "flow time must be positive", value: t_max });
    }
    if n_samples < 2 {
        return Err(Error::Domain { what: "need at least 2 samples", value: n_samples as f64 });
    }
    profile.eval(r0)?;

    let hull = minimizing_hull_radius(profile, r0)?;
    let rho0 = areal_radius(profile, hull)?;
    if !(rho0 > 0.0) {
        return Err(Error::Domain { what: "starting sphere has zero area", value: r0 });
    }
    let a0 = sphere_geometry(profile, hull)?.area;

    let mut jumps = Vec::new();
    if hull != r0 {
        jumps.push(JumpRecord { t: 0.0, r_before: r0, r_after: hull, area: a0 });
    }

    // Jump events ahead: suffix-record valley bottoms beyond the hull whose
    // areas exceed the starting area.  Kept as (valley radius, ρ there,
    // preceding local max as a bracket hint).
    let rho_final = rho0 * (0.5 * t_max).exp();
    let crit = critical_points(profile, hull, scan_end(profile, rho_final.max(hull)))?;
    let mut events: Vec<(f64, f64, Option<f64>)> = Vec::new();
    {
        let mut best_ahead = f64::INFINITY;
        let mut kept: Vec<(f64, f64)> = Vec::new();
        for &(s, kind) in crit.iter().rev() {
            if kind == 1 {
                let rho = areal_radius(profile, s)?;
                if rho < best_ahead {
                    best_ahead = rho;
                    kept.push((s, rho));
                }
            }
        }
        kept.reverse();
        for (s, rho) in kept {
            if rho > rho0 * (1.0 + 1e-12) {
                let hint = crit
                    .iter()
                    .filter(|&&(m, kind)| kind == -1 && m < s)
                    .map(|&(m, _)| m)
                    .fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a: f64| a.max(m))));
                events.push((s, rho, hint));
            }
        }
    }

    // Branch bases in radius order: the hull, then each valley bottom.
    let mut samples = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let t = t_max * j as f64 / (n_samples - 1) as f64;
        let rho_t = rho0 * (0.5 * t).exp();
        // Right-continuity: at the jump level itself, sit on the valley.
        let mut base = hull;
        let mut hint: Option<f64> = events.first().map(|&(s, _, h)| h.unwrap_or(s));
        for (i, &(s, rho_v, _)) in events.iter().enumerate() {
            if rho_v <= rho_t {
                base = s;
                hint = events.get(i + 1).map(|&(s2, _, h2)| h2.unwrap_or(s2));
            } else {
                break;
            }
        }
        let r = solve_on_branch(profile, base, hint.filter(|&h| h > base), rho_t)?;
        let geo = sphere_geometry(profile, r)?;
        samples.push(FlowSample {
            t,
            r,
            area: geo.area,
            mean_curvature: geo.mean_curvature,
            hawking_mass: hawking_mass(profile, r)?,
        });
    }

    // Record the jumps that occur within the sampled window.
    let mut base = hull;
    for &(s, rho_v, h) in &events {
        let t_jump = 2.0 * (rho_v / rho0).ln();
        if t_jump > t_max {
            break;
        }
        let r_before = solve_on_branch(profile, base, h.filter(|&x| x > base), rho_v)?;
        jumps.push(JumpRecord {
            t: t_jump,
            r_before,
            r_after: s,
            area: sphere_geometry(profile, s)?.area,
        });
        base = s;
    }

    Ok(FlowTrace { initial_radius: r0, hull_radius: hull, samples, jumps })
}

/// Flow time needed for the area to grow from the sphere at `from` (after
/// hull replacement) to the sphere at `target`.
pub fn time_to_reach<P: Profile>(profile: &P, from: f64, target: f64) -> Result<f64> {
    let hull = minimizing_hull_radius(profile, from)?;
    let a0 = sphere_geometry(profile, hull)?.area;
    let a1 = sphere_geometry(profile, target)?.area;
    if !(a1 > a0) {
        return Err(Error::Domain { what: "flow target not beyond start", value: target });
    }
    Ok((a1 / a0).ln())
}

/// Monotonicity audit of the Hawking mass along a trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GerochReport {
    /// Whether the trace's geometry satisfies the R ≥ 0 hypothesis.
    pub scalar_curvature_nonnegative: bool,
    /// No consecutive-sample drop exceeds the tolerance.
    pub monotone: bool,
    /// Largest drop m_H(t_k) − m_H(t_{k+1}) observed (0 if none).
    pub max_drop: f64,
    pub violations: usize,
    pub first_violation_t: Option<f64>,
}

pub fn geroch_report(
    trace: &FlowTrace,
    scalar_curvature_nonnegative: bool,
    tol: f64,
) -> GerochReport {
    let mut max_drop: f64 = 0.0;
    let mut violations = 0;
    let mut first_violation_t = None;
    for w in trace.samples.windows(2) {
        let drop = w[0].hawking_mass - w[1].hawking_mass;
        if drop > tol {
            violations += 1;
            if first_violation_t.is_none() {
                first_violation_t = Some(w[1].t);
            }
        }
        max_drop = max_drop.max(drop);
    }
    GerochReport {
        scalar_curvature_nonnegative,
        monotone: violations == 0,
        max_drop,
        violations,
        first_violation_t,
    }
}

/// The Hawking mass limit along the flow against the ADM mass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitComparison {
    pub hawking_limit: f64,
    pub adm_mass: f64,
    /// adm − limit; the asymptotic comparison theorem makes this ≥ 0.
    pub gap: f64,
}

/// Extrapolate m_H to infinity from the trace tail (first-order in 1/r) and
/// compare with the ADM mass.  The trace must reach r ≥ 1024·characteristic
/// radius for the tail to be trusted.
pub fn hawking_limit_vs_adm<P: Profile>(profile: &P, trace: &FlowTrace) -> Result<LimitComparison> {
    let last = trace.samples.last().ok_or(Error::Domain { what: "empty trace", value: 0.0 })?;
    let needed = 1024.0 * profile.characteristic_radius();
    if last.r < needed {
        return Err(Error::Domain { what: "trace does not reach the asymptotic regime", value: last.r });
    }
    let half = last.r * 0.5;
    let mid = trace
        .samples
        .iter()
        .min_by(|a, b| (a.r - half).abs().partial_cmp(&(b.r - half).abs()).unwrap())
        .unwrap();
    if mid.r >= last.r {
        return Err(Error::Domain { what: "trace too short for tail extrapolation", value: last.r });
    }
    // m(r) = m∞ + k/r through the two samples.
    let hawking_limit =
        (last.r * last.hawking_mass - mid.r * mid.hawking_mass) / (last.r - mid.r);
    let adm = adm_mass(profile)?.value;
    Ok(LimitComparison { hawking_limit, adm_mass: adm, gap: adm - hawking_limit })
}
