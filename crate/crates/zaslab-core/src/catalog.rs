//! The built-in model geometries the verification suites run over, spanning
//! every theorem's hypothesis space with closed-form oracles, plus the
//! synthetic neck fixture for hull checks.

use crate::profile::{RadialProfile, TabulatedProfile};
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
#[allow(unused_imports)]
use num_traits::Float;

/// One catalog geometry and the sphere its flows start from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub profile: RadialProfile,
    pub flow_start: f64,
}

/// flat, negSchwarzschild(−1), posSchwarzschild(1), powerLaw(0.25,1),
/// powerLaw(0.75,1), boosted(0.5,1).
pub fn default_catalog() -> Vec<CatalogEntry> {
    alloc::vec![
        CatalogEntry {
            id: String::from("flat"),
            profile: RadialProfile::Flat,
            flow_start: 1.0,
        },
        CatalogEntry {
            id: String::from("negSchwarzschild(-1)"),
            profile: RadialProfile::NegSchwarzschild { m: -1.0 },
            flow_start: 0.6,
        },
        CatalogEntry {
            id: String::from("posSchwarzschild(1)"),
            profile: RadialProfile::PosSchwarzschild { m: 1.0 },
            flow_start: 0.3,
        },
        CatalogEntry {
            id: String::from("powerLaw(0.25,1)"),
            profile: RadialProfile::PowerLaw { alpha: 0.25, r0: 1.0 },
            flow_start: 1.5,
        },
        CatalogEntry {
            id: String::from("powerLaw(0.75,1)"),
            profile: RadialProfile::PowerLaw { alpha: 0.75, r0: 1.0 },
            flow_start: 1.5,
        },
        CatalogEntry {
            id: String::from("boosted(0.5,1)"),
            profile: RadialProfile::Boosted { r0: 0.5, a: 1.0 },
            flow_start: 0.6,
        },
    ]
}

fn smooth_bump(x: f64) -> f64 {
    let q = 1.0 - x * x;
    if q <= 1e-9 {
        0.0
    } else {
        (-1.0 / q).exp()
    }
}

/// Areal radius of the neck fixture: a ridge then a dip grafted onto ρ = r,
/// making A(r) non-monotone with a valley bottom near r ≈ 2.7 whose areal
/// radius ≈ 2.4 undercuts the ridge.
fn neck_areal_radius(r: f64) -> f64 {
    r + 2.5 * smooth_bump((r - 2.2) / 0.55) - 1.3 * smooth_bump((r - 3.2) / 0.9)
}

/// Tabulated neck geometry on [1, 6]: φ = √(ρ/r).  Spheres on the rising
/// side of the ridge have strongly negative Hawking mass while their
/// minimizing hull is the valley bottom, a minimal sphere.
pub fn neck_profile() -> TabulatedProfile {
    let (lo, hi, n) = (1.0, 6.0, 1601);
    let samples: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            [r, (neck_areal_radius(r) / r).sqrt()]
        })
        .collect();
    TabulatedProfile::new(samples).expect("neck fixture samples are valid")
}

/// The probe sphere for the hull-mass comparison: on the ridge's rising
/// flank, where m_H < 0 and the hull is the valley bottom.
pub const NECK_PROBE_RADIUS: f64 = 1.94;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imcf::minimizing_hull_radius;
    use crate::mass::hawking_mass;
    use crate::profile::Profile;

    #[test]
    fn default_catalog_shape() {
        let cat = default_catalog();
        assert_eq!(cat.len(), 6);
        assert_eq!(cat[0].id, "flat");
        for e in &cat {
            assert!(e.profile.check_params().is_ok(), "{}", e.id);
            assert!(e.flow_start > e.profile.r_min(), "{}", e.id);
        }
    }

    #[test]
    fn catalog_serde_round_trip() {
        let cat = default_catalog();
        let s = serde_json::to_string(&cat).unwrap();
        assert!(s.contains("flowStart"), "{s}");
        let back: alloc::vec::Vec<CatalogEntry> = serde_json::from_str(&s).unwrap();
        assert_eq!(back.len(), cat.len());
        assert_eq!(back[3].profile, cat[3].profile);
    }

    #[test]
    fn neck_has_negative_mass_sphere_with_minimal_hull() {
        let p = RadialProfile::Tabulated(neck_profile());
        let m_probe = hawking_mass(&p, NECK_PROBE_RADIUS).unwrap();
        assert!(m_probe < -1.0, "m_H(probe) = {m_probe}");
        let hull = minimizing_hull_radius(&p, NECK_PROBE_RADIUS).unwrap();
        assert!(hull > 2.5 && hull < 3.0, "hull = {hull}");
        let m_hull = hawking_mass(&p, hull).unwrap();
        assert!(m_hull > 0.0, "m_H(hull) = {m_hull}");
        // Hull is minimal: H ≈ 0 there.
        let geo = crate::geometry::sphere_geometry(&p, hull).unwrap();
        assert!(geo.mean_curvature.abs() < 1e-6, "H(hull) = {}", geo.mean_curvature);
    }
}
