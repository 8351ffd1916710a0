//! Randomized invariants: algebraic identities, flow laws, serialization
//! round trips.  Case counts are kept modest so the whole suite stays fast.

use proptest::prelude::*;
use std::collections::BTreeMap;

use zaslab_core::geometry::{sphere_geometry, Resolution};
use zaslab_core::imcf::{geroch_report, time_to_reach, weak_flow};
use zaslab_core::mass::{hawking_mass, regular_mass, MassKind, MassReport};
use zaslab_core::report::{CaseReport, CaseStatus};
use zaslab_core::{Profile, RadialProfile};

/// Every family here is scalar-curvature-nonnegative, so Geroch
/// monotonicity must hold along any weak flow.
fn arb_profile() -> impl Strategy<Value = RadialProfile> {
    prop_oneof![
        Just(RadialProfile::Flat),
        (-3.0..-0.2f64).prop_map(|m| RadialProfile::NegSchwarzschild { m }),
        (0.2..3.0f64).prop_map(|m| RadialProfile::PosSchwarzschild { m }),
        ((0.05..0.95f64), (0.5..2.0f64))
            .prop_map(|(alpha, r0)| RadialProfile::PowerLaw { alpha, r0 }),
        ((0.3..1.5f64), (0.0..2.0f64)).prop_map(|(r0, a)| RadialProfile::Boosted { r0, a }),
    ]
}

/// Profiles whose boundary is a regular zero set (finite regular mass).
fn arb_regular_profile() -> impl Strategy<Value = RadialProfile> {
    prop_oneof![
        (-3.0..-0.2f64).prop_map(|m| RadialProfile::NegSchwarzschild { m }),
        ((0.3..1.5f64), (0.0..2.0f64)).prop_map(|(r0, a)| RadialProfile::Boosted { r0, a }),
    ]
}

fn start_radius(p: &RadialProfile, x: f64) -> f64 {
    p.r_min() + x * p.r_min().max(p.characteristic_radius())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// −2r²φ′(φ + rφ′) and (ρ/2)(1 − (rρ′/ρ)²) are the same function.
    #[test]
    fn hawking_mass_formulas_agree(p in arb_profile(), x in 1e-6..50.0f64) {
        let r = start_radius(&p, x);
        let pt = p.eval(r).unwrap();
        let rho = r * pt.phi * pt.phi;
        let drho = pt.phi * pt.phi + 2.0 * r * pt.phi * pt.dphi;
        let alt = 0.5 * rho * (1.0 - (r * drho / rho).powi(2));
        let m = hawking_mass(&p, r).unwrap();
        prop_assert!((m - alt).abs() <= 1e-12 * m.abs().max(1.0),
            "r={} m={} alt={}", r, m, alt);
    }

    /// JSON round trip is the identity on profiles.
    #[test]
    fn profile_serde_round_trip(p in arb_profile()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: RadialProfile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(p, back);
    }

    /// Mass reports survive JSON even with non-finite values.
    #[test]
    fn mass_report_round_trip(value in prop_oneof![
        4 => -1e6..1e6f64,
        1 => Just(f64::NEG_INFINITY),
        1 => Just(f64::INFINITY),
        1 => Just(f64::NAN),
    ], r in 0.1..10.0f64, d in -1e3..1e3f64) {
        let mut diagnostics = BTreeMap::new();
        diagnostics.insert("probe".to_string(), d);
        let report = MassReport { kind: MassKind::Zas, value, r: Some(r), diagnostics };
        let text = serde_json::to_string(&report).unwrap();
        let back: MassReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(report.kind, back.kind);
        prop_assert!(report.value.is_nan() && back.value.is_nan()
            || report.value == back.value);
        prop_assert_eq!(report.r, back.r);
        prop_assert_eq!(report.diagnostics, back.diagnostics);
    }

    /// upper_bound: Pass exactly when margin ≥ 0, with −∞ always passing.
    #[test]
    fn upper_bound_status_tracks_margin(
        lhs in prop_oneof![9 => -100.0..100.0f64, 1 => Just(f64::NEG_INFINITY)],
        rhs in -100.0..100.0f64,
        tol in 0.0..1.0f64,
    ) {
        let case = CaseReport::upper_bound("p", "q", lhs, rhs, tol);
        let expect = if lhs == f64::NEG_INFINITY || lhs <= rhs + tol {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        };
        prop_assert_eq!(case.status, expect);
        if lhs.is_finite() {
            prop_assert_eq!(case.status == CaseStatus::Pass, case.margin >= 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Hawking mass of a shrinking sphere approaches the regular mass.
    #[test]
    fn hawking_approaches_regular_mass(p in arb_regular_profile()) {
        let m_reg = regular_mass(&Resolution::identity(p.clone())).unwrap().value;
        let r = p.r_min() * (1.0 + 0.5f64.powi(18));
        let m_h = hawking_mass(&p, r).unwrap();
        prop_assert!((m_h - m_reg).abs() <= 1e-3 * m_reg.abs().max(1.0),
            "m_h={} m_reg={}", m_h, m_reg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Area grows exactly exponentially in flow time, the radius never
    /// decreases, and the Hawking mass never drops under R ≥ 0.
    #[test]
    fn flow_obeys_area_law_and_geroch(
        p in arb_profile(),
        x in 0.05..2.0f64,
        t_max in 0.5..3.0f64,
        n in 16usize..48,
    ) {
        let r0 = start_radius(&p, x);
        let trace = weak_flow(&p, r0, t_max, n).unwrap();
        let a0 = trace.samples[0].area;
        for s in &trace.samples {
            prop_assert!((s.area / (a0 * s.t.exp()) - 1.0).abs() < 1e-8,
                "t={} area={}", s.t, s.area);
        }
        for w in trace.samples.windows(2) {
            prop_assert!(w[1].r >= w[0].r);
        }
        let report = geroch_report(&trace, true, 1e-8);
        prop_assert!(report.monotone, "max drop {}", report.max_drop);
        for j in &trace.jumps {
            prop_assert!(j.r_after > j.r_before);
        }
    }

    /// time_to_reach then flowing for that long lands on the target area.
    #[test]
    fn flow_lands_on_target_area(p in arb_profile(), x in 0.05..2.0f64, k in 50.0..200.0f64) {
        let r0 = start_radius(&p, x);
        let target = k * (r0 + p.characteristic_radius());
        let t = time_to_reach(&p, r0, target).unwrap();
        let trace = weak_flow(&p, r0, t, 8).unwrap();
        let a_target = sphere_geometry(&p, target).unwrap().area;
        let a_last = trace.samples.last().unwrap().area;
        prop_assert!((a_last / a_target - 1.0).abs() < 1e-6,
            "last={} target={}", a_last, a_target);
    }
}
