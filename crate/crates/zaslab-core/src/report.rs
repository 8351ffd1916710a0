//! Typed pass/fail reporting for the verification suites.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Tolerance tiers: relative equalities, extrapolated limits, and exact
/// algebraic identities.  All three scale together under --tol-scale.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    pub equality_rel: f64,
    pub limit_abs: f64,
    pub algebraic_abs: f64,
}

impl Tolerances {
    pub fn base() -> Self {
        Tolerances { equality_rel: 1e-6, limit_abs: 1e-4, algebraic_abs: 1e-9 }
    }

    pub fn scaled(scale: f64) -> Self {
        let b = Self::base();
        Tolerances {
            equality_rel: b.equality_rel * scale,
            limit_abs: b.limit_abs * scale,
            algebraic_abs: b.algebraic_abs * scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// The theorem's hypotheses do not hold here; the check is reported but
    /// not counted against the suite.
    HypothesisUnmet,
    /// Informational only (expected sign flags, margins).
    Info,
}

/// One checked relation.  `margin` is how far inside the tolerance the check
/// landed (negative means violated by that much).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseReport {
    pub profile: String,
    pub quantity: String,
    pub relation: String,
    #[serde(with = "crate::json_num")]
    pub lhs: f64,
    #[serde(with = "crate::json_num")]
    pub rhs: f64,
    #[serde(with = "crate::json_num")]
    pub margin: f64,
    pub status: CaseStatus,
}

impl CaseReport {
    /// |lhs − rhs| ≤ tol.
    pub fn equality(
        profile: &str,
        quantity: &str,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> CaseReport {
        let margin = tol - (lhs - rhs).abs();
        CaseReport {
            profile: String::from(profile),
            quantity: String::from(quantity),
            relation: String::from("="),
            lhs,
            rhs,
            margin,
            status: if margin >= 0.0 { CaseStatus::Pass } else { CaseStatus::Fail },
        }
    }

    /// lhs ≤ rhs + tol.  Infinite lhs = −∞ passes trivially.
    pub fn upper_bound(
        profile: &str,
        quantity: &str,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> CaseReport {
        let margin = rhs + tol - lhs;
        CaseReport {
            profile: String::from(profile),
            quantity: String::from(quantity),
            relation: String::from("<="),
            lhs,
            rhs,
            margin,
            status: if margin >= 0.0 || lhs == f64::NEG_INFINITY {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            },
        }
    }

    /// Boolean condition with the witness value recorded on the left.
    pub fn condition(
        profile: &str,
        quantity: &str,
        relation: &str,
        witness: f64,
        holds: bool,
    ) -> CaseReport {
        CaseReport {
            profile: String::from(profile),
            quantity: String::from(quantity),
            relation: String::from(relation),
            lhs: witness,
            rhs: 0.0,
            margin: if holds { 0.0 } else { -1.0 },
            status: if holds { CaseStatus::Pass } else { CaseStatus::Fail },
        }
    }

    pub fn info(profile: &str, quantity: &str, relation: &str, lhs: f64, rhs: f64) -> CaseReport {
        CaseReport {
            profile: String::from(profile),
            quantity: String::from(quantity),
            relation: String::from(relation),
            lhs,
            rhs,
            margin: 0.0,
            status: CaseStatus::Info,
        }
    }

    pub fn hypothesis_unmet(
        profile: &str,
        quantity: &str,
        relation: &str,
        lhs: f64,
        rhs: f64,
    ) -> CaseReport {
        CaseReport {
            profile: String::from(profile),
            quantity: String::from(quantity),
            relation: String::from(relation),
            lhs,
            rhs,
            margin: 0.0,
            status: CaseStatus::HypothesisUnmet,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub tolerances: Tolerances,
    pub cases: Vec<CaseReport>,
    /// True when no case failed (hypothesis-unmet and info rows don't count).
    pub overall: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, tolerances: Tolerances, cases: Vec<CaseReport>) -> SuiteReport {
        let overall = !cases.iter().any(|c| c.status == CaseStatus::Fail);
        SuiteReport { suite: String::from(suite), tolerances, cases, overall }
    }
}
