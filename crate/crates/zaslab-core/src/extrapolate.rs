//! Limit extraction from boundary sequences.
//!
//! Quantities attached to shrinking spheres r_i = r_min(1 + 2^{-i}) form
//! sequences whose error terms are asymptotically geometric in i (ratios 2^{-i}
//! or 2^{-i/2} for the model families).  Iterated Aitken Δ² sweeps measure the
//! ratio instead of assuming it, which is what makes the half-order
//! convergence of the power-law family reachable at tight tolerances.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Extrapolated limit with a crude, monotone-friendly uncertainty proxy.
#[derive(Debug, Clone, Copy)]
pub struct TailLimit {
    pub value: f64,
    pub uncertainty: f64,
}

/// Two-point Richardson step for a quantity with leading error ~ r^{-order}:
/// samples at r and 2r combine to (2^p·S(2r) − S(r))/(2^p − 1).
pub fn richardson_pair(s_at_r: f64, s_at_2r: f64, order: i32) -> f64 {
    let w = (2.0f64).powi(order);
    (w * s_at_2r - s_at_r) / (w - 1.0)
}

/// One Aitken Δ² sweep; output is two entries shorter.  Degenerate second
/// differences (already-converged or exactly linear tails) pass the raw value
/// through unchanged.
fn aitken_sweep(s: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(s.len().saturating_sub(2));
    for w in s.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let d1 = b - a;
        let d2 = c - b;
        let den = d2 - d1;
        let scale = d1.abs().max(d2.abs());
        if den.abs() <= 1e-12 * scale || scale == 0.0 {
            out.push(c);
        } else {
            out.push(c - d2 * d2 / den);
        }
    }
    out
}

/// Limit of a convergent boundary sequence by two Aitken sweeps.
///
/// Needs at least 3 entries; below 5 only one sweep is applied.  The
/// uncertainty combines the progress of the final sweep with its last
/// internal difference.
pub fn tail_limit(seq: &[f64]) -> Option<TailLimit> {
    if seq.len() < 3 {
        let value = *seq.last()?;
        let uncertainty = if seq.len() == 2 { (seq[1] - seq[0]).abs() } else { f64::INFINITY };
        return Some(TailLimit { value, uncertainty });
    }
    let t1 = aitken_sweep(seq);
    if t1.len() < 3 {
        let value = *t1.last()?;
        return Some(TailLimit { value, uncertainty: (value - *seq.last()?).abs() });
    }
    let t2 = aitken_sweep(&t1);
    let value = *t2.last()?;
    let last_step = if t2.len() >= 2 { (t2[t2.len() - 1] - t2[t2.len() - 2]).abs() } else { 0.0 };
    let sweep_gain = (value - *t1.last()?).abs();
    Some(TailLimit { value, uncertainty: last_step.max(sweep_gain) })
}

/// Signature of a sequence diverging to −∞: the last several gaps are all
/// negative and consistently widening.
pub fn looks_divergent_down(seq: &[f64]) -> bool {
    const WINDOW: usize = 6;
    if seq.len() < WINDOW + 1 {
        return false;
    }
    let tail = &seq[seq.len() - (WINDOW + 1)..];
    let mut prev_gap = None;
    for w in tail.windows(2) {
        let gap = w[1] - w[0];
        if !(gap < 0.0) {
            return false;
        }
        if let Some(p) = prev_gap {
            // Widening means the magnitude ratio stays clearly above 1.
            if !(gap / p > 1.1) {
                return false;
            }
        }
        prev_gap = Some(gap);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn richardson_first_order_removes_linear_term() {
        // S(r) = 3 + 5/r sampled at r = 8 and 16.
        let est = richardson_pair(3.0 + 5.0 / 8.0, 3.0 + 5.0 / 16.0, 1);
        assert!((est - 3.0).abs() < 1e-14);
    }

    #[test]
    fn aitken_is_exact_on_geometric_tails() {
        // s_i = L + q^i with q = 1/√2.
        let q = 0.5f64.sqrt();
        let seq: Vec<f64> = (4..=20).map(|i| 7.0 + q.powi(i)).collect();
        let lim = tail_limit(&seq).unwrap();
        assert!((lim.value - 7.0).abs() < 1e-10, "value {}", lim.value);
        assert!(lim.uncertainty < 1e-8);
    }

    #[test]
    fn two_geometric_components_need_two_sweeps() {
        let (q1, q2) = (0.5f64, 0.5f64.sqrt());
        let seq: Vec<f64> = (4..=20).map(|i| -2.0 + 3.0 * q1.powi(i) - 1.5 * q2.powi(i)).collect();
        let lim = tail_limit(&seq).unwrap();
        // One sweep leaves ~1e-5 here; the second buys two more decades.
        assert!((lim.value + 2.0).abs() < 1e-7, "value {}", lim.value);
    }

    #[test]
    fn constant_sequence_passes_through() {
        let seq = [4.0; 10];
        let lim = tail_limit(&seq).unwrap();
        assert_eq!(lim.value, 4.0);
        assert_eq!(lim.uncertainty, 0.0);
    }

    #[test]
    fn divergence_signature() {
        // Widening negative gaps: s_i = −2^{i/2}.
        let div: Vec<f64> = (4..=20).map(|i| -(2.0f64).powf(i as f64 / 2.0)).collect();
        assert!(looks_divergent_down(&div));
        // Convergent decreasing sequence: halving gaps.
        let conv: Vec<f64> = (4..=20).map(|i| 1.0 + 0.5f64.powi(i)).collect();
        assert!(!looks_divergent_down(&conv));
        // Increasing sequence (gaps positive).
        let inc: Vec<f64> = (4..=20).map(|i| -2.0 - 0.5f64.powi(i)).collect();
        assert!(!looks_divergent_down(&inc));
    }
}
