//! Refined admissible rates from pairs of iterates `(f^l, f^m)`.

use crate::error::{Error, Result};

/// `exp(2·ln δ₊·ln δ₋ / (ln δ₊ + ln δ₋))`, the harmonic mean of the logarithms.
pub fn refined_delta_threshold(delta_plus: f64, delta_minus: f64) -> Result<f64> {
    if !(delta_plus > 1.0 && delta_minus > 1.0) || !delta_plus.is_finite() || !delta_minus.is_finite() {
        return Err(Error::Domain(format!(
            "refined threshold needs δ₊, δ₋ > 1, got ({delta_plus}, {delta_minus})"
        )));
    }
    let (a, b) = (delta_plus.ln(), delta_minus.ln());
    Ok((2.0 * a * b / (a + b)).exp())
}

/// Smallest positive `(l, m)`, ordered by `l + m` then `l`, with
/// `max(δ₊^l, δ₋^m) < δ^{(l+m)/2}` and `l + m ≤ cap`.
pub fn find_parity_pair(delta_plus: f64, delta_minus: f64, delta: f64, cap: u32) -> Option<(u32, u32)> {
    let (a, b, c) = (delta_plus.ln(), delta_minus.ln(), delta.ln());
    (2..=cap).find_map(|total| {
        let half = 0.5 * f64::from(total) * c;
        (1..total)
            .map(|l| (l, total - l))
            .find(|&(l, m)| f64::from(l) * a < half && f64::from(m) * b < half)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn threshold_values() {
        assert!((refined_delta_threshold(E, E).unwrap() - E).abs() < 1e-15);
        let t = refined_delta_threshold(E.powi(4), E).unwrap();
        assert!((t - 1.6f64.exp()).abs() < 1e-12);
        assert!((t - 4.953_032_424_395_115).abs() < 1e-12);
        assert!((refined_delta_threshold(E * E, E * E).unwrap() - E * E).abs() < 1e-14);
        assert!(matches!(refined_delta_threshold(1.0, 2.0), Err(Error::Domain(_))));
        assert!(refined_delta_threshold(2.0, 0.5).is_err());
    }

    #[test]
    fn parity_pairs() {
        assert_eq!(find_parity_pair(2.0, 2.0, 3.0, 10), Some((1, 1)));
        assert_eq!(find_parity_pair(E.powi(4), E, 1.5f64.exp(), 50), None);
        let (l, m) = find_parity_pair(E.powi(4), E, 1.7f64.exp(), 50).unwrap();
        assert_eq!((l, m), (1, 4));
        let half = 0.5 * f64::from(l + m) * 1.7;
        assert!(4.0 * f64::from(l) < half && f64::from(m) < half);
    }
}
