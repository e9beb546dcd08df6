//! The exponential mixing inequality `|C_n| ≤ A ‖φ‖ ‖ψ‖ base^{−n}` and its
//! one-sided check against a correlation series.

use serde::{Serialize, Serializer};

use super::correlation::CorrelationSeries;
use crate::cohomology::spectral::least_squares_slope;
use crate::cohomology::GapCertificate;
use crate::error::{Error, Result};

/// Correlations at or below this are treated as zero.
pub const CORRELATION_FLOOR: f64 = 1e-14;
/// Entries must exceed this many error bars to enter the rate fit.
pub const SIGMA_MASK: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoremBound {
    /// `(d_p/δ)^{ββ'/8}`, the guaranteed decay factor per step.
    pub base: f64,
    /// `‖φ‖_{C^β} ‖ψ‖_{C^β'}`.
    pub scale: f64,
    pub d_p: f64,
    pub delta: f64,
    pub beta: f64,
    pub beta_prime: f64,
}

impl TheoremBound {
    /// `A · scale · base^{−n}`.
    pub fn at(&self, a: f64, n: usize) -> f64 {
        a * self.scale * (-(n as f64) * self.base.ln()).exp()
    }
}

pub fn theorem_bound(
    cert: &GapCertificate,
    delta: f64,
    beta: f64,
    beta_prime: f64,
    norm_phi: f64,
    norm_psi: f64,
) -> Result<TheoremBound> {
    for (name, b) in [("beta", beta), ("beta_prime", beta_prime)] {
        if !(0.0..=2.0).contains(&b) {
            return Err(Error::Domain(format!("{name} = {b} outside [0, 2]")));
        }
    }
    if !(norm_phi >= 0.0 && norm_psi >= 0.0 && norm_phi.is_finite() && norm_psi.is_finite()) {
        return Err(Error::Domain(format!(
            "norms must be finite and non-negative, got {norm_phi}, {norm_psi}"
        )));
    }
    if let Some(why) = cert.failure() {
        return Err(Error::Hypothesis(why));
    }
    if !cert.admits(delta) {
        return Err(Error::Hypothesis(format!(
            "δ = {delta} outside the admissible interval ({}, {})",
            cert.lo, cert.hi
        )));
    }
    Ok(TheoremBound {
        base: (cert.d_p / delta).powf(beta * beta_prime / 8.0),
        scale: norm_phi * norm_psi,
        d_p: cert.d_p,
        delta,
        beta,
        beta_prime,
    })
}

/// A fitted decay rate of `ln |C_n|` per step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rate {
    Fitted(f64),
    /// Fewer than two usable entries and the series vanished within range.
    Decayed,
    /// Fewer than two usable entries otherwise.
    Insufficient,
}

impl Rate {
    fn from_points(points: &[(f64, f64)], decayed: bool) -> Self {
        match points.len() {
            0 | 1 if decayed => Rate::Decayed,
            0 | 1 => Rate::Insufficient,
            _ => Rate::Fitted(least_squares_slope(points)),
        }
    }

    /// The slope, with `−∞` for a decayed series.
    pub fn value(self) -> Option<f64> {
        match self {
            Rate::Fitted(s) => Some(s),
            Rate::Decayed => Some(f64::NEG_INFINITY),
            Rate::Insufficient => None,
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Rate::Fitted(x) => s.serialize_f64(*x),
            Rate::Decayed => s.serialize_str("-inf"),
            Rate::Insufficient => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "fitted_A")]
    pub fitted_a: f64,
    pub base: f64,
    /// Same as `base`: the guaranteed decay factor per step.
    pub theorem_rate: f64,
    pub empirical_rate: Rate,
    pub empirical_rate_even: Rate,
    pub empirical_rate_odd: Rate,
    pub holds: bool,
    /// The last tested entry is below the floor.
    pub decayed_to_zero: bool,
    /// Whether every fitted rate decays at least as fast as `base^{−n}`.
    pub rate_within_bound: bool,
    pub delta: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub scale: f64,
    pub n_max: usize,
    pub fit_points: usize,
}

pub fn fit_and_check(series: &CorrelationSeries, bound: &TheoremBound) -> Result<BoundReport> {
    if series.entries.is_empty() {
        return Err(Error::Domain("empty correlation series".into()));
    }
    let ln_base = bound.base.ln();
    let mut all = Vec::new();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut fitted_a: f64 = 0.0;
    for e in &series.entries {
        let size = e.value.abs() + e.abs_error;
        if size > 0.0 {
            let a = if bound.scale > 0.0 {
                (size.ln() + e.n as f64 * ln_base - bound.scale.ln()).exp()
            } else {
                f64::INFINITY
            };
            fitted_a = fitted_a.max(a);
        }
        if e.value.abs() > (SIGMA_MASK * e.abs_error).max(CORRELATION_FLOOR) {
            let p = (e.n as f64, e.value.abs().ln());
            all.push(p);
            if e.n % 2 == 0 {
                even.push(p)
            } else {
                odd.push(p)
            }
        }
    }
    let holds = fitted_a.is_finite()
        && series.entries.iter().all(|e| {
            let bound_n = bound.at(fitted_a, e.n);
            e.value.abs() + e.abs_error <= bound_n * (1.0 + 1e-12)
        });
    let last = series.entries.iter().max_by_key(|e| e.n).expect("nonempty");
    let decayed = last.value.abs() <= CORRELATION_FLOOR;
    let (rate, rate_even, rate_odd) = (
        Rate::from_points(&all, decayed),
        Rate::from_points(&even, decayed),
        Rate::from_points(&odd, decayed),
    );
    let rate_within_bound = [rate, rate_even, rate_odd]
        .iter()
        .all(|r| r.value().is_none_or(|s| s <= -ln_base + 1e-9));
    Ok(BoundReport {
        fitted_a,
        base: bound.base,
        theorem_rate: bound.base,
        empirical_rate: rate,
        empirical_rate_even: rate_even,
        empirical_rate_odd: rate_odd,
        holds,
        decayed_to_zero: decayed,
        rate_within_bound,
        delta: bound.delta,
        beta: bound.beta,
        beta_prime: bound.beta_prime,
        scale: bound.scale,
        n_max: series.entries.iter().map(|e| e.n).max().unwrap_or(0),
        fit_points: all.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gauss_matrix, torus_from_matrix};
    use crate::cohomology::gap_certificate;
    use crate::mixing::{correlation_exact, TestFunction};

    fn cat_cert() -> GapCertificate {
        let t = torus_from_matrix("cat", gauss_matrix([[(2, 0), (1, 0)], [(1, 0), (1, 0)]])).unwrap();
        gap_certificate(t.hodge()).unwrap()
    }

    #[test]
    fn base_arithmetic() {
        let cert = cat_cert();
        let b = theorem_bound(&cert, 2.0, 2.0, 2.0, 1.0, 1.0).unwrap();
        assert!((b.base - 1.85122958682192).abs() < 1e-12);
        let flat = theorem_bound(&cert, 2.0, 2.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(flat.base, 1.0);
        let d = cert.d_p;
        assert!(matches!(
            theorem_bound(&cert, d * 1.01, 2.0, 2.0, 1.0, 1.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            theorem_bound(&cert, 0.5, 2.0, 2.0, 1.0, 1.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            theorem_bound(&cert, 2.0, 2.5, 2.0, 1.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decayed_series() {
        let t = torus_from_matrix("cat", gauss_matrix([[(2, 0), (1, 0)], [(1, 0), (1, 0)]])).unwrap();
        let f = TestFunction::cosine([1, 0, 0, 0]).unwrap();
        let s = correlation_exact(&t, &f, &f, 30).unwrap();
        let b = theorem_bound(&cat_cert(), 2.0, 2.0, 2.0, f.norm_c2_bound(), f.norm_c2_bound()).unwrap();
        let r = fit_and_check(&s, &b).unwrap();
        assert!(r.holds);
        assert_eq!(r.fit_points, 1);
        assert!(r.decayed_to_zero && r.rate_within_bound);
        assert_eq!(r.empirical_rate_odd, Rate::Decayed);
        assert_eq!(r.empirical_rate_even, Rate::Decayed);
        assert!((r.fitted_a - 0.5 / b.scale).abs() < 1e-15);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["empirical_rate_odd"], "-inf");
        assert!(json.get("fitted_A").is_some());
        let short = correlation_exact(&t, &f, &f, 0).unwrap();
        let r = fit_and_check(&short, &b).unwrap();
        assert_eq!(r.empirical_rate, Rate::Insufficient);
        assert!(serde_json::to_value(&r).unwrap()["empirical_rate"].is_null());
        assert!(json.get("fitted_A").is_some());
    }
}
