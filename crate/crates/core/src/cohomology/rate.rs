//! Convergence of `λ^{-n} Mⁿ` to the dominant spectral projector.
//!
//! With a simple dominant eigenvalue `λ`, `λ^{-n}Mⁿ → L = adj(λI − M) / χ'(λ)`
//! and the error decays like `(ρ₂/|λ|)ⁿ`. Both `L` and the powers are evaluated
//! in binary floating point with a precision chosen so that the fit window
//! stays far above rounding noise; dividing by `λ` at every step keeps the
//! magnitudes bounded.

use dashu::float::{round::mode::HalfEven, FBig};
use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::Serialize;

use super::spectral::{dominance, least_squares_slope, multiplicity_one, Spectrum};
use crate::error::{Error, Result};
use crate::exact::charpoly::faddeev_leverrier;
use crate::exact::CMatrix;

type Float = FBig<HalfEven, 2>;

pub const MIN_PRECISION_BITS: usize = 128;
/// Samples enter the slope fit once the error drops below this.
pub const FIT_THRESHOLD: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateSample {
    pub n: usize,
    /// `ln e_n`; `None` when `e_n` is exactly zero.
    pub ln_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub dominant: f64,
    pub second_modulus: f64,
    pub precision_bits: usize,
    pub samples: Vec<RateSample>,
    /// Fitted slope of `ln e_n`; `None` when fewer than two samples are usable.
    pub slope: Option<f64>,
    /// `−ln(|λ| / ρ₂)`.
    pub expected_slope: f64,
}

impl RateReport {
    pub fn relative_error(&self) -> Option<f64> {
        self.slope
            .map(|s| ((s - self.expected_slope) / self.expected_slope).abs())
    }
}

fn to_float(r: &RBig, precision: usize) -> Float {
    let num = Float::from(r.numerator().clone()).with_precision(precision).value();
    let den = Float::from(IBig::from(r.denominator().clone()))
        .with_precision(precision)
        .value();
    num / den
}

fn abs(x: Float) -> Float {
    if x < Float::ZERO {
        -x
    } else {
        x
    }
}

fn horner(coeffs: &[Float], x: &Float) -> Float {
    let mut acc = Float::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn projector_convergence_rate(m: &CMatrix, n_max: usize) -> Result<RateReport> {
    let spec = Spectrum::of_real(m)?;
    if !multiplicity_one(m, &spec)?.holds {
        return Err(Error::Hypothesis(
            "Jordan block of size > 1 at the maximal modulus".into(),
        ));
    }
    let dom = dominance(&spec)?;
    if !dom.unique {
        return Err(Error::Hypothesis("dominant eigenvalue is not unique".into()));
    }
    let n = m.rows();
    let top = spec.top()?.expect("unique dominant root exists");
    let seed = spec.roots.roots()[top].center.re;
    let ratio = if dom.second_modulus > 0.0 {
        dom.dominant / dom.second_modulus
    } else {
        f64::INFINITY
    };
    let needed = if ratio.is_finite() {
        (n_max as f64 * ratio.log2()).ceil() as usize
    } else {
        0
    };
    let precision = (needed + 96).max(MIN_PRECISION_BITS);

    let chi = &spec.char_poly.re;
    let coeffs: Vec<Float> = chi.coeffs().iter().map(|c| to_float(c, precision)).collect();
    let dcoeffs: Vec<Float> = chi
        .derivative()
        .coeffs()
        .iter()
        .map(|c| to_float(c, precision))
        .collect();
    let mut lambda = Float::try_from(seed)
        .map_err(|_| Error::Arithmetic("non-finite eigenvalue".into()))?
        .with_precision(precision)
        .value();
    let iterations = 4 + (precision as f64 / 40.0).log2().ceil() as usize;
    for _ in 0..iterations {
        lambda = lambda.clone() - horner(&coeffs, &lambda) / horner(&dcoeffs, &lambda);
    }

    // L = Σ_j λ^j B_j / χ'(λ)
    let lev = faddeev_leverrier(m)?;
    let scale = horner(&dcoeffs, &lambda);
    let mut projector = vec![Float::ZERO.with_precision(precision).value(); n * n];
    let mut power = Float::ONE.with_precision(precision).value();
    for b in &lev.adjugate {
        for (slot, z) in projector.iter_mut().zip(b.entries()) {
            *slot = slot.clone() + to_float(&z.re, precision) * &power;
        }
        power *= &lambda;
    }
    for slot in &mut projector {
        *slot = slot.clone() / &scale;
    }

    let step: Vec<Float> = m
        .entries()
        .iter()
        .map(|z| to_float(&z.re, precision) / &lambda)
        .collect();
    let mut current: Vec<Float> = (0..n * n)
        .map(|i| {
            if i % (n + 1) == 0 { Float::ONE } else { Float::ZERO }
                .with_precision(precision)
                .value()
        })
        .collect();
    let noise = Float::from_parts(IBig::ONE, -((precision as isize) - 48));
    let mut samples = Vec::with_capacity(n_max + 1);
    let mut fit = Vec::new();
    for k in 0..=n_max {
        if k > 0 {
            current = matmul(&current, &step, n);
        }
        let err = current
            .iter()
            .zip(&projector)
            .map(|(a, b)| abs(a.clone() - b))
            .fold(Float::ZERO, |acc, x| if x > acc { x } else { acc });
        let ln_error = (err > Float::ZERO).then(|| err.ln().to_f64().value());
        if let Some(le) = ln_error {
            if le < FIT_THRESHOLD.ln() && err > noise {
                fit.push((k as f64, le));
            }
        }
        samples.push(RateSample { n: k, ln_error });
    }
    let slope = (fit.len() >= 2).then(|| least_squares_slope(&fit));
    Ok(RateReport {
        dominant: dom.dominant,
        second_modulus: dom.second_modulus,
        precision_bits: precision,
        samples,
        slope,
        expected_slope: -ratio.ln(),
    })
}

fn matmul(a: &[Float], b: &[Float], n: usize) -> Vec<Float> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Float::ZERO;
            for k in 0..n {
                acc += &a[i * n + k] * &b[k * n + j];
            }
            out.push(acc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[Vec<i64>]) -> CMatrix {
        CMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_rate_is_log_two() {
        let r = projector_convergence_rate(&ints(&[vec![2, 0], vec![0, 1]]), 40).unwrap();
        let slope = r.slope.unwrap();
        assert!((slope + 2f64.ln()).abs() < 1e-9, "{slope}");
        // e_n = 2^{-n} exactly
        let e10 = r.samples[10].ln_error.unwrap();
        assert!((e10 + 10.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn non_diagonal_projector() {
        // spectrum {4, 2, 1} in a non-diagonal basis
        let m = ints(&[vec![4, 1, 0], vec![0, 2, 1], vec![0, 0, 1]]);
        let r = projector_convergence_rate(&m, 60).unwrap();
        assert!(r.relative_error().unwrap() < 0.05);
    }

    #[test]
    fn hypotheses_refused() {
        assert!(matches!(
            projector_convergence_rate(&ints(&[vec![2, 1], vec![0, 2]]), 10),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            projector_convergence_rate(&ints(&[vec![0, -1], vec![1, 0]]), 10),
            Err(Error::Hypothesis(_))
        ));
    }
}
