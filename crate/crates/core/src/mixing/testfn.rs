//! Real trigonometric polynomials on `R⁴/Z⁴`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Frequency = [i64; 4];

/// Supports up to this sup-norm radius are evaluated from per-coordinate power tables.
const TABLE_RADIUS: i64 = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    pub label: String,
    /// Coefficients of `e^{2πi ξ·x}` for `ξ ≠ 0`.
    coeffs: BTreeMap<Frequency, Complex64>,
    pub mean: f64,
    /// Declared Hölder exponent in `[0, 2]`.
    pub holder_beta: f64,
    radius: i64,
}

fn negate(xi: &Frequency) -> Frequency {
    xi.map(|x| -x)
}

fn sup_norm(xi: &Frequency) -> i64 {
    xi.iter().map(|x| x.abs()).max().unwrap_or(0)
}

fn euclid_sq(xi: &Frequency) -> f64 {
    xi.iter().map(|&x| (x as f64) * (x as f64)).sum()
}

impl TestFunction {
    /// Builds a function from coefficients on one of each pair `±ξ`; the
    /// partner coefficients are filled in as conjugates.
    pub fn from_half(
        label: impl Into<String>,
        mean: f64,
        holder_beta: f64,
        half: impl IntoIterator<Item = (Frequency, Complex64)>,
    ) -> Result<Self> {
        if !(0.0..=2.0).contains(&holder_beta) {
            return Err(Error::Domain(format!("Hölder exponent {holder_beta} outside [0, 2]")));
        }
        let mut coeffs = BTreeMap::new();
        for (xi, c) in half {
            if xi == [0; 4] {
                return Err(Error::Domain("the zero frequency is the mean".into()));
            }
            if coeffs.contains_key(&xi) {
                return Err(Error::Domain(format!("frequency {xi:?} given twice")));
            }
            let partner = negate(&xi);
            coeffs.insert(partner, c.conj());
            coeffs.insert(xi, c);
        }
        let radius = coeffs.keys().map(sup_norm).max().unwrap_or(0);
        Ok(Self {
            label: label.into(),
            coeffs,
            mean,
            holder_beta,
            radius,
        })
    }

    /// `cos(2π ξ·x)`.
    pub fn cosine(xi: Frequency) -> Result<Self> {
        Self::from_half(format!("cos{xi:?}"), 0.0, 2.0, [(xi, Complex64::new(0.5, 0.0))])
    }

    pub fn constant(c: f64) -> Self {
        Self {
            label: format!("const({c})"),
            coeffs: BTreeMap::new(),
            mean: c,
            holder_beta: 2.0,
            radius: 0,
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Frequency, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, xi: &Frequency) -> Complex64 {
        self.coeffs.get(xi).copied().unwrap_or_default()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest `|ξ|∞` in the support.
    pub fn support_radius(&self) -> i64 {
        self.radius
    }

    /// The same function multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            label: self.label.clone(),
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * factor)).collect(),
            mean: self.mean * factor,
            holder_beta: self.holder_beta,
            radius: self.radius,
        }
    }

    /// `(Σ_{ξ≠0} |c_ξ|²)^{1/2}`, the L² norm of the centered part.
    pub fn centered_l2(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_c0_bound(&self) -> f64 {
        self.mean.abs() + self.coeffs.values().map(|c| c.norm()).sum::<f64>()
    }

    pub fn norm_c2_bound(&self) -> f64 {
        self.mean.abs()
            + self
                .coeffs
                .iter()
                .map(|(xi, c)| (1.0 + 4.0 * PI * PI * euclid_sq(xi)) * c.norm())
                .sum::<f64>()
    }

    /// `‖·‖_{C⁰}^{1−β/2} ‖·‖_{C²}^{β/2}`.
    pub fn norm_holder_bound_at(&self, beta: f64) -> f64 {
        let (c0, c2) = (self.norm_c0_bound(), self.norm_c2_bound());
        if beta == 0.0 {
            return c0;
        }
        if beta == 2.0 {
            return c2;
        }
        c0.powf(1.0 - beta / 2.0) * c2.powf(beta / 2.0)
    }

    pub fn norm_holder_bound(&self) -> f64 {
        self.norm_holder_bound_at(self.holder_beta)
    }

    /// Value at the dyadic point `u / 2⁶⁴`.
    pub fn eval_dyadic(&self, u: &[u64; 4]) -> f64 {
        let r = self.radius;
        if r > TABLE_RADIUS {
            return self.eval_direct(u);
        }
        let r = r as usize;
        // powers[i][k + r] = e^{2πi k u_i / 2⁶⁴} for |k| ≤ r
        let mut powers = [[Complex64::new(1.0, 0.0); 2 * TABLE_RADIUS as usize + 1]; 4];
        for (row, &ui) in powers.iter_mut().zip(u) {
            let base = Complex64::cis(turns(ui));
            for k in 1..=r {
                row[r + k] = row[r + k - 1] * base;
                row[r - k] = row[r + k].conj();
            }
        }
        let mut acc = self.mean;
        for (xi, c) in self.coeffs.range([0, 0, 0, 1]..) {
            let z = (0..4).fold(Complex64::new(1.0, 0.0), |z, i| {
                z * powers[i][(xi[i] + r as i64) as usize]
            });
            acc += 2.0 * (c * z).re;
        }
        acc
    }

    /// Phases from the exact integer pairing `ξ·u mod 2⁶⁴`.
    fn eval_direct(&self, u: &[u64; 4]) -> f64 {
        let mut acc = self.mean;
        for (xi, c) in self.coeffs.range([0, 0, 0, 1]..) {
            // only ξ > 0; the conjugate partner doubles the real part
            let phase = (0..4).fold(0u64, |p, i| p.wrapping_add((xi[i] as u64).wrapping_mul(u[i])));
            let (s, co) = turns(phase).sin_cos();
            acc += 2.0 * (c.re * co - c.im * s);
        }
        acc
    }
}

/// `2π u / 2⁶⁴`.
fn turns(u: u64) -> f64 {
    2.0 * PI * (u as f64 / 18_446_744_073_709_551_616.0)
}

/// Uniform double in `[0, 1)` from the top 53 bits.
pub(crate) fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Random phases on every `0 < |ξ|∞ ≤ radius` with amplitude `|ξ|∞^{−(2+β)}`.
pub fn make_holder_function(beta: f64, radius: i64, seed: u64) -> Result<TestFunction> {
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(Error::Domain(format!("Hölder exponent {beta} outside (0, 2]")));
    }
    if radius < 1 {
        return Err(Error::Domain(format!("radius {radius} < 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut half = Vec::new();
    let r = radius;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    let xi = [a, b, c, d];
                    if xi <= [0; 4] {
                        continue;
                    }
                    let amp = (sup_norm(&xi) as f64).powf(-(2.0 + beta));
                    let theta = unit_interval(rng.next_u64()) * 2.0 * PI;
                    half.push((xi, Complex64::from_polar(amp, theta)));
                }
            }
        }
    }
    TestFunction::from_half(
        format!("holder(beta={beta},radius={radius},seed={seed})"),
        0.0,
        beta,
        half,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_one_support() {
        let f = make_holder_function(1.0, 1, 7).unwrap();
        assert_eq!(f.support_len(), 80);
        assert!(f.coeffs().values().all(|c| (c.norm() - 1.0).abs() < 1e-15));
        for (xi, c) in f.coeffs() {
            assert_eq!(f.coeff(&negate(xi)), c.conj());
        }
        assert_eq!(make_holder_function(1.0, 1, 7).unwrap(), f);
        assert_ne!(make_holder_function(1.0, 1, 8).unwrap(), f);
    }

    #[test]
    fn norm_endpoints() {
        let f = make_holder_function(2.0, 2, 1).unwrap();
        assert_eq!(f.norm_holder_bound(), f.norm_c2_bound());
        assert!(f.norm_c0_bound() <= f.norm_c2_bound());
        assert!(make_holder_function(0.0, 1, 1).is_err());
        assert!(make_holder_function(1.0, 0, 1).is_err());
    }

    #[test]
    fn dyadic_evaluation() {
        let f = TestFunction::cosine([1, 0, 0, 0]).unwrap();
        assert!((f.eval_dyadic(&[0, 0, 0, 0]) - 1.0).abs() < 1e-15);
        assert!((f.eval_dyadic(&[1 << 63, 0, 0, 0]) + 1.0).abs() < 1e-15);
        assert!(f.eval_dyadic(&[1 << 62, 5, 0, 0]).abs() < 1e-15);
        assert_eq!(TestFunction::constant(3.0).eval_dyadic(&[9, 9, 9, 9]), 3.0);
        let g = make_holder_function(1.5, 2, 4).unwrap();
        let far = TestFunction::cosine([40, -3, 0, 1]).unwrap();
        for u in [[1u64 << 61, 12345, u64::MAX, 7], [3, 1 << 40, 99, 1 << 63]] {
            assert!((g.eval_dyadic(&u) - g.eval_direct(&u)).abs() < 1e-12);
            assert!((far.eval_dyadic(&u) - far.eval_direct(&u)).abs() < 1e-12);
        }
    }
}
