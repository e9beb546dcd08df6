//! Correlations `C_n = ⟨φ∘fⁿ · ψ⟩ − ⟨φ⟩⟨ψ⟩` against Haar measure on `R⁴/Z⁴`.

use dashu::integer::IBig;
use dashu::rational::RBig;
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::testfn::{Frequency, TestFunction};
use crate::catalog::TorusAutomorphism;
use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 1000;
/// Points per Monte Carlo block; each block draws from its own stream.
pub const BLOCK_SIZE: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "montecarlo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub n: usize,
    pub value: f64,
    pub abs_error: f64,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationSeries {
    pub instance: String,
    pub phi: String,
    pub psi: String,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub entries: Vec<Entry>,
}

fn require_hyperbolic(t: &TorusAutomorphism) -> Result<()> {
    if t.is_hyperbolic() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{} is not hyperbolic", t.label())))
    }
}

/// Exact correlations by frequency transport `ξ ↦ A_realᵀ ξ` in big integers.
///
/// Coefficient products are summed as exact rationals and rounded once, so
/// each value is the correctly rounded correlation of the given polynomials.
pub fn correlation_exact(
    t: &TorusAutomorphism,
    phi: &TestFunction,
    psi: &TestFunction,
    n_max: usize,
) -> Result<CorrelationSeries> {
    require_hyperbolic(t)?;
    let a = t.real_matrix();
    let transpose: Vec<Vec<IBig>> = (0..4).map(|i| (0..4).map(|j| IBig::from(a[j][i])).collect()).collect();
    let support: Vec<(Frequency, Complex64)> = phi.coeffs().iter().map(|(k, v)| (*k, *v)).collect();
    // hits[ξ] lists (n, a_ξ, b_{−ηₙ}) for the transported frequencies that meet ψ
    let hits: Vec<Vec<(usize, Complex64, Complex64)>> = support
        .par_iter()
        .map(|(xi, c)| {
            let mut eta: Vec<IBig> = xi.iter().map(|&x| IBig::from(x)).collect();
            let mut out = Vec::new();
            for n in 0..=n_max {
                if n > 0 {
                    eta = (0..4)
                        .map(|i| (0..4).fold(IBig::ZERO, |acc, j| acc + &transpose[i][j] * &eta[j]))
                        .collect();
                }
                if let Some(b) = negated(&eta).and_then(|k| psi.coeffs().get(&k)) {
                    out.push((n, *c, *b));
                }
            }
            out
        })
        .collect();
    let mut sums = vec![RBig::ZERO; n_max + 1];
    for list in &hits {
        for &(n, c, b) in list {
            sums[n] += exact(c.re) * exact(b.re) - exact(c.im) * exact(b.im);
        }
    }
    let entries = sums
        .iter()
        .enumerate()
        .map(|(n, s)| Entry {
            n,
            value: s.to_f64().value(),
            abs_error: 0.0,
            method: Method::Exact,
        })
        .collect();
    Ok(CorrelationSeries {
        instance: t.label().to_string(),
        phi: phi.label.clone(),
        psi: psi.label.clone(),
        seed: None,
        samples: None,
        entries,
    })
}

fn exact(x: f64) -> RBig {
    RBig::try_from(x).expect("finite coefficient")
}

/// `−η` as a machine frequency, if it fits.
fn negated(eta: &[IBig]) -> Option<Frequency> {
    let mut out = [0i64; 4];
    for (o, e) in out.iter_mut().zip(eta) {
        *o = i64::try_from(e.clone()).ok()?.checked_neg()?;
    }
    Some(out)
}

/// Monte Carlo estimates from `samples` uniform dyadic points of 64 bits.
///
/// Orbits advance by the integer matrix with wrapping `u64` arithmetic, which
/// is exact arithmetic modulo 1 on `2^{-64} Z⁴`. The result depends only on
/// `(seed, samples)`: block `b` draws from stream `b` of the seeded generator
/// and blocks are reduced in order.
pub fn correlation_montecarlo(
    t: &TorusAutomorphism,
    phi: &TestFunction,
    psi: &TestFunction,
    n_max: usize,
    samples: usize,
    seed: u64,
) -> Result<CorrelationSeries> {
    require_hyperbolic(t)?;
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "{samples} samples; at least {MIN_SAMPLES} required"
        )));
    }
    let a = t.real_matrix().map(|row| row.map(|x| x as u64));
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let partials: Vec<Vec<Moments>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut acc = vec![Moments::default(); n_max + 1];
            for _ in 0..count {
                let mut x = [rng.next_u64(), rng.next_u64(), rng.next_u64(), rng.next_u64()];
                let g = psi.eval_dyadic(&x);
                for (n, m) in acc.iter_mut().enumerate() {
                    if n > 0 {
                        x = step(&a, &x);
                    }
                    m.add(phi.eval_dyadic(&x), g);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Moments::default(); n_max + 1];
    for block in &partials {
        for (t, m) in total.iter_mut().zip(block) {
            t.merge(m);
        }
    }
    let entries = total
        .iter()
        .enumerate()
        .map(|(n, m)| {
            let (value, std) = m.centered(samples as f64);
            Entry {
                n,
                value,
                abs_error: 4.0 * std / (samples as f64).sqrt(),
                method: Method::MonteCarlo,
            }
        })
        .collect();
    Ok(CorrelationSeries {
        instance: t.label().to_string(),
        phi: phi.label.clone(),
        psi: psi.label.clone(),
        seed: Some(seed),
        samples: Some(samples),
        entries,
    })
}

fn step(a: &[[u64; 4]; 4], x: &[u64; 4]) -> [u64; 4] {
    let mut y = [0u64; 4];
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = (0..4).fold(0u64, |acc, j| acc.wrapping_add(a[i][j].wrapping_mul(x[j])));
    }
    y
}

/// Raw moments of `(F, G)` sufficient for the centered product and its spread.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    f: f64,
    g: f64,
    ff: f64,
    gg: f64,
    fg: f64,
    ffg: f64,
    fgg: f64,
    ffgg: f64,
}

impl Moments {
    fn add(&mut self, f: f64, g: f64) {
        self.f += f;
        self.g += g;
        self.ff += f * f;
        self.gg += g * g;
        self.fg += f * g;
        self.ffg += f * f * g;
        self.fgg += f * g * g;
        self.ffgg += f * f * g * g;
    }

    fn merge(&mut self, o: &Moments) {
        self.f += o.f;
        self.g += o.g;
        self.ff += o.ff;
        self.gg += o.gg;
        self.fg += o.fg;
        self.ffg += o.ffg;
        self.fgg += o.fgg;
        self.ffgg += o.ffgg;
    }

    /// `(mean(FG) − mean(F)·mean(G), std((F − F̄)(G − Ḡ)))`.
    fn centered(&self, n: f64) -> (f64, f64) {
        let (a, b) = (self.f / n, self.g / n);
        let c = self.fg / n - a * b;
        let second = self.ffgg / n - 2.0 * b * self.ffg / n + b * b * self.ff / n - 2.0 * a * self.fgg / n
            + 4.0 * a * b * self.fg / n
            - 2.0 * a * b * b * self.f / n
            + a * a * self.gg / n
            - 2.0 * a * a * b * self.g / n
            + a * a * b * b;
        let var = (second - c * c).max(0.0);
        (c, var.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gauss_matrix, torus_from_matrix};

    fn cat() -> TorusAutomorphism {
        torus_from_matrix("cat", gauss_matrix([[(2, 0), (1, 0)], [(1, 0), (1, 0)]])).unwrap()
    }

    #[test]
    fn finite_support_pair() {
        let f = TestFunction::cosine([1, 0, 0, 0]).unwrap();
        let s = correlation_exact(&cat(), &f, &f, 30).unwrap();
        assert_eq!(s.entries[0].value, 0.5);
        assert!(s.entries[1..].iter().all(|e| e.value == 0.0 && e.abs_error == 0.0));
    }

    #[test]
    fn single_transport_step() {
        // A_realᵀ e₁ = (2, 0, 1, 0)
        let f = TestFunction::cosine([1, 0, 0, 0]).unwrap();
        let g = TestFunction::cosine([2, 0, 1, 0]).unwrap();
        let s = correlation_exact(&cat(), &f, &g, 10).unwrap();
        for e in &s.entries {
            assert_eq!(e.value, if e.n == 1 { 0.5 } else { 0.0 });
        }
    }

    #[test]
    fn constant_has_no_correlation() {
        let f = TestFunction::cosine([1, 1, 0, 0]).unwrap();
        let c = TestFunction::constant(2.0);
        assert!(correlation_exact(&cat(), &f, &c, 5)
            .unwrap()
            .entries
            .iter()
            .all(|e| e.value == 0.0));
        let mc = correlation_montecarlo(&cat(), &f, &c, 5, 2000, 3).unwrap();
        assert!(mc.entries.iter().all(|e| e.value.abs() <= 4.0 / 2000f64.sqrt()));
    }

    #[test]
    fn montecarlo_is_deterministic_and_checked() {
        let f = TestFunction::cosine([1, 0, 0, 0]).unwrap();
        let a = correlation_montecarlo(&cat(), &f, &f, 3, 5000, 11).unwrap();
        let b = correlation_montecarlo(&cat(), &f, &f, 3, 5000, 11).unwrap();
        assert_eq!(a, b);
        assert!((a.entries[0].value - 0.5).abs() <= a.entries[0].abs_error);
        assert!(correlation_montecarlo(&cat(), &f, &f, 3, 10, 11).is_err());
        let id = torus_from_matrix("id", gauss_matrix([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])).unwrap();
        assert!(matches!(correlation_exact(&id, &f, &f, 3), Err(Error::Hypothesis(_))));
    }
}
