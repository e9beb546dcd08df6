//! Exact characteristic polynomials.
//!
//! The primary route clears denominators, evaluates `det(tI - N)` at the
//! integer nodes `t = 0..=n` with fraction-free Bareiss elimination over
//! `Z[i]`, and interpolates. Faddeev–LeVerrier is kept as an independent
//! second route; it also yields the adjugate of `xI - M`, which the
//! spectral projector needs.

use dashu::integer::IBig;
use dashu::rational::RBig;

use super::gauss::{GaussInt, GaussRat};
use super::matrix::CMatrix;
use super::poly::Poly;
use crate::error::Result;

/// `χ(x) = re(x) + i·im(x)` with `re, im ∈ Q[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub re: Poly,
    pub im: Poly,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.re.degree().max(self.im.degree())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// A real polynomial with the same root moduli: `χ` itself when real,
    /// otherwise `χ·conj(χ) = re² + im²` (roots of `χ` and their conjugates).
    pub fn real_envelope(&self) -> Poly {
        if self.is_real() {
            self.re.clone()
        } else {
            self.re.mul(&self.re).add(&self.im.mul(&self.im))
        }
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        let get = |p: &Poly| p.coeffs().get(k).cloned().unwrap_or(RBig::ZERO);
        GaussRat::new(get(&self.re), get(&self.im))
    }
}

/// Determinant by fraction-free Bareiss elimination; `a` is row-major `n×n`.
pub fn bareiss_det(mut a: Vec<GaussInt>, n: usize) -> Result<GaussInt> {
    if n == 0 {
        return Ok(GaussInt::one());
    }
    let mut sign_flip = false;
    let mut prev = GaussInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Ok(GaussInt::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let num = &(&pivot * &a[i * n + j]) - &(&aik * &a[k * n + j]);
                a[i * n + j] = num.exact_div(&prev)?;
            }
            a[i * n + k] = GaussInt::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Characteristic polynomial `det(xI - M)` by fraction-free evaluation and interpolation.
pub fn char_poly(m: &CMatrix) -> Result<CharPoly> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(CharPoly {
            re: Poly::one(),
            im: Poly::zero(),
        });
    }
    let (d, entries) = m.to_gauss_int();
    let mut values = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let mut a: Vec<GaussInt> = entries.iter().map(|z| -z.clone()).collect();
        for i in 0..n {
            a[i * n + i] = &a[i * n + i] + &GaussInt::new(t as i64, 0);
        }
        values.push(bareiss_det(a, n)?);
    }
    let re_vals: Vec<RBig> = values.iter().map(|v| RBig::from(v.re.clone())).collect();
    let im_vals: Vec<RBig> = values.iter().map(|v| RBig::from(v.im.clone())).collect();
    let scaled_re = interpolate_on_naturals(&re_vals);
    let scaled_im = interpolate_on_naturals(&im_vals);
    // χ_M(x) = d^{-n} χ_N(d·x)
    let d = RBig::from(IBig::from(d));
    let unscale = |p: &Poly| {
        let mut factor = RBig::ONE / d.pow(n as isize);
        let mut out = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            out.push(c * &factor);
            factor *= &d;
        }
        Poly::new(out)
    };
    Ok(CharPoly {
        re: unscale(&scaled_re),
        im: unscale(&scaled_im),
    })
}

/// Newton forward-difference interpolation through `(k, values[k])`.
fn interpolate_on_naturals(values: &[RBig]) -> Poly {
    let mut diffs = values.to_vec();
    let mut result = Poly::zero();
    let mut basis = Poly::one();
    for k in 0..values.len() {
        if diffs[0] != RBig::ZERO {
            result = result.add(&basis.scale(&diffs[0]));
        }
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
        // basis_{k+1}(y) = basis_k(y) · (y - k) / (k + 1)
        basis = basis
            .mul(&Poly::linear_root(RBig::from(k)))
            .scale(&(RBig::ONE / RBig::from(k + 1)));
    }
    result
}

/// Faddeev–LeVerrier: characteristic coefficients and the adjugate expansion
/// `adj(xI - M) = Σ_j x^j · adjugate[j]`.
pub struct Leverrier {
    pub coeffs: Vec<GaussRat>,
    pub adjugate: Vec<CMatrix>,
}

pub fn faddeev_leverrier(m: &CMatrix) -> Result<Leverrier> {
    let n = m.ensure_square()?;
    let mut coeffs = vec![GaussRat::zero(); n + 1];
    coeffs[n] = GaussRat::one();
    let mut mats = Vec::with_capacity(n);
    let mut prev = CMatrix::zeros(n, n);
    for k in 1..=n {
        let mut mk = m.mul(&prev)?;
        for i in 0..n {
            mk[(i, i)] += &coeffs[n - k + 1];
        }
        let am = m.mul(&mk)?;
        let mut trace = GaussRat::zero();
        for i in 0..n {
            trace += &am[(i, i)];
        }
        coeffs[n - k] = -(&trace * &GaussRat::real(RBig::ONE / RBig::from(k)));
        mats.push(mk.clone());
        prev = mk;
    }
    // mats[k-1] multiplies x^{n-k}
    let adjugate = (0..n).map(|j| mats[n - 1 - j].clone()).collect();
    Ok(Leverrier { coeffs, adjugate })
}
