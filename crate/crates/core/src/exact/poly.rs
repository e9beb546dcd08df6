//! Univariate polynomials over `Q`, coefficients stored low degree first.

use std::fmt;

use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::gauss::{lcm, GaussRat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<RBig>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<RBig>) -> Self {
        while coeffs.last().is_some_and(|c| *c == RBig::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| RBig::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `x - a`
    pub fn linear_root(a: RBig) -> Self {
        Self::new(vec![-a, RBig::ONE])
    }

    pub fn coeffs(&self) -> &[RBig] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> RBig {
        self.coeffs.last().cloned().unwrap_or(RBig::ZERO)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or(RBig::ZERO);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or(RBig::ZERO);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&RBig::NEG_ONE))
    }

    pub fn scale(&self, c: &RBig) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![RBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == RBig::ZERO {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead_inv = RBig::ONE / divisor.lead();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![RBig::ZERO; self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c != RBig::ZERO {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = RBig::ONE / self.lead();
        self.scale(&l)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), rhs.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * RBig::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &RBig) -> RBig {
        self.coeffs.iter().rev().fold(RBig::ZERO, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: &GaussRat) -> GaussRat {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRat::zero(), |acc, c| &(&acc * z) + &GaussRat::real(c.clone()))
    }

    /// `P(-x)`
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^d · P(r/x)`: its roots are `r / w` for the nonzero roots `w` of `P`.
    pub fn scaled_reversal(&self, r: &RBig) -> Self {
        let d = self.degree();
        let mut out = Vec::with_capacity(d + 1);
        let mut rpow = RBig::ONE;
        let mut powers = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            powers.push(rpow.clone());
            rpow *= r;
        }
        for k in 0..=d {
            // coefficient of x^k is c_{d-k} · r^{d-k}
            out.push(&self.coeffs[d - k] * &powers[d - k]);
        }
        Self::new(out)
    }

    /// Yun's square-free decomposition: `P = c · ∏ f_m^m`, returning the
    /// non-constant `(f_m, m)` with each `f_m` monic, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), m));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    /// The monic square-free part (product of distinct irreducible factors).
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer coefficients of a positive rational multiple of `self`.
    pub fn integer_coeffs(&self) -> Vec<IBig> {
        let d = self.coeffs.iter().fold(UBig::ONE, |acc, c| lcm(&acc, c.denominator()));
        let d = RBig::from(IBig::from(d));
        self.coeffs.iter().map(|c| (c * &d).to_int().value()).collect()
    }

    pub fn is_root(&self, x: &RBig) -> bool {
        self.eval(x) == RBig::ZERO
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().value()).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != RBig::ZERO)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (x-1)^2 (x^2 - 7x + 1)
        let p = Poly::from_ints(&[1, -2, 1]).mul(&Poly::from_ints(&[1, -7, 1]));
        assert_eq!(p, Poly::from_ints(&[1, -9, 16, -9, 1]));
        let g = p.gcd(&p.derivative());
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
        let (q, r) = p.div_rem(&Poly::from_ints(&[1, -7, 1]));
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-2)^3 (x+1)^2 (x^2+1)
        let p = Poly::from_ints(&[-2, 1])
            .mul(&Poly::from_ints(&[-2, 1]))
            .mul(&Poly::from_ints(&[-2, 1]))
            .mul(&Poly::from_ints(&[1, 1]))
            .mul(&Poly::from_ints(&[1, 1]))
            .mul(&Poly::from_ints(&[1, 0, 1]))
            .scale(&RBig::from(5));
        let dec = p.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![
                (Poly::from_ints(&[1, 0, 1]), 1),
                (Poly::from_ints(&[1, 1]), 2),
                (Poly::from_ints(&[-2, 1]), 3)
            ]
        );
        assert_eq!(p.squarefree_part().degree(), 4);
    }

    #[test]
    fn reversal_and_negation() {
        let p = Poly::from_ints(&[6, -5, 1]); // roots 2, 3
        let rev = p.scaled_reversal(&RBig::from(6)); // roots 3, 2
        assert!(rev.is_root(&RBig::from(3)) && rev.is_root(&RBig::from(2)));
        let neg = p.negate_variable();
        assert!(neg.is_root(&RBig::from(-2)));
        assert_eq!(p.integer_coeffs(), vec![IBig::from(6), IBig::from(-5), IBig::ONE]);
    }
}
