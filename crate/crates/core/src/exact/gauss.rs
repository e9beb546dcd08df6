//! Gaussian integers `Z[i]` and Gaussian rationals `Q(i)`.
//!
//! Complex cohomology blocks are stored as pairs of exact rationals so that
//! Kronecker products of a block with its conjugate stay exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu::base::Gcd;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A Gaussian integer `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: IBig,
    pub im: IBig,
}

impl GaussInt {
    pub fn new(re: impl Into<IBig>, im: impl Into<IBig>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re == IBig::ZERO && self.im == IBig::ZERO
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm(&self) -> IBig {
        &self.re * &self.re + &self.im * &self.im
    }

    /// One of `±1, ±i`.
    pub fn is_unit(&self) -> bool {
        self.norm() == IBig::ONE
    }

    /// Exact quotient; fails if `rhs` does not divide `self` in `Z[i]`.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let n = rhs.norm();
        if n == IBig::ZERO {
            return Err(Error::Singular("division by zero Gaussian integer".into()));
        }
        let num = self * &rhs.conj();
        if &num.re % &n != IBig::ZERO || &num.im % &n != IBig::ZERO {
            return Err(Error::Arithmetic(format!("{rhs} does not divide {self}")));
        }
        Ok(Self {
            re: num.re / &n,
            im: num.im / n,
        })
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}i)", self.re, self.im)
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// A Gaussian rational `re + i·im` with `re, im ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: RBig,
    pub im: RBig,
}

impl GaussRat {
    pub fn new(re: RBig, im: RBig) -> Self {
        Self { re, im }
    }

    pub fn real(re: RBig) -> Self {
        Self { re, im: RBig::ZERO }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self {
            re: RBig::from(re),
            im: RBig::from(im),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re == RBig::ZERO && self.im == RBig::ZERO
    }

    pub fn is_real(&self) -> bool {
        self.im == RBig::ZERO
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> RBig {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n == RBig::ZERO {
            return Err(Error::Singular("inverse of zero".into()));
        }
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / n,
        })
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    /// Exact value of a finite `f64` complex number.
    pub fn from_c64(z: Complex64) -> Result<Self> {
        let re = RBig::try_from(z.re).map_err(|_| Error::Arithmetic(format!("non-finite {z}")))?;
        let im = RBig::try_from(z.im).map_err(|_| Error::Arithmetic(format!("non-finite {z}")))?;
        Ok(Self { re, im })
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> UBig {
        lcm(self.re.denominator(), self.im.denominator())
    }

    /// `self · d` as a Gaussian integer; `d` must clear both denominators.
    pub fn scaled_to_int(&self, d: &UBig) -> GaussInt {
        let d = RBig::from_parts(IBig::from(d.clone()), UBig::ONE);
        let re = (&self.re * &d).to_int().value();
        let im = (&self.im * &d).to_int().value();
        GaussInt { re, im }
    }
}

pub(crate) fn lcm(a: &UBig, b: &UBig) -> UBig {
    if *a == UBig::ZERO || *b == UBig::ZERO {
        return UBig::ZERO;
    }
    let g = a.clone().gcd(b.clone());
    a / g * b
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<&GaussInt> for GaussRat {
    fn from(z: &GaussInt) -> Self {
        Self {
            re: RBig::from(z.re.clone()),
            im: RBig::from(z.im.clone()),
        }
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.is_real() && rhs.is_real() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    /// Panics on a zero divisor; callers check with [`GaussRat::inv`] when it matters.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<RBig> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    RBig::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Canonical `"p/q"` (or `"p"` for integers) form.
pub fn format_rational(r: &RBig) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_exact_division() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, 2);
        let p = &a * &b;
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert!(GaussInt::new(3, 0).exact_div(&GaussInt::new(2, 0)).is_err());
        assert!(GaussInt::new(0, 1).is_unit());
        assert!(!GaussInt::new(1, 1).is_unit());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            RBig::from_parts_signed((-3).into(), 2.into())
        );
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = GaussRat::from_ints(1, 1);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussRat::one());
        assert_eq!((&z * &z.conj()).re, RBig::from(2));
        assert!(GaussRat::zero().inv().is_err());
    }
}
