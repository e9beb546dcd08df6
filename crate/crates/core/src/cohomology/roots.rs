//! Certified isolation of the complex roots of a real polynomial.
//!
//! Approximate roots come from the eigenvalues of the companion matrix of
//! each square-free factor, polished by Newton's method. Each approximation
//! `z_i` is then certified with the residual discs
//! `D(z_i, d·|p(z_i)| / |a_d ∏_{j≠i}(z_i − z_j)|)`: their union holds every root
//! and, when the discs are pairwise disjoint, each holds exactly one. The
//! residual `p(z_i)` is evaluated exactly.
//!
//! Equal-modulus questions cannot be settled by intervals alone. Ties are
//! proven only through exact relations between roots: complex conjugation,
//! negation (via `gcd(S(x), S(−x))`), and a rational squared modulus `r`
//! (via `gcd(S(x), x^d S(r/x))`). Anything else is reported as undecidable.

use std::cell::{OnceCell, RefCell};
use std::cmp::Ordering;
use std::collections::HashMap;

use dashu::base::Abs;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{GaussRat, Poly};

const EPS: f64 = f64::EPSILON;
/// Target disc radius relative to `max(1, |z|)` before refinement stops.
const TARGET_RELATIVE_RADIUS: f64 = 1e-13;
/// Largest denominator tried when guessing a rational squared modulus.
const MAX_MODULUS_DENOMINATOR: u64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    /// Exact disc center.
    pub center_exact: GaussRat,
    pub center: Complex64,
    /// A root of the polynomial lies within this distance of `center`.
    pub radius: f64,
    pub multiplicity: usize,
    /// The exact value when the root is rational.
    pub rational: Option<RBig>,
}

impl CertifiedRoot {
    pub fn modulus(&self) -> f64 {
        self.center.norm()
    }

    /// Rounding slack of `modulus()`; `|re|` is exact for real centers.
    fn modulus_slack(&self) -> f64 {
        if self.center.im == 0.0 {
            0.0
        } else {
            2.0 * EPS * self.modulus()
        }
    }

    pub fn modulus_lo(&self) -> f64 {
        (self.modulus() - self.modulus_slack() - self.radius).max(0.0)
    }

    pub fn modulus_hi(&self) -> f64 {
        self.modulus() + self.modulus_slack() + self.radius
    }

    fn disc(&self) -> Disc {
        Disc {
            center: self.center,
            radius: self.radius * (1.0 + 4.0 * EPS) + 4.0 * EPS * self.modulus(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Disc {
    center: Complex64,
    radius: f64,
}

impl Disc {
    fn intersects(&self, other: &Disc) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }

    fn conj(&self) -> Disc {
        Disc {
            center: self.center.conj(),
            radius: self.radius,
        }
    }

    fn neg(&self) -> Disc {
        Disc {
            center: -self.center,
            radius: self.radius,
        }
    }

    /// Image of the disc under `w ↦ r / w`; `None` if the disc contains 0.
    fn scaled_inverse(&self, r: f64) -> Option<Disc> {
        let m2 = self.center.norm_sqr();
        let denom = m2 - self.radius * self.radius;
        if denom <= 0.0 {
            return None;
        }
        let center = self.center.conj() * (r / denom);
        let radius = r * self.radius / denom;
        Some(Disc {
            center,
            radius: radius * (1.0 + 16.0 * EPS) + 16.0 * EPS * center.norm(),
        })
    }
}

/// All distinct roots of a real polynomial, with multiplicities.
pub struct RootSet {
    radical: Poly,
    roots: Vec<CertifiedRoot>,
    negation_members: OnceCell<Vec<bool>>,
    modulus_members: RefCell<HashMap<RBig, Vec<bool>>>,
}

impl RootSet {
    pub fn isolate(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Arithmetic("cannot isolate roots of the zero polynomial".into()));
        }
        let mut roots = Vec::new();
        let mut radical = Poly::one();
        for (factor, multiplicity) in p.squarefree_decomposition() {
            for disc in isolate_squarefree(&factor)? {
                roots.push(CertifiedRoot { multiplicity, ..disc });
            }
            radical = radical.mul(&factor);
        }
        let discs: Vec<Disc> = roots.iter().map(CertifiedRoot::disc).collect();
        for i in 0..discs.len() {
            for j in i + 1..discs.len() {
                if discs[i].intersects(&discs[j]) {
                    return Err(Error::Undecidable(format!(
                        "root discs around {} and {} overlap",
                        roots[i].center, roots[j].center
                    )));
                }
            }
        }
        Ok(Self {
            radical,
            roots,
            negation_members: OnceCell::new(),
            modulus_members: RefCell::new(HashMap::new()),
        })
    }

    pub fn roots(&self) -> &[CertifiedRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Total number of roots counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Index of a root of largest modulus (by disc center).
    pub fn top(&self) -> Option<usize> {
        (0..self.roots.len()).max_by(|&a, &b| {
            self.roots[a]
                .modulus()
                .partial_cmp(&self.roots[b].modulus())
                .unwrap_or(Ordering::Equal)
                .then(b.cmp(&a))
        })
    }

    /// The unique root disc meeting `probe`.
    fn locate(&self, probe: &Disc) -> Result<usize> {
        let hits: Vec<usize> = (0..self.roots.len())
            .filter(|&j| self.roots[j].disc().intersects(probe))
            .collect();
        match hits.as_slice() {
            [j] => Ok(*j),
            [] => Err(Error::Arithmetic(format!("no root disc meets {:?}", probe.center))),
            _ => Err(Error::Undecidable(format!(
                "several root discs meet the image disc at {}",
                probe.center
            ))),
        }
    }

    /// Index of the root of `self` lying in the disc of `root`.
    pub fn index_of(&self, root: &CertifiedRoot) -> Result<usize> {
        self.locate(&root.disc())
    }

    /// Index of the complex conjugate of root `i`.
    pub fn conjugate_of(&self, i: usize) -> Result<usize> {
        self.locate(&self.roots[i].disc().conj())
    }

    /// Which roots of `S` (the radical) are also roots of the divisor `h`.
    fn members_of(&self, h: &Poly) -> Result<Vec<bool>> {
        let mut members = vec![false; self.roots.len()];
        if h.degree() == 0 {
            return Ok(members);
        }
        let sub = RootSet::isolate(h)?;
        for root in &sub.roots {
            let j = self.locate(&root.disc())?;
            if members[j] {
                return Err(Error::Undecidable("divisor roots are not separated".into()));
            }
            members[j] = true;
        }
        Ok(members)
    }

    /// Index of `−w_i` when it is provably a root.
    pub fn negation_of(&self, i: usize) -> Result<Option<usize>> {
        if self.negation_members.get().is_none() {
            let h = self.radical.gcd(&self.radical.negate_variable());
            let members = self.members_of(&h)?;
            let _ = self.negation_members.set(members);
        }
        let members = self.negation_members.get().expect("initialized above");
        if !members[i] {
            return Ok(None);
        }
        self.locate(&self.roots[i].disc().neg()).map(Some)
    }

    /// Roots `w` of `S` for which `r / w` is also a root.
    fn reversal_members(&self, r: &RBig) -> Result<Vec<bool>> {
        if let Some(m) = self.modulus_members.borrow().get(r) {
            return Ok(m.clone());
        }
        let h = self.radical.gcd(&self.radical.scaled_reversal(r));
        let m = self.members_of(&h)?;
        self.modulus_members.borrow_mut().insert(r.clone(), m.clone());
        Ok(m)
    }

    /// Index of `1 / w_i` when it is provably a root.
    pub fn reciprocal_of(&self, i: usize) -> Result<Option<usize>> {
        let Some(image) = self.roots[i].disc().scaled_inverse(1.0) else {
            return Ok(None);
        };
        if !self.reversal_members(&RBig::ONE)?[i] {
            return Ok(None);
        }
        self.locate(&image.conj()).map(Some)
    }

    /// A rational `r` with `|w_i|² = r` exactly, if one can be proven.
    pub fn squared_modulus(&self, i: usize) -> Result<Option<RBig>> {
        let root = &self.roots[i];
        if let Some(q) = &root.rational {
            return Ok(Some(q * q));
        }
        let (lo, hi) = (root.modulus_lo(), root.modulus_hi());
        if lo <= 0.0 {
            return Ok(None);
        }
        let (Ok(lo2), Ok(hi2)) = (
            RBig::try_from(lo * lo * (1.0 - 4.0 * EPS)),
            RBig::try_from(hi * hi * (1.0 + 4.0 * EPS)),
        ) else {
            return Ok(None);
        };
        let guess = RBig::simplest_in(lo2, hi2);
        if guess.denominator() > &UBig::from(MAX_MODULUS_DENOMINATOR) || guess <= RBig::ZERO {
            return Ok(None);
        }
        if !self.reversal_members(&guess)?[i] {
            return Ok(None);
        }
        let Some(image) = root.disc().scaled_inverse(guess.to_f64().value()) else {
            return Ok(None);
        };
        // r / w_i is a root; it equals conj(w_i) when both sit in the same disc.
        if self.locate(&image)? == self.conjugate_of(i)? {
            Ok(Some(guess))
        } else {
            Ok(None)
        }
    }

    /// Exact comparison of `|w_i|` and `|w_j|`.
    pub fn cmp_modulus(&self, i: usize, j: usize) -> Result<Ordering> {
        if i == j {
            return Ok(Ordering::Equal);
        }
        let (a, b) = (&self.roots[i], &self.roots[j]);
        if a.modulus_hi() < b.modulus_lo() {
            return Ok(Ordering::Less);
        }
        if b.modulus_hi() < a.modulus_lo() {
            return Ok(Ordering::Greater);
        }
        if let (Some(p), Some(q)) = (&a.rational, &b.rational) {
            return Ok(p.clone().abs().cmp(&q.clone().abs()));
        }
        let conj_i = self.conjugate_of(i)?;
        if conj_i == j {
            return Ok(Ordering::Equal);
        }
        if self.negation_of(i)? == Some(j) || self.negation_of(conj_i)? == Some(j) {
            return Ok(Ordering::Equal);
        }
        if let (Some(p), Some(q)) = (self.squared_modulus(i)?, self.squared_modulus(j)?) {
            return Ok(p.cmp(&q));
        }
        Err(Error::Undecidable(format!(
            "moduli of roots {} and {} agree to within {:.1e}",
            a.center,
            b.center,
            a.radius + b.radius
        )))
    }

    /// Whether `|w_i| = 1` exactly; errors when the disc straddles the unit circle unprovably.
    pub fn on_unit_circle(&self, i: usize) -> Result<bool> {
        let r = &self.roots[i];
        if r.modulus_hi() < 1.0 || r.modulus_lo() > 1.0 {
            return Ok(false);
        }
        match self.squared_modulus(i)? {
            Some(m) => Ok(m == RBig::ONE),
            None => Err(Error::Undecidable(format!("cannot decide whether |{}| = 1", r.center))),
        }
    }
}

/// Certified discs for the roots of a square-free polynomial.
fn isolate_squarefree(f: &Poly) -> Result<Vec<CertifiedRoot>> {
    let d = f.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        let c = f.coeffs();
        let q = -(&c[0] / &c[1]);
        let center_exact = GaussRat::real(q.clone());
        let center = center_exact.to_c64();
        let err = (RBig::try_from(center.re).expect("finite") - &q).abs().to_f64().value();
        return Ok(vec![CertifiedRoot {
            center_exact,
            center,
            radius: err * (1.0 + 4.0 * EPS),
            multiplicity: 1,
            rational: Some(q),
        }]);
    }
    let monic = f.monic();
    let approx = polish(&monic, initial_roots(&monic));
    let mut centers: Vec<GaussRat> = approx.iter().map(|&z| GaussRat::from_c64(z)).collect::<Result<_>>()?;
    let mut bits = 96u32;
    for _ in 0..6 {
        let radii = smith_radii(&monic, &centers)?;
        let good = centers
            .iter()
            .zip(&radii)
            .all(|(c, r)| r.is_finite() && *r <= TARGET_RELATIVE_RADIUS * c.to_c64().norm().max(1.0));
        if good {
            return Ok(assemble(f, centers, radii));
        }
        centers = refine_exact(&monic, &centers, bits);
        bits *= 2;
    }
    let radii = smith_radii(&monic, &centers)?;
    if radii.iter().any(|r| !r.is_finite()) {
        return Err(Error::Undecidable("root approximations collide".into()));
    }
    Ok(assemble(f, centers, radii))
}

fn assemble(f: &Poly, centers: Vec<GaussRat>, radii: Vec<f64>) -> Vec<CertifiedRoot> {
    centers
        .into_iter()
        .zip(radii)
        .map(|(center_exact, radius)| {
            let root = CertifiedRoot {
                center: center_exact.to_c64(),
                center_exact,
                radius,
                multiplicity: 1,
                rational: None,
            };
            recognize_rational(f, &root).unwrap_or(root)
        })
        .collect()
}

/// The exact root when the disc holds a small-denominator rational root of `f`.
fn recognize_rational(f: &Poly, root: &CertifiedRoot) -> Option<CertifiedRoot> {
    if root.center.im.abs() > root.radius {
        return None;
    }
    let width = root.radius + 4.0 * EPS * root.center.re.abs();
    let lo = RBig::try_from(root.center.re - width).ok()?;
    let hi = RBig::try_from(root.center.re + width).ok()?;
    let q = RBig::simplest_in(lo, hi);
    if q.denominator() > &UBig::from(MAX_MODULUS_DENOMINATOR) || !f.is_root(&q) {
        return None;
    }
    let center = q.to_f64().value();
    let err = (RBig::try_from(center).ok()? - &q).abs().to_f64().value();
    Some(CertifiedRoot {
        center_exact: GaussRat::real(q.clone()),
        center: Complex64::new(center, 0.0),
        radius: err * (1.0 + 4.0 * EPS),
        multiplicity: 1,
        rational: Some(q),
    })
}

fn initial_roots(monic: &Poly) -> Vec<Complex64> {
    let d = monic.degree();
    let a = monic.to_f64_coeffs();
    let companion = DMatrix::<f64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -a[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig: Vec<Complex64> = companion.complex_eigenvalues().iter().copied().collect();
    if eig.len() == d && eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        eig
    } else {
        durand_kerner(&a)
    }
}

fn durand_kerner(a: &[f64]) -> Vec<Complex64> {
    let d = a.len() - 1;
    let bound = 1.0 + a[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..d {
            let num = horner_c64(a, z[i]);
            let den = (0..d)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if den.norm() > 0.0 {
                z[i] -= num / den;
            }
        }
        if z.iter()
            .zip(&prev)
            .all(|(a, b)| (a - b).norm() <= 1e-15 * a.norm().max(1.0))
        {
            break;
        }
    }
    z
}

fn horner_c64(a: &[f64], z: Complex64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn polish(monic: &Poly, mut z: Vec<Complex64>) -> Vec<Complex64> {
    let a = monic.to_f64_coeffs();
    let da: Vec<f64> = a.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    for zi in &mut z {
        for _ in 0..8 {
            let p = horner_c64(&a, *zi);
            let dp = horner_c64(&da, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let next = *zi - step;
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            *zi = next;
            if step.norm() <= EPS * zi.norm() {
                break;
            }
        }
    }
    z
}

/// Newton steps in exact arithmetic, rounding centers to `bits` fractional bits.
fn refine_exact(monic: &Poly, centers: &[GaussRat], bits: u32) -> Vec<GaussRat> {
    let deriv = monic.derivative();
    centers
        .iter()
        .map(|z| {
            let mut z = z.clone();
            for _ in 0..3 {
                let dp = deriv.eval_complex(&z);
                let Ok(inv) = dp.inv() else { break };
                let step = &monic.eval_complex(&z) * &inv;
                z = GaussRat::new(
                    round_dyadic(&(&z.re - &step.re), bits),
                    round_dyadic(&(&z.im - &step.im), bits),
                );
            }
            z
        })
        .collect()
}

fn round_dyadic(x: &RBig, bits: u32) -> RBig {
    let scale = IBig::ONE << bits as usize;
    let scaled = (x * RBig::from(scale.clone())).round();
    RBig::from_parts_signed(scaled, scale)
}

/// Residual radii `d·|p(z_i)| / ∏_{j≠i}|z_i − z_j|` for a monic square-free `p`,
/// rounded outward.
fn smith_radii(monic: &Poly, centers: &[GaussRat]) -> Result<Vec<f64>> {
    let d = centers.len();
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let residual = monic.eval_complex(&centers[i]).norm();
        let residual = residual.to_f64().value().sqrt() * (1.0 + 8.0 * EPS);
        let mut denom_sq = RBig::ONE;
        for j in 0..d {
            if j != i {
                denom_sq *= (&centers[i] - &centers[j]).norm();
            }
        }
        if denom_sq == RBig::ZERO {
            radii.push(f64::INFINITY);
            continue;
        }
        let denom = denom_sq.to_f64().value().sqrt() * (1.0 - 8.0 * EPS);
        let r = d as f64 * residual / denom;
        radii.push(if residual == 0.0 { 0.0 } else { r * (1.0 + 8.0 * EPS) });
    }
    Ok(radii)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map_polynomial() {
        // (x - 1)^2 (x^2 - 7x + 1): roots 1 (double), φ^4, φ^-4
        let p = Poly::from_ints(&[1, -9, 16, -9, 1]);
        let set = RootSet::isolate(&p).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set.degree(), 4);
        let top = set.top().unwrap();
        let phi4 = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        assert!((set.roots()[top].center.re - phi4).abs() < 1e-12);
        assert!(set.roots()[top].radius < 1e-12);
        let one = set.roots().iter().position(|r| r.multiplicity == 2).unwrap();
        assert_eq!(set.roots()[one].rational, Some(RBig::ONE));
    }

    #[test]
    fn conjugate_pair_tie_is_exact() {
        let set = RootSet::isolate(&Poly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(set.cmp_modulus(0, 1).unwrap(), Ordering::Equal);
        assert!(set.on_unit_circle(0).unwrap());
    }

    #[test]
    fn negation_tie_for_quadratic_irrationals() {
        // x^2 - 2: ±√2 are real with equal modulus, not conjugates
        let set = RootSet::isolate(&Poly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(set.cmp_modulus(0, 1).unwrap(), Ordering::Equal);
        assert_eq!(set.squared_modulus(0).unwrap(), Some(RBig::from(2)));
    }

    #[test]
    fn salem_unit_circle_conjugates() {
        // Lehmer's polynomial: eight roots on the unit circle, one reciprocal pair
        let p = Poly::from_ints(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let set = RootSet::isolate(&p).unwrap();
        let on_circle = (0..set.len()).filter(|&i| set.on_unit_circle(i).unwrap()).count();
        assert_eq!(on_circle, 8);
        let top = set.top().unwrap();
        assert!((set.roots()[top].modulus() - 1.176_280_818_259_917_5).abs() < 1e-12);
    }

    #[test]
    fn distinct_moduli_ordering() {
        let set = RootSet::isolate(&Poly::from_ints(&[6, -5, 1])).unwrap();
        let (a, b) = (0, 1);
        let ord = set.cmp_modulus(a, b).unwrap();
        assert_ne!(ord, Ordering::Equal);
    }
}
