//! Spectral radius and spectral hypothesis checks on exact matrices.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use super::roots::RootSet;
use crate::error::{Error, Result};
use crate::exact::{char_poly, CMatrix, CharPoly};

/// Required certification: error radius at most this times `max(1, ρ)`.
pub const RADIUS_TOLERANCE: f64 = 1e-9;
/// Number of powers used by the growth fallback of the Jordan test.
pub const GROWTH_STEPS: usize = 200;
/// Log-log slopes below this count as bounded growth.
pub const GROWTH_SLOPE_TOLERANCE: f64 = 0.25;

/// Certified (or, for the zero matrix, exact) spectral radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralRadius {
    pub radius: f64,
    pub error: f64,
}

/// Whether a zero spectral radius is an acceptable answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroRadius {
    Allow,
    Reject,
}

/// Characteristic polynomial together with isolated roots of a real polynomial
/// sharing its root moduli.
pub struct Spectrum {
    pub char_poly: CharPoly,
    pub roots: RootSet,
}

impl Spectrum {
    pub fn of(m: &CMatrix) -> Result<Self> {
        let chi = char_poly(m)?;
        let roots = RootSet::isolate(&chi.real_envelope())?;
        Ok(Self { char_poly: chi, roots })
    }

    /// Spectrum of a real matrix, whose root multiplicities are those of the eigenvalues.
    pub fn of_real(m: &CMatrix) -> Result<Self> {
        if !m.is_real() {
            return Err(Error::NonReal(format!("{}x{} block", m.rows(), m.cols())));
        }
        Self::of(m)
    }

    /// Index of a root of provably maximal modulus.
    pub fn top(&self) -> Result<Option<usize>> {
        let Some(mut best) = self.roots.top() else {
            return Ok(None);
        };
        for j in 0..self.roots.len() {
            if self.roots.cmp_modulus(j, best)? == Ordering::Greater {
                best = j;
            }
        }
        Ok(Some(best))
    }

    pub fn radius(&self) -> Result<SpectralRadius> {
        let roots = self.roots.roots();
        if roots.is_empty() {
            return Ok(SpectralRadius {
                radius: 0.0,
                error: 0.0,
            });
        }
        let radius = roots.iter().map(|r| r.modulus()).fold(0.0, f64::max);
        let hi = roots.iter().map(|r| r.modulus_hi()).fold(0.0, f64::max);
        let lo = roots.iter().map(|r| r.modulus_lo()).fold(0.0, f64::max);
        let error = (hi - radius).max(radius - lo);
        if error > RADIUS_TOLERANCE * radius.max(1.0) {
            return Err(Error::Undecidable(format!(
                "spectral radius {radius} certified only to {error:.3e}"
            )));
        }
        Ok(SpectralRadius { radius, error })
    }

    /// Root moduli with multiplicities, sorted decreasingly.
    pub fn moduli(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots
            .roots()
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.modulus(), r.multiplicity))
            .collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    pub fn eigenvalues(&self) -> Vec<(Complex64, usize)> {
        self.roots.roots().iter().map(|r| (r.center, r.multiplicity)).collect()
    }

    /// Indices of the roots whose modulus provably equals the maximum.
    fn top_group(&self) -> Result<Vec<usize>> {
        let Some(top) = self.top()? else {
            return Ok(Vec::new());
        };
        let mut group = Vec::new();
        for j in 0..self.roots.len() {
            if self.roots.cmp_modulus(j, top)? == Ordering::Equal {
                group.push(j);
            }
        }
        Ok(group)
    }
}

pub fn spectral_radius(m: &CMatrix, zero: ZeroRadius) -> Result<SpectralRadius> {
    m.ensure_square()?;
    let rho = Spectrum::of(m)?.radius()?;
    if zero == ZeroRadius::Reject && rho.radius == 0.0 {
        return Err(Error::Singular("nilpotent block has spectral radius 0".into()));
    }
    Ok(rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Dominance {
    pub unique: bool,
    pub dominant: f64,
    /// Largest modulus after removing one copy of the dominant root.
    pub second_modulus: f64,
}

pub fn check_unique_dominant(m: &CMatrix) -> Result<Dominance> {
    dominance(&Spectrum::of_real(m)?)
}

pub fn dominance(spec: &Spectrum) -> Result<Dominance> {
    let group = spec.top_group()?;
    let Some(&top) = group.first() else {
        return Err(Error::Domain("empty matrix has no dominant eigenvalue".into()));
    };
    let roots = spec.roots.roots();
    let dominant = roots[top].modulus();
    let count: usize = group.iter().map(|&j| roots[j].multiplicity).sum();
    let second_modulus = if count > 1 {
        dominant
    } else {
        (0..roots.len())
            .filter(|j| !group.contains(j))
            .map(|j| roots[j].modulus())
            .fold(0.0, f64::max)
    };
    Ok(Dominance {
        unique: count == 1,
        dominant,
        second_modulus,
    })
}

/// The step of the Jordan test that reached the decision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum MultiplicityBranch {
    /// Every maximal-modulus root is simple.
    SimpleRoots,
    /// `dim ker s(M) = m·deg s` for each square-free factor `s` of multiplicity `m`
    /// carrying a maximal root.
    ExactKernel,
    /// Log-log slope of `‖Mⁿ‖/ρⁿ` for `n ≤ 200`.
    Growth { slope: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MultiplicityCheck {
    pub holds: bool,
    #[serde(flatten)]
    pub branch: MultiplicityBranch,
}

pub fn check_multiplicity_one(m: &CMatrix) -> Result<MultiplicityCheck> {
    multiplicity_one(m, &Spectrum::of_real(m)?)
}

pub fn multiplicity_one(m: &CMatrix, spec: &Spectrum) -> Result<MultiplicityCheck> {
    let group = spec.top_group()?;
    let roots = spec.roots.roots();
    if group.iter().all(|&j| roots[j].multiplicity == 1) {
        return Ok(MultiplicityCheck {
            holds: true,
            branch: MultiplicityBranch::SimpleRoots,
        });
    }
    let mut semisimple = true;
    for (factor, mult) in spec.char_poly.re.squarefree_decomposition() {
        if mult == 1 {
            continue;
        }
        if !group.iter().any(|&j| roots[j].multiplicity == mult) {
            continue;
        }
        let nullity = m.rows() - m.eval_poly(factor.coeffs())?.rank();
        if nullity != mult * factor.degree() {
            semisimple = false;
            break;
        }
    }
    if semisimple {
        return Ok(MultiplicityCheck {
            holds: true,
            branch: MultiplicityBranch::ExactKernel,
        });
    }
    let slope = growth_slope(m, roots[group[0]].modulus());
    let branch = MultiplicityBranch::Growth { slope };
    if slope <= GROWTH_SLOPE_TOLERANCE {
        Ok(MultiplicityCheck { holds: true, branch })
    } else if slope >= 1.0 - GROWTH_SLOPE_TOLERANCE {
        Ok(MultiplicityCheck { holds: false, branch })
    } else {
        Err(Error::Undecidable(format!(
            "growth slope {slope:.3} near the threshold 1/2"
        )))
    }
}

/// Least-squares slope of `log ‖Mⁿ/ρⁿ‖_max` against `log n` over `10 ≤ n ≤ 200`.
fn growth_slope(m: &CMatrix, rho: f64) -> f64 {
    let n = m.rows();
    let a: Vec<Complex64> = m.to_c64().into_iter().map(|z| z / rho).collect();
    let mut p = a.clone();
    let mut points = Vec::new();
    for step in 1..=GROWTH_STEPS {
        if step >= 10 {
            let norm = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
            points.push(((step as f64).ln(), norm.ln()));
        }
        let mut next = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let pik = p[i * n + k];
                if pik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += pik * a[k * n + j];
                }
            }
        }
        p = next;
    }
    least_squares_slope(&points)
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Whether the moduli are `{ρ, 1/ρ, 1, …, 1}` with `ρ > 1`.
pub fn check_surface_spectrum(m: &CMatrix) -> Result<bool> {
    let spec = Spectrum::of_real(m)?;
    let Some(top) = spec.top()? else {
        return Err(Error::Domain("empty block".into()));
    };
    let set = &spec.roots;
    let roots = set.roots();
    if roots[top].modulus_lo() <= 1.0 {
        return Err(Error::Hypothesis("surface spectrum check needs d_1 > 1".into()));
    }
    if roots[top].multiplicity != 1 {
        return Ok(false);
    }
    let Some(partner) = set.reciprocal_of(top)? else {
        return Ok(false);
    };
    if roots[partner].multiplicity != 1 {
        return Ok(false);
    }
    for j in 0..roots.len() {
        if j != top && j != partner && !set.on_unit_circle(j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[Vec<i64>]) -> CMatrix {
        CMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn golden_ratio_radius() {
        let r = spectral_radius(&ints(&[vec![0, 1], vec![1, 1]]), ZeroRadius::Reject).unwrap();
        assert!((r.radius - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(r.error <= 1e-9);
    }

    #[test]
    fn identity_and_zero() {
        let r = spectral_radius(&CMatrix::identity(1), ZeroRadius::Reject).unwrap();
        assert_eq!((r.radius, r.error), (1.0, 0.0));
        assert!(spectral_radius(&CMatrix::zeros(2, 2), ZeroRadius::Reject).is_err());
        let nil = ints(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(spectral_radius(&nil, ZeroRadius::Allow).unwrap().radius, 0.0);
        assert!(spectral_radius(&ints(&[vec![1, 2]]), ZeroRadius::Allow).is_err());
    }

    #[test]
    fn dominance_examples() {
        let d = check_unique_dominant(&ints(&[vec![2, 0], vec![0, 1]])).unwrap();
        assert!(d.unique);
        assert_eq!(d.second_modulus, 1.0);
        let rot = check_unique_dominant(&ints(&[vec![0, -1], vec![1, 0]])).unwrap();
        assert!(!rot.unique);
        assert!((rot.second_modulus - 1.0).abs() < 1e-15);
        let neg = check_unique_dominant(&ints(&[vec![2, 0], vec![0, -2]])).unwrap();
        assert!(!neg.unique);
    }

    #[test]
    fn jordan_tests() {
        let diag = check_multiplicity_one(&ints(&[vec![3, 0], vec![0, 1]])).unwrap();
        assert_eq!(
            diag,
            MultiplicityCheck {
                holds: true,
                branch: MultiplicityBranch::SimpleRoots
            }
        );
        let jordan = check_multiplicity_one(&ints(&[vec![2, 1], vec![0, 2]])).unwrap();
        assert!(!jordan.holds);
        let id = check_multiplicity_one(&CMatrix::identity(3)).unwrap();
        assert_eq!(id.branch, MultiplicityBranch::ExactKernel);
        assert!(id.holds);
    }

    #[test]
    fn growth_fallback_detects_linear_growth() {
        let slope = growth_slope(&ints(&[vec![2, 1], vec![0, 2]]), 2.0);
        assert!((slope - 1.0).abs() < 0.15, "{slope}");
        let bounded = growth_slope(&ints(&[vec![0, -1], vec![1, 0]]), 1.0);
        assert!(bounded.abs() < 0.05);
    }

    #[test]
    fn surface_spectrum_examples() {
        assert!(!check_surface_spectrum(&ints(&[vec![2, 0], vec![0, 3]])).unwrap());
        assert!(check_surface_spectrum(&ints(&[vec![2, 1], vec![1, 1]])).unwrap());
    }
}
