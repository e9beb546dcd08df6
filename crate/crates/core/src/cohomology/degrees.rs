//! Dynamical degrees, the admissible interval for the gap `δ`, and entropy.

use std::cmp::Ordering;

use serde::Serialize;

use super::hodge::HodgeAction;
use super::roots::RootSet;
use super::spectral::{dominance, multiplicity_one, MultiplicityBranch, Spectrum};
use crate::error::{Error, Result};

/// Default relative margin placing `δ₀` just above the second modulus.
pub const DEFAULT_DELTA0_MARGIN: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub label: String,
    pub degrees: Vec<f64>,
    pub radii: Vec<f64>,
    /// First index of the maximal degree.
    pub p: usize,
    /// Last index of the maximal degree.
    pub p_last: usize,
    pub is_unique_peak: bool,
    /// Whether `d_p` is the only eigenvalue of maximal modulus on `H^{p,p}`.
    pub unique_dominant: bool,
    pub second_modulus: f64,
    pub delta_minus_floor: f64,
    pub multiplicity_one: bool,
    pub multiplicity_branch: MultiplicityBranch,
}

impl DegreeProfile {
    pub fn d_p(&self) -> f64 {
        self.degrees[self.p]
    }

    pub fn dim(&self) -> usize {
        self.degrees.len() - 1
    }
}

/// Degrees `d_q = ρ(f* | H^{q,q})` for `q = 0..=dim`.
pub fn degree_profile(h: &HodgeAction) -> Result<DegreeProfile> {
    let k = h.dim();
    let mut spectra = Vec::with_capacity(k + 1);
    let mut degrees = Vec::with_capacity(k + 1);
    let mut radii = Vec::with_capacity(k + 1);
    for q in 0..=k {
        let m = h.require(q, q)?;
        let spec = Spectrum::of_real(m)?;
        let rho = spec.radius()?;
        if rho.radius == 0.0 {
            return Err(Error::Singular(format!("block ({q},{q}) is nilpotent")));
        }
        degrees.push(rho.radius);
        radii.push(rho.error);
        spectra.push(spec);
    }
    let mut best = 0;
    for q in 1..=k {
        if compare_radii(&spectra[q], &spectra[best])? == Ordering::Greater {
            best = q;
        }
    }
    let mut peak = Vec::new();
    for q in 0..=k {
        if compare_radii(&spectra[q], &spectra[best])? == Ordering::Equal {
            peak.push(q);
        }
    }
    let (p, p_last) = (peak[0], *peak.last().expect("peak contains best"));
    let dom = dominance(&spectra[p])?;
    let jordan = multiplicity_one(h.require(p, p)?, &spectra[p])?;
    let below = if p > 0 { degrees[p - 1] } else { 0.0 };
    let above = if p < k { degrees[p + 1] } else { 0.0 };
    Ok(DegreeProfile {
        label: h.label().to_string(),
        degrees,
        radii,
        p,
        p_last,
        is_unique_peak: p == p_last,
        unique_dominant: dom.unique,
        second_modulus: dom.second_modulus,
        delta_minus_floor: below.max(above),
        multiplicity_one: jordan.holds,
        multiplicity_branch: jordan.branch,
    })
}

/// Exact comparison of two spectral radii, resolving overlaps through the
/// roots of the combined square-free polynomial.
fn compare_radii(a: &Spectrum, b: &Spectrum) -> Result<Ordering> {
    let (ia, ib) = (a.top()?.expect("nonempty"), b.top()?.expect("nonempty"));
    let (ra, rb) = (&a.roots.roots()[ia], &b.roots.roots()[ib]);
    if ra.modulus_hi() < rb.modulus_lo() {
        return Ok(Ordering::Less);
    }
    if rb.modulus_hi() < ra.modulus_lo() {
        return Ok(Ordering::Greater);
    }
    let combined = a
        .char_poly
        .real_envelope()
        .mul(&b.char_poly.real_envelope())
        .squarefree_part();
    let set = RootSet::isolate(&combined)?;
    set.cmp_modulus(set.index_of(ra)?, set.index_of(rb)?)
}

/// Data of the admissible open interval `max(δ₊, δ₋) < δ < d_p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapCertificate {
    pub d_p: f64,
    pub p: usize,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub lo: f64,
    pub hi: f64,
    pub hypothesis_unique_max: bool,
    pub hypothesis_multiplicity_one: bool,
    pub nonempty: bool,
}

impl GapCertificate {
    pub fn admits(&self, delta: f64) -> bool {
        self.nonempty && self.lo < delta && delta < self.hi
    }

    /// `δ₀ = δ₊·(1 + margin)`, the measured convergence scale.
    pub fn delta0(&self, margin: f64) -> f64 {
        self.delta_plus * (1.0 + margin)
    }

    /// Reason the interval is empty, if it is.
    pub fn failure(&self) -> Option<String> {
        if !self.hypothesis_unique_max {
            Some(format!(
                "d_p = {} is not the only eigenvalue of maximal modulus",
                self.d_p
            ))
        } else if !self.hypothesis_multiplicity_one {
            Some("a Jordan block at the maximal modulus has size > 1".into())
        } else if !self.nonempty {
            Some(format!("empty interval ({}, {})", self.lo, self.hi))
        } else {
            None
        }
    }
}

pub fn gap_certificate(h: &HodgeAction) -> Result<GapCertificate> {
    certificate_from_profile(&degree_profile(h)?)
}

pub fn certificate_from_profile(profile: &DegreeProfile) -> Result<GapCertificate> {
    if !profile.is_unique_peak {
        return Err(Error::Hypothesis(format!(
            "no unique peak: d_{} = d_{} = {}",
            profile.p,
            profile.p_last,
            profile.d_p()
        )));
    }
    let d_p = profile.d_p();
    let delta_plus = profile.second_modulus;
    let delta_minus = profile.delta_minus_floor;
    let lo = delta_plus.max(delta_minus);
    let nonempty = profile.unique_dominant && profile.multiplicity_one && delta_plus < d_p && lo < d_p;
    Ok(GapCertificate {
        d_p,
        p: profile.p,
        delta_plus,
        delta_minus,
        lo,
        hi: d_p,
        hypothesis_unique_max: profile.unique_dominant,
        hypothesis_multiplicity_one: profile.multiplicity_one,
        nonempty,
    })
}

/// Topological entropy `log d_1` of a surface automorphism.
pub fn entropy(h: &HodgeAction) -> Result<f64> {
    if h.dim() != 2 {
        return Err(Error::Domain(format!(
            "entropy is defined here only for surfaces, got dimension {}",
            h.dim()
        )));
    }
    let rho = Spectrum::of_real(h.require(1, 1)?)?.radius()?;
    Ok(rho.radius.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::hodge::{invert_action, product_action};
    use crate::exact::{CMatrix, GaussRat};

    fn diagonal(entries: &[i64]) -> CMatrix {
        CMatrix::diagonal(&entries.iter().map(|&e| GaussRat::from_ints(e, 0)).collect::<Vec<_>>())
    }

    /// Diagonal toy action with only `(q, q)` blocks.
    fn toy(blocks: Vec<CMatrix>) -> HodgeAction {
        let k = blocks.len() - 1;
        HodgeAction::fragment(
            k,
            "toy",
            blocks.into_iter().enumerate().map(|(q, m)| (q, q, m)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_no_unique_peak() {
        let h = toy(vec![CMatrix::identity(1), CMatrix::identity(3), CMatrix::identity(1)]);
        let prof = degree_profile(&h).unwrap();
        assert_eq!(prof.degrees, vec![1.0, 1.0, 1.0]);
        assert!(!prof.is_unique_peak);
        assert!(gap_certificate(&h).is_err());
        assert_eq!(entropy(&h).unwrap(), 0.0);
    }

    #[test]
    fn interval_read_off_roots() {
        let h = toy(vec![CMatrix::identity(1), diagonal(&[4, 3]), CMatrix::identity(1)]);
        let gap = gap_certificate(&h).unwrap();
        assert_eq!((gap.lo, gap.hi), (3.0, 4.0));
        assert!(gap.nonempty && gap.admits(3.5) && !gap.admits(4.0));
    }

    #[test]
    fn inverse_reverses_profile() {
        // degrees (1, 2, 4, 1) shaped data on a threefold
        let h = toy(vec![
            CMatrix::identity(1),
            diagonal(&[2, 1]),
            diagonal(&[4, 1]),
            CMatrix::identity(1),
        ]);
        let prof = degree_profile(&h).unwrap();
        assert_eq!(prof.degrees, vec![1.0, 2.0, 4.0, 1.0]);
        let inv = degree_profile(&invert_action(&h).unwrap()).unwrap();
        assert_eq!(inv.degrees, vec![1.0, 1.0, 1.0, 1.0]);
        assert!(entropy(&h).is_err());
    }

    #[test]
    fn plateau_detected_exactly() {
        // a curve action by i, squared through Künneth: all degrees equal 1
        let g = HodgeAction::new(
            1,
            "g",
            vec![
                (0, 0, CMatrix::identity(1)),
                (1, 0, CMatrix::scalar(GaussRat::from_ints(0, 1))),
                (0, 1, CMatrix::scalar(GaussRat::from_ints(0, -1))),
                (1, 1, CMatrix::identity(1)),
            ],
        )
        .unwrap();
        let prod = product_action(&g, &g).unwrap();
        let prof = degree_profile(&prod).unwrap();
        assert!(!prof.is_unique_peak);
        let plateau = toy(vec![
            CMatrix::identity(1),
            diagonal(&[3, 1]),
            diagonal(&[3, 1]),
            CMatrix::identity(1),
        ]);
        let prof = degree_profile(&plateau).unwrap();
        assert_eq!((prof.p, prof.p_last), (1, 2));
    }
}
