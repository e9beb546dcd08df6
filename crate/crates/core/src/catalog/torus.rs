//! Automorphisms of the complex torus `C²/Z[i]²`.
//!
//! Basis convention: the real coordinates are `(Re z₁, Im z₁, Re z₂, Im z₂)`,
//! and both holomorphic 1-forms and Fourier frequencies transform by the
//! transpose, so `f*|H^{1,0} = Aᵀ` and a frequency `ξ` of `φ ∘ f` comes from
//! `A_realᵀ ξ`.

use crate::cohomology::spectral::Spectrum;
use crate::cohomology::HodgeAction;
use crate::error::{Error, Result};
use crate::exact::{CMatrix, GaussInt, GaussRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    label: String,
    a: [[GaussInt; 2]; 2],
    a_real: [[i64; 4]; 4],
    hodge: HodgeAction,
    hyperbolic: bool,
}

impl TorusAutomorphism {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &[[GaussInt; 2]; 2] {
        &self.a
    }

    /// The map on `R⁴/Z⁴`.
    pub fn real_matrix(&self) -> &[[i64; 4]; 4] {
        &self.a_real
    }

    pub fn hodge(&self) -> &HodgeAction {
        &self.hodge
    }

    /// `d_1 > 1`, equivalently an eigenvalue of `A` off the closed unit disc.
    pub fn is_hyperbolic(&self) -> bool {
        self.hyperbolic
    }

    pub fn determinant(&self) -> GaussInt {
        let [[a, b], [c, d]] = &self.a;
        &(a * d) - &(b * c)
    }

    /// The exact inverse, itself a torus automorphism.
    pub fn inverse(&self) -> Result<Self> {
        let [[a, b], [c, d]] = &self.a;
        let u = self.determinant().conj();
        let inv = [[d * &u, &(-b.clone()) * &u], [&(-c.clone()) * &u, a * &u]];
        torus_from_matrix(format!("{}^-1", self.label), inv)
    }
}

/// Builds the torus automorphism `z ↦ Az` and its full Hodge action.
pub fn torus_from_matrix(label: impl Into<String>, a: [[GaussInt; 2]; 2]) -> Result<TorusAutomorphism> {
    let label = label.into();
    let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
    if !det.is_unit() {
        return Err(Error::InvalidAction(format!(
            "{label}: determinant {det} is not a unit of Z[i]"
        )));
    }
    let mut a_real = [[0i64; 4]; 4];
    for j in 0..2 {
        for k in 0..2 {
            let (re, im) = (small(&a[j][k].re)?, small(&a[j][k].im)?);
            a_real[2 * j][2 * k] = re;
            a_real[2 * j][2 * k + 1] = -im;
            a_real[2 * j + 1][2 * k] = im;
            a_real[2 * j + 1][2 * k + 1] = re;
        }
    }
    let rows: Vec<Vec<GaussInt>> = a.iter().map(|r| r.to_vec()).collect();
    let holo = CMatrix::from_gauss_int_rows(&rows)?.transpose();
    let anti = holo.conj();
    let d = GaussRat::from(&det);
    let top = holo.kron(&anti);
    let h11 = hermitian_real_form(&top)?;
    let hodge = HodgeAction::new(
        2,
        label.clone(),
        vec![
            (0, 0, CMatrix::identity(1)),
            (1, 0, holo.clone()),
            (0, 1, anti.clone()),
            (2, 0, CMatrix::scalar(d.clone())),
            (0, 2, CMatrix::scalar(d.conj())),
            (1, 1, h11.clone()),
            (2, 1, anti.scale(&d)),
            (1, 2, holo.scale(&d.conj())),
            (2, 2, CMatrix::identity(1)),
        ],
    )?;
    let rho = Spectrum::of_real(&h11)?.radius()?;
    let hyperbolic = rho.radius - rho.error > 1.0;
    Ok(TorusAutomorphism {
        label,
        a,
        a_real,
        hodge,
        hyperbolic,
    })
}

fn small(x: &dashu::integer::IBig) -> Result<i64> {
    i64::try_from(x.clone()).map_err(|_| Error::Domain(format!("matrix entry {x} exceeds 64 bits")))
}

/// `B ⊗ conj(B)` written in the real basis `e₀⊗ē₀, e₀⊗ē₁ + e₁⊗ē₀,
/// i(e₀⊗ē₁ − e₁⊗ē₀), e₁⊗ē₁` of `H^{1,1}`.
fn hermitian_real_form(k: &CMatrix) -> Result<CMatrix> {
    let (o, z, i) = (GaussRat::one(), GaussRat::zero(), GaussRat::i());
    let basis = CMatrix::from_rows(vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), i.clone(), z.clone()],
        vec![z.clone(), o.clone(), -&i, z.clone()],
        vec![z.clone(), z.clone(), z, o],
    ])?;
    let real = basis.inverse()?.mul(&k.mul(&basis)?)?;
    debug_assert!(real.is_real());
    Ok(real)
}

/// Convenience constructor from integer pairs `(re, im)`.
pub fn gauss_matrix(entries: [[(i64, i64); 2]; 2]) -> [[GaussInt; 2]; 2] {
    entries.map(|row| row.map(|(re, im)| GaussInt::new(re, im)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{degree_profile, entropy, invert_action};
    use crate::exact::Poly;

    fn cat() -> TorusAutomorphism {
        torus_from_matrix("cat", gauss_matrix([[(2, 0), (1, 0)], [(1, 0), (1, 0)]])).unwrap()
    }

    #[test]
    fn real_representation() {
        let t = torus_from_matrix("g", gauss_matrix([[(1, 1), (0, 0)], [(0, 0), (0, 1)]]));
        assert!(t.is_err(), "det = -1 + i is not a unit");
        let t = torus_from_matrix("g", gauss_matrix([[(0, 1), (1, 0)], [(1, 0), (0, 0)]])).unwrap();
        assert_eq!(t.real_matrix()[0], [0, -1, 1, 0]);
        assert_eq!(t.real_matrix()[1], [1, 0, 0, 1]);
        assert!(!t.hodge().block(1, 0).unwrap().is_real());
    }

    #[test]
    fn cat_map_spectrum() {
        let t = cat();
        let h11 = t.hodge().block(1, 1).unwrap();
        assert!(h11.is_real());
        let chi = crate::exact::char_poly(h11).unwrap();
        assert_eq!(chi.re, Poly::from_ints(&[1, -9, 16, -9, 1]));
        let prof = degree_profile(t.hodge()).unwrap();
        assert!((prof.degrees[1] - (7.0 + 3.0 * 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!((prof.degrees[0], prof.degrees[2]), (1.0, 1.0));
        assert!(t.is_hyperbolic());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((entropy(t.hodge()).unwrap() - 4.0 * phi.ln()).abs() < 1e-12);
    }

    #[test]
    fn unipotent_is_not_hyperbolic() {
        let t = torus_from_matrix("u", gauss_matrix([[(1, 0), (1, 0)], [(0, 0), (1, 0)]])).unwrap();
        assert!(!t.is_hyperbolic());
        assert_eq!(degree_profile(t.hodge()).unwrap().degrees, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn inverse_matches_inverted_action() {
        for t in [
            cat(),
            torus_from_matrix("g", gauss_matrix([[(1, 1), (1, 0)], [(1, 0), (0, -1)]])).unwrap(),
        ] {
            let inv = t.inverse().unwrap();
            assert_eq!(invert_action(t.hodge()).unwrap(), inv.hodge().clone());
        }
    }
}
