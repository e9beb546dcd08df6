//! Isometries of an integral lattice of signature `(1, n)`, standing in for the
//! `H^{1,1}` action of a surface automorphism.

use dashu::integer::IBig;

use crate::cohomology::spectral::Spectrum;
use crate::cohomology::HodgeAction;
use crate::error::{Error, Result};
use crate::exact::CMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    label: String,
    m: Vec<Vec<i64>>,
    g: Vec<Vec<i64>>,
}

impl LatticeIsometry {
    /// Checks `MᵀGM = G` exactly, `G` symmetric of signature `(1, n)`.
    pub fn new(label: impl Into<String>, m: Vec<Vec<i64>>, g: Vec<Vec<i64>>) -> Result<Self> {
        let label = label.into();
        let n = g.len();
        let square = |x: &[Vec<i64>]| x.len() == n && x.iter().all(|r| r.len() == n);
        if n == 0 || !square(&g) || !square(&m) {
            return Err(Error::DimensionMismatch(format!(
                "{label}: M and G must be square of equal size"
            )));
        }
        if (0..n).any(|i| (0..n).any(|j| g[i][j] != g[j][i])) {
            return Err(Error::InvalidAction(format!("{label}: G is not symmetric")));
        }
        let (pos, neg) = signature(&g)?;
        if pos != 1 || pos + neg != n {
            return Err(Error::InvalidAction(format!(
                "{label}: G has signature ({pos}, {neg}) on rank {n}, expected (1, {})",
                n - 1
            )));
        }
        let iso = Self { label, m, g };
        if !iso.preserves_form(1) {
            return Err(Error::InvalidAction(format!("{}: MᵀGM ≠ G", iso.label)));
        }
        Ok(iso)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.g
    }

    /// `(Mⁿ)ᵀ G Mⁿ = G`, exact.
    pub fn preserves_form(&self, power: u32) -> bool {
        let m = to_big(&self.m);
        let mut p = identity(self.m.len());
        for _ in 0..power {
            p = mul(&p, &m);
        }
        let g = to_big(&self.g);
        mul(&mul(&transpose(&p), &g), &p) == g
    }
}

/// The `H^{1,1}` fragment of a surface action: `(0,0)`, `(1,1) = M`, `(2,2)`.
pub fn isometry_action(iso: &LatticeIsometry) -> Result<HodgeAction> {
    HodgeAction::fragment(
        2,
        iso.label.clone(),
        vec![
            (0, 0, CMatrix::identity(1)),
            (1, 1, CMatrix::from_int_rows(&iso.m)?),
            (2, 2, CMatrix::identity(1)),
        ],
    )
}

/// Numbers of positive and negative eigenvalues of a symmetric integer matrix.
fn signature(g: &[Vec<i64>]) -> Result<(usize, usize)> {
    let spec = Spectrum::of_real(&CMatrix::from_int_rows(g)?)?;
    let (mut pos, mut neg) = (0, 0);
    for r in spec.roots.roots() {
        if r.center.re - r.radius > 0.0 {
            pos += r.multiplicity;
        } else if r.center.re + r.radius < 0.0 {
            neg += r.multiplicity;
        }
    }
    Ok((pos, neg))
}

type BigMat = Vec<Vec<IBig>>;

fn to_big(m: &[Vec<i64>]) -> BigMat {
    m.iter().map(|r| r.iter().map(|&x| IBig::from(x)).collect()).collect()
}

fn identity(n: usize) -> BigMat {
    (0..n)
        .map(|i| (0..n).map(|j| IBig::from(u8::from(i == j))).collect())
        .collect()
}

fn transpose(m: &BigMat) -> BigMat {
    (0..m.len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mul(a: &BigMat, b: &BigMat) -> BigMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(IBig::ZERO, |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// The Coxeter element of the `E₁₀` reflection group, acting as an isometry
/// of the lattice with form `−Cartan(T_{2,3,7})`. Its characteristic
/// polynomial is Lehmer's polynomial.
pub fn coxeter_e10() -> LatticeIsometry {
    let m = vec![
        vec![0, 0, 1, 0, 0, 0, 0, 0, -1, -1],
        vec![1, 0, 1, 0, 0, 0, 0, 0, -1, -1],
        vec![0, 1, 1, 0, 0, 0, 0, 0, -1, -1],
        vec![0, 0, 1, 0, 0, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 1, 0, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 1, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 0, 1, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 0, 0, 1, 0, -1, 0],
        vec![0, 0, 0, 0, 0, 0, 0, 1, -1, 0],
        vec![0, 0, 1, 0, 0, 0, 0, 0, 0, -1],
    ];
    LatticeIsometry::new("coxeter-e10", m, e10_form()).expect("Coxeter element preserves the E10 form")
}

/// `−Cartan(T_{2,3,7})`: a chain of nine nodes with a branch at the third.
pub fn e10_form() -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; 10]; 10];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, i + 1)).collect();
    edges.push((2, 9));
    for (i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{char_poly, Poly};

    #[test]
    fn coxeter_has_lehmer_polynomial() {
        let c = coxeter_e10();
        let chi = char_poly(&CMatrix::from_int_rows(c.matrix()).unwrap()).unwrap();
        assert_eq!(chi.re, Poly::from_ints(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]));
        for n in 1..=10 {
            assert!(c.preserves_form(n));
        }
    }

    #[test]
    fn rejects_non_isometries() {
        let g = e10_form();
        let mut m: Vec<Vec<i64>> = (0..10).map(|i| (0..10).map(|j| i64::from(i == j)).collect()).collect();
        assert!(LatticeIsometry::new("id", m.clone(), g.clone()).is_ok());
        m[0][1] = 1;
        assert!(LatticeIsometry::new("bad", m, g.clone()).is_err());
        let neg: Vec<Vec<i64>> = (0..10).map(|i| (0..10).map(|j| -i64::from(i == j)).collect()).collect();
        assert!(LatticeIsometry::new("neg", neg, g).is_ok());
        let definite = vec![vec![1, 0], vec![0, 1]];
        assert!(LatticeIsometry::new("def", definite.clone(), definite).is_err());
    }
}
