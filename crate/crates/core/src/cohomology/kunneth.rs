//! The action of `F = (g, f)` on the middle cohomology `H^{k,k}(X × X)`,
//! kept as the factored tensor blocks `g*|H^{a,b} ⊗ f*|H^{k−a,k−b}`.
//!
//! The blocks with `a + b = k` are the summands `H^{s,r} ⊗ H^{r,s}`; the
//! remaining ones complete the decomposition of `H^{k,k}`.

use rayon::prelude::*;
use serde::Serialize;

use super::hodge::HodgeAction;
use super::spectral::{SpectralRadius, Spectrum};
use crate::error::{Error, Result};
use crate::exact::CMatrix;

#[derive(Clone, Debug)]
pub struct KunnethBlock {
    pub a: usize,
    pub b: usize,
    /// `g*` on `H^{a,b}`.
    pub left: CMatrix,
    /// `f*` on `H^{k−a,k−b}`.
    pub right: CMatrix,
    pub radius: SpectralRadius,
    /// Largest modulus of `left ⊗ right` after one copy of the radius.
    pub second_modulus: f64,
    /// `√(d_a(g) d_b(g)) · √(d_{k−a}(f) d_{k−b}(f))`.
    pub bound: f64,
}

impl KunnethBlock {
    pub fn size(&self) -> usize {
        self.left.rows() * self.right.rows()
    }

    /// Whether this is one of the summands `H^{s,r} ⊗ H^{r,s}`.
    pub fn on_antidiagonal(&self, k: usize) -> bool {
        self.a + self.b == k
    }
}

#[derive(Clone, Debug)]
pub struct KunnethAction {
    pub dim: usize,
    pub blocks: Vec<KunnethBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockSummary {
    pub a: usize,
    pub b: usize,
    pub size: usize,
    pub radius: f64,
    pub error: f64,
    pub bound: f64,
}

impl KunnethAction {
    /// Index of the block of largest radius.
    pub fn dominant(&self) -> usize {
        (0..self.blocks.len())
            .max_by(|&a, &b| self.blocks[a].radius.radius.total_cmp(&self.blocks[b].radius.radius))
            .expect("at least one block")
    }

    pub fn dominant_radius(&self) -> SpectralRadius {
        self.blocks[self.dominant()].radius
    }

    /// Largest eigenvalue modulus of the whole action besides one copy of the dominant one.
    pub fn second_radius(&self) -> f64 {
        let dom = self.dominant();
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| if i == dom { b.second_modulus } else { b.radius.radius })
            .fold(0.0, f64::max)
    }

    pub fn summaries(&self) -> Vec<BlockSummary> {
        self.blocks
            .iter()
            .map(|b| BlockSummary {
                a: b.a,
                b: b.b,
                size: b.size(),
                radius: b.radius.radius,
                error: b.radius.error,
                bound: b.bound,
            })
            .collect()
    }
}

struct Factor {
    radius: SpectralRadius,
    second: f64,
}

fn factor(m: &CMatrix) -> Result<Factor> {
    let spec = Spectrum::of(m)?;
    let radius = spec.radius()?;
    let moduli = spec.moduli();
    // the envelope of a non-real block lists every modulus twice
    let step = if spec.char_poly.is_real() { 1 } else { 2 };
    let second = moduli.get(step).copied().unwrap_or(0.0);
    Ok(Factor { radius, second })
}

/// Tensor blocks of `(g, f)` on `H^{k,k}(X × X)`, where `g_action` is
/// normally [`invert_action`](super::hodge::invert_action) of `f_action`.
pub fn kunneth_action(g_action: &HodgeAction, f_action: &HodgeAction) -> Result<KunnethAction> {
    let k = f_action.dim();
    if g_action.dim() != k {
        return Err(Error::DimensionMismatch(format!(
            "Künneth factors have dimensions {} and {k}",
            g_action.dim()
        )));
    }
    let degrees = |h: &HodgeAction| -> Result<Vec<f64>> {
        (0..=k).map(|q| Ok(factor(h.require(q, q)?)?.radius.radius)).collect()
    };
    let (dg, df) = (degrees(g_action)?, degrees(f_action)?);
    let pairs: Vec<(usize, usize)> = (0..=k).flat_map(|a| (0..=k).map(move |b| (a, b))).collect();
    let blocks = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let left = g_action.require(a, b)?.clone();
            let right = f_action.require(k - a, k - b)?.clone();
            let (x, y) = (factor(&left)?, factor(&right)?);
            let radius = SpectralRadius {
                radius: x.radius.radius * y.radius.radius,
                error: x.radius.radius * y.radius.error
                    + y.radius.radius * x.radius.error
                    + x.radius.error * y.radius.error,
            };
            let second_modulus = (x.radius.radius * y.second).max(x.second * y.radius.radius);
            let bound = (dg[a] * dg[b]).sqrt() * (df[k - a] * df[k - b]).sqrt();
            Ok(KunnethBlock {
                a,
                b,
                left,
                right,
                radius,
                second_modulus,
                bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KunnethAction { dim: k, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::hodge::invert_action;
    use crate::exact::GaussRat;

    #[test]
    fn curve_blocks_are_scalar_products() {
        let a = GaussRat::from_ints(0, 1);
        let h = HodgeAction::new(
            1,
            "i",
            vec![
                (0, 0, CMatrix::identity(1)),
                (1, 0, CMatrix::scalar(a.clone())),
                (0, 1, CMatrix::scalar(a.conj())),
                (1, 1, CMatrix::identity(1)),
            ],
        )
        .unwrap();
        let kun = kunneth_action(&invert_action(&h).unwrap(), &h).unwrap();
        assert_eq!(kun.blocks.len(), 4);
        assert_eq!(kun.blocks.iter().filter(|b| b.on_antidiagonal(1)).count(), 2);
        for b in &kun.blocks {
            assert_eq!(b.size(), 1);
            assert!((b.radius.radius - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let one =
            HodgeAction::fragment(1, "a", vec![(0, 0, CMatrix::identity(1)), (1, 1, CMatrix::identity(1))]).unwrap();
        let two =
            HodgeAction::fragment(2, "b", vec![(0, 0, CMatrix::identity(1)), (2, 2, CMatrix::identity(1))]).unwrap();
        assert!(matches!(kunneth_action(&one, &two), Err(Error::DimensionMismatch(_))));
        assert!(matches!(kunneth_action(&one, &one), Err(Error::Fragment(_))));
    }
}
