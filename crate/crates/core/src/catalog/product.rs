//! The product automorphism `F(x, y) = (f^{-1}(x), f(y))` of `X × X`.

use crate::cohomology::{invert_action, kunneth_action, KunnethAction};
use crate::error::{Error, Result};

use super::torus::TorusAutomorphism;

#[derive(Clone, Debug)]
pub struct ProductAutomorphism {
    pub label: String,
    /// `F*` on `H^{2,2}` of the product, block by block.
    pub kunneth: KunnethAction,
    /// `A_real^{-1} ⊕ A_real` on `R⁸/Z⁸`.
    pub real_map: [[i64; 8]; 8],
}

impl ProductAutomorphism {
    /// The real map has no entries mixing the two factors, so `F*` respects
    /// the Künneth splitting.
    pub fn preserves_decomposition(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| (i < 4) == (j < 4) || self.real_map[i][j] == 0))
    }
}

pub fn product_automorphism(t: &TorusAutomorphism) -> Result<ProductAutomorphism> {
    if !t.is_hyperbolic() {
        return Err(Error::Hypothesis(format!(
            "{} has zero entropy; the product is not considered",
            t.label()
        )));
    }
    let kunneth = kunneth_action(&invert_action(t.hodge())?, t.hodge())?;
    let inv = t.inverse()?;
    let mut real_map = [[0i64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            real_map[i][j] = inv.real_matrix()[i][j];
            real_map[i + 4][j + 4] = t.real_matrix()[i][j];
        }
    }
    Ok(ProductAutomorphism {
        label: format!("{}-product", t.label()),
        kunneth,
        real_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::torus::{gauss_matrix, torus_from_matrix};

    #[test]
    fn cat_product_dominance() {
        let t = torus_from_matrix("cat", gauss_matrix([[(2, 0), (1, 0)], [(1, 0), (1, 0)]])).unwrap();
        let p = product_automorphism(&t).unwrap();
        let d1 = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        let dom = p.kunneth.dominant_radius();
        assert!((dom.radius - d1 * d1).abs() < 1e-9 * d1 * d1);
        let dom_block = &p.kunneth.blocks[p.kunneth.dominant()];
        assert_eq!((dom_block.a, dom_block.b), (1, 1));
        assert!(p.kunneth.second_radius() <= d1 * (1.0 + 1e-12));
        assert!(dom.radius / p.kunneth.second_radius() >= d1 * (1.0 - 1e-12));
        assert!(p.preserves_decomposition());
    }

    #[test]
    fn identity_refused() {
        let t = torus_from_matrix("id", gauss_matrix([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])).unwrap();
        assert!(matches!(product_automorphism(&t), Err(Error::Hypothesis(_))));
    }
}
