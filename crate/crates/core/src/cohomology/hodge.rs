//! Bigraded actions on Dolbeault cohomology `H^{r,s}`.

use dashu::rational::RBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::gauss::{format_rational, parse_rational};
use crate::exact::{CMatrix, GaussRat};

/// The pull-back action on every `H^{r,s}`, `0 ≤ r, s ≤ dim`.
///
/// A fragment carries only some blocks (for instance just `H^{1,1}` of a
/// lattice isometry); operations needing the full action refuse it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeAction {
    dim: usize,
    label: String,
    blocks: Vec<Option<CMatrix>>,
}

impl HodgeAction {
    /// Validated action; `blocks` lists `(r, s, matrix)`.
    pub fn new(dim: usize, label: impl Into<String>, blocks: Vec<(usize, usize, CMatrix)>) -> Result<Self> {
        let h = Self::assemble(dim, label.into(), blocks)?;
        if !h.is_complete() {
            let missing: Vec<String> = h.missing().iter().map(|(r, s)| format!("({r},{s})")).collect();
            return Err(Error::InvalidAction(format!("missing blocks {}", missing.join(", "))));
        }
        Ok(h)
    }

    /// Validated partial action.
    pub fn fragment(dim: usize, label: impl Into<String>, blocks: Vec<(usize, usize, CMatrix)>) -> Result<Self> {
        Self::assemble(dim, label.into(), blocks)
    }

    fn assemble(dim: usize, label: String, blocks: Vec<(usize, usize, CMatrix)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAction("dimension must be positive".into()));
        }
        let mut h = Self {
            dim,
            label,
            blocks: vec![None; (dim + 1) * (dim + 1)],
        };
        for (r, s, m) in blocks {
            if r > dim || s > dim {
                return Err(Error::InvalidAction(format!(
                    "bidegree ({r},{s}) exceeds dimension {dim}"
                )));
            }
            let slot = h.slot(r, s);
            if h.blocks[slot].is_some() {
                return Err(Error::InvalidAction(format!("duplicate block ({r},{s})")));
            }
            h.blocks[slot] = Some(m);
        }
        h.validate()?;
        Ok(h)
    }

    fn slot(&self, r: usize, s: usize) -> usize {
        r * (self.dim + 1) + s
    }

    fn validate(&self) -> Result<()> {
        let k = self.dim;
        for q in [0, k] {
            match self.block(q, q) {
                Some(m) if m.rows() == 1 && m.is_identity() => {}
                Some(_) => {
                    return Err(Error::InvalidAction(format!(
                        "block ({q},{q}) must be the 1x1 identity"
                    )))
                }
                None => return Err(Error::InvalidAction(format!("block ({q},{q}) is required"))),
            }
        }
        for (r, s, m) in self.blocks() {
            if !m.is_square() {
                return Err(Error::InvalidAction(format!(
                    "block ({r},{s}) is {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            if r == s && !m.is_real() {
                return Err(Error::InvalidAction(format!("block ({r},{r}) must be real")));
            }
            if m.rank() != m.rows() {
                return Err(Error::InvalidAction(format!("block ({r},{s}) is singular")));
            }
            if let Some(partner) = self.block(s, r) {
                if *partner != m.conj() {
                    return Err(Error::InvalidAction(format!(
                        "block ({s},{r}) is not the conjugate of block ({r},{s})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn block(&self, r: usize, s: usize) -> Option<&CMatrix> {
        if r > self.dim || s > self.dim {
            return None;
        }
        self.blocks[self.slot(r, s)].as_ref()
    }

    /// The block or a fragment error naming it.
    pub fn require(&self, r: usize, s: usize) -> Result<&CMatrix> {
        self.block(r, s)
            .ok_or_else(|| Error::Fragment(format!("{}: block ({r},{s}) is unavailable", self.label)))
    }

    /// Present blocks in `(r, s)` lexicographic order.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, &CMatrix)> {
        let n = self.dim + 1;
        self.blocks
            .iter()
            .enumerate()
            .filter_map(move |(i, b)| b.as_ref().map(|m| (i / n, i % n, m)))
    }

    pub fn is_complete(&self) -> bool {
        self.blocks.iter().all(Option::is_some)
    }

    pub fn missing(&self) -> Vec<(usize, usize)> {
        let n = self.dim + 1;
        (0..n * n)
            .filter(|&i| self.blocks[i].is_none())
            .map(|i| (i / n, i % n))
            .collect()
    }

    /// Blockwise transpose (the dual action).
    pub fn transpose(&self) -> Self {
        Self {
            dim: self.dim,
            label: self.label.clone(),
            blocks: self.blocks.iter().map(|b| b.as_ref().map(CMatrix::transpose)).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ActionJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ActionJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// The action of the inverse map, blockwise `(f*)^{-1}`.
pub fn invert_action(h: &HodgeAction) -> Result<HodgeAction> {
    let blocks = h
        .blocks
        .iter()
        .map(|b| b.as_ref().map(CMatrix::inverse).transpose())
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeAction {
        dim: h.dim,
        label: format!("{}^-1", h.label),
        blocks,
    })
}

/// The action on `X × Y` from the Künneth decomposition
/// `H^{r,s}(X×Y) = ⊕ H^{a,b}(X) ⊗ H^{c,d}(Y)` over `a+c = r`, `b+d = s`.
///
/// On `H^{q,q}` the summands pair up into conjugates `T ⊕ conj(T)`, each pair
/// written in a real basis so that the diagonal blocks stay real.
pub fn product_action(x: &HodgeAction, y: &HodgeAction) -> Result<HodgeAction> {
    for h in [x, y] {
        if !h.is_complete() {
            return Err(Error::Fragment(format!("{}: product needs the full action", h.label)));
        }
    }
    let dim = x.dim + y.dim;
    let mut blocks: Vec<(usize, usize, CMatrix)> = Vec::new();
    for r in 0..=dim {
        for s in r..=dim {
            let mut parts = Vec::new();
            for a in r.saturating_sub(y.dim)..=r.min(x.dim) {
                for b in s.saturating_sub(y.dim)..=s.min(x.dim) {
                    let (c, d) = (r - a, s - b);
                    if r == s && (a, c) > (b, d) {
                        // counted with its conjugate partner (b, a) ⊗ (d, c)
                        continue;
                    }
                    let t = x.require(a, b)?.kron(y.require(c, d)?);
                    if r == s && (a, c) != (b, d) {
                        parts.push(t.realify());
                    } else {
                        parts.push(t);
                    }
                }
            }
            let block = CMatrix::direct_sum(&parts);
            if r != s {
                blocks.push((s, r, block.conj()));
            }
            blocks.push((r, s, block));
        }
    }
    HodgeAction::new(dim, format!("{}x{}", x.label, y.label), blocks)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionJson {
    dim: usize,
    label: String,
    blocks: Vec<BlockJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockJson {
    r: usize,
    s: usize,
    re: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<String>>>,
}

impl From<&HodgeAction> for ActionJson {
    fn from(h: &HodgeAction) -> Self {
        let blocks = h
            .blocks()
            .map(|(r, s, m)| {
                let part = |f: fn(&GaussRat) -> &RBig| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(|z| format_rational(f(z))).collect())
                        .collect()
                };
                BlockJson {
                    r,
                    s,
                    re: part(|z| &z.re),
                    im: Some(part(|z| &z.im)),
                }
            })
            .collect();
        Self {
            dim: h.dim,
            label: h.label.clone(),
            blocks,
        }
    }
}

impl TryFrom<ActionJson> for HodgeAction {
    type Error = Error;

    fn try_from(raw: ActionJson) -> Result<Self> {
        let mut blocks = Vec::with_capacity(raw.blocks.len());
        for b in raw.blocks {
            let re = parse_matrix(&b.re)?;
            let im = match &b.im {
                Some(im) => parse_matrix(im)?,
                None => vec![vec![RBig::ZERO; re.first().map_or(0, Vec::len)]; re.len()],
            };
            if im.len() != re.len() || im.iter().zip(&re).any(|(a, b)| a.len() != b.len()) {
                return Err(Error::Parse(format!(
                    "block ({},{}): re and im shapes differ",
                    b.r, b.s
                )));
            }
            let rows = re
                .into_iter()
                .zip(im)
                .map(|(rr, ir)| rr.into_iter().zip(ir).map(|(x, y)| GaussRat::new(x, y)).collect())
                .collect();
            blocks.push((b.r, b.s, CMatrix::from_rows(rows)?));
        }
        HodgeAction::fragment(raw.dim, raw.label, blocks)
    }
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Vec<Vec<RBig>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn scalar_curve(a: GaussRat) -> HodgeAction {
        HodgeAction::new(
            1,
            "curve",
            vec![
                (0, 0, CMatrix::identity(1)),
                (1, 0, CMatrix::scalar(a.clone())),
                (0, 1, CMatrix::scalar(a.conj())),
                (1, 1, CMatrix::identity(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_actions() {
        let id = CMatrix::identity(1);
        let two = CMatrix::scalar(GaussRat::from_ints(2, 0));
        assert!(HodgeAction::new(1, "x", vec![(0, 0, id.clone()), (1, 1, id.clone())]).is_err());
        assert!(HodgeAction::fragment(1, "x", vec![(0, 0, two), (1, 1, id.clone())]).is_err());
        let a = CMatrix::scalar(GaussRat::from_ints(0, 1));
        let bad = vec![(0, 0, id.clone()), (1, 0, a.clone()), (0, 1, a), (1, 1, id.clone())];
        assert!(HodgeAction::new(1, "x", bad).is_err());
        let sing = vec![(0, 0, id.clone()), (1, 1, id.clone()), (1, 0, CMatrix::zeros(1, 1))];
        assert!(HodgeAction::fragment(1, "x", sing).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let h = scalar_curve(GaussRat::new(
            RBig::from(3) / RBig::from(5),
            RBig::from(-4) / RBig::from(5),
        ));
        let text = h.to_json().unwrap();
        assert!(text.contains("\"3/5\""));
        let back = HodgeAction::from_json(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn json_errors() {
        assert!(HodgeAction::from_json("{").is_err());
        let zero_den = r#"{"dim":1,"label":"x","blocks":[{"r":0,"s":0,"re":[["1/0"]]}]}"#;
        assert!(matches!(HodgeAction::from_json(zero_den), Err(Error::Parse(_))));
    }

    #[test]
    fn inverse_and_product() {
        let h = scalar_curve(GaussRat::from_ints(0, 1));
        let inv = invert_action(&h).unwrap();
        assert_eq!(inv.block(1, 0).unwrap()[(0, 0)], GaussRat::from_ints(0, -1));
        let p = product_action(&h, &h).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.block(1, 1).unwrap().rows(), 4);
        assert!(p.block(1, 1).unwrap().is_real());
        assert_eq!(p.block(2, 0).unwrap()[(0, 0)], GaussRat::from_ints(-1, 0));
    }
}
