//! Dense matrices over the Gaussian rationals.

use std::fmt;

use dashu::integer::UBig;
use dashu::rational::RBig;
use num_complex::Complex64;

use super::gauss::{lcm, GaussInt, GaussRat};
use crate::error::{Error, Result};

/// Row-major dense matrix with exact `Q(i)` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| GaussRat::from_ints(x, 0)).collect())
                .collect(),
        )
    }

    pub fn from_gauss_int_rows(rows: &[Vec<GaussInt>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(GaussRat::from).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[GaussRat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn scalar(z: GaussRat) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![z],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussRat::is_real)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussRat::conj).collect(),
        }
    }

    pub fn scale(&self, z: &GaussRat) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let size = self.ensure_square()?;
        let mut result = Self::identity(size);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[CMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Real form `[[Re B, −Im B], [Im B, Re B]]` of `B ⊕ conj(B)`.
    pub fn realify(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut out = Self::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let z = &self[(i, j)];
                let re = GaussRat::real(z.re.clone());
                let im = GaussRat::real(z.im.clone());
                out[(i, j)] = re.clone();
                out[(i + r, j + c)] = re;
                out[(i, j + c)] = -&im;
                out[(i + r, j)] = im;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.ensure_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let factor = a[(r, col)].clone();
                    a.sub_row_multiple(r, col, &factor);
                    inv.sub_row_multiple(r, col, &factor);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let p = a[(rank, col)].inv().expect("nonzero pivot");
            a.scale_row(rank, &p);
            for r in 0..self.rows {
                if r != rank && !a[(r, col)].is_zero() {
                    let factor = a[(r, col)].clone();
                    a.sub_row_multiple(r, rank, &factor);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, z: &GaussRat) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * z;
            self[(r, j)] = v;
        }
    }

    /// `row[target] -= factor · row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &GaussRat) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if !s.is_zero() {
                let v = factor * s;
                self.data[target * self.cols + j] -= &v;
            }
        }
    }

    /// Least common denominator of every real and imaginary part.
    pub fn common_denominator(&self) -> UBig {
        self.data
            .iter()
            .fold(UBig::ONE, |acc, z| lcm(&acc, &z.denominator_lcm()))
    }

    /// `d · self` as a Gaussian-integer matrix, with `d` the common denominator.
    pub fn to_gauss_int(&self) -> (UBig, Vec<GaussInt>) {
        let d = self.common_denominator();
        (d.clone(), self.data.iter().map(|z| z.scaled_to_int(&d)).collect())
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.data.iter().map(GaussRat::to_c64).collect()
    }

    /// Evaluates `poly(self)` for a polynomial with rational coefficients (low to high).
    pub fn eval_poly(&self, coeffs: &[RBig]) -> Result<Self> {
        let n = self.ensure_square()?;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                acc.data[i * n + i] += &GaussRat::real(c.clone());
            }
        }
        Ok(acc)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = GaussRat;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
