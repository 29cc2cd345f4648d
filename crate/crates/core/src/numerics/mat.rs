use super::complex::Complex;
use crate::error::{Error, Result};
use std::ops::{Index, IndexMut};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Complex::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real entries, row by row. Panics on ragged input.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Mat::from_fn(nrows, ncols, |i, j| Complex::real(rows[i][j]))
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

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, t: f64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.scale(t);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.abs2()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.abs()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Max entrywise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).abs());
            }
        }
        dev
    }

    /// Max entrywise deviation from the identity.
    pub fn identity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { Complex::ONE } else { Complex::ZERO };
                dev = dev.max((self[(i, j)] - target).abs());
            }
        }
        dev
    }

    pub fn col(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Copies `src` into this matrix with its top-left corner at `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, src: &Mat) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                self[(i0 + i, j0 + j)] = src[(i, j)];
            }
        }
    }

    /// Extracts the `rows x cols` submatrix with top-left corner at `(i0, j0)`.
    pub fn submatrix(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |i, j| self[(i0 + i, j0 + j)])
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// An `n x n` grid of `r x r` complex blocks; flattening yields an
/// `(rn) x (rn)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix {
    n: usize,
    r: usize,
    blocks: Vec<Mat>,
}

impl BlockMatrix {
    pub fn zeros(n: usize, r: usize) -> Self {
        BlockMatrix {
            n,
            r,
            blocks: vec![Mat::zeros(r, r); n * n],
        }
    }

    pub fn from_blocks(n: usize, r: usize, blocks: Vec<Mat>) -> Result<Self> {
        if blocks.len() != n * n {
            return Err(Error::Malformed {
                what: "block matrix",
                detail: format!("expected {} blocks, got {}", n * n, blocks.len()),
            });
        }
        for b in &blocks {
            if b.rows() != r || b.cols() != r {
                return Err(Error::Malformed {
                    what: "block matrix",
                    detail: format!("block is {}x{}, expected {r}x{r}", b.rows(), b.cols()),
                });
            }
        }
        Ok(BlockMatrix { n, r, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Order of the flattened matrix, `r * n`.
    pub fn order(&self) -> usize {
        self.n * self.r
    }

    pub fn block(&self, i: usize, j: usize) -> &Mat {
        &self.blocks[i * self.n + j]
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: Mat) {
        assert_eq!((b.rows(), b.cols()), (self.r, self.r));
        self.blocks[i * self.n + j] = b;
    }

    pub fn flatten(&self) -> Mat {
        let order = self.order();
        let mut out = Mat::zeros(order, order);
        for i in 0..self.n {
            for j in 0..self.n {
                out.paste(i * self.r, j * self.r, self.block(i, j));
            }
        }
        out
    }

    pub fn from_flat(flat: &Mat, n: usize, r: usize) -> Result<Self> {
        if flat.rows() != n * r || flat.cols() != n * r {
            return Err(Error::Malformed {
                what: "block matrix",
                detail: format!(
                    "flat matrix is {}x{}, expected order {}",
                    flat.rows(),
                    flat.cols(),
                    n * r
                ),
            });
        }
        let mut out = BlockMatrix::zeros(n, r);
        for i in 0..n {
            for j in 0..n {
                out.set_block(i, j, flat.submatrix(i * r, j * r, r, r));
            }
        }
        Ok(out)
    }

    pub fn max_imag(&self) -> f64 {
        self.blocks.iter().map(Mat::max_imag).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_against_hand_product() {
        let a = Mat::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = Mat::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let c = a.mul(&b);
        assert_eq!(c, Mat::from_real_rows(&[vec![2.0, 1.0], vec![4.0, 3.0]]));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let mut a = Mat::zeros(1, 2);
        a[(0, 0)] = Complex::new(1.0, 2.0);
        a[(0, 1)] = Complex::new(0.0, -1.0);
        let b = a.adjoint();
        assert_eq!(b.rows(), 2);
        assert_eq!(b[(0, 0)], Complex::new(1.0, -2.0));
        assert_eq!(b[(1, 0)], Complex::new(0.0, 1.0));
    }

    #[test]
    fn block_grid_flatten_round_trip() {
        let mut g = BlockMatrix::zeros(2, 2);
        g.set_block(0, 1, Mat::identity(2));
        g.set_block(1, 0, Mat::identity(2).scale(-1.0));
        let flat = g.flatten();
        assert_eq!(flat[(0, 2)], Complex::ONE);
        assert_eq!(flat[(2, 0)], Complex::real(-1.0));
        let back = BlockMatrix::from_flat(&flat, 2, 2).unwrap();
        assert_eq!(back, g);
    }
}
