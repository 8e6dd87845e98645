use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::{One, Zero};
use std::fmt;

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 8;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:?}{:+?}i", self[(i, j)].re, self[(i, j)].im)).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn negligible<T: Scalar>(z: &Complex<T>) -> bool {
    z.re.negligible() && z.im.negligible()
}

fn norm_sqr<T: Scalar>(z: &Complex<T>) -> T {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(ComplexMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_real_rows(rows: &[&[T]]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|x| Complex::new(x.clone(), T::zero())).collect()).collect(),
        )
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v.clone(), T::zero());
        }
        m
    }

    /// Column matrix from vectors (each vector becomes a column).
    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Result<Self> {
        let d = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != d) {
            return Err(Error::Input("columns of different lengths".into()));
        }
        let mut m = Self::zeros(d, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, z) in c.iter().enumerate() {
                m[(i, j)] = z.clone();
            }
        }
        Ok(m)
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

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(self.rows * self.cols, o.rows * o.cols));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(self.cols, o.rows));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.clone() * o[(k, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() + t;
                }
            }
        }
        Ok(m)
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    /// Concatenate columns of `self` and `o`.
    pub fn hconcat(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::Dimension(self.rows, o.rows));
        }
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..o.cols {
                m[(i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// Entrywise equality, exact or within the scalar tolerance.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| negligible(&(a.clone() - b.clone())))
    }

    /// Largest entry modulus squared, as a crude size measure.
    pub fn max_norm_sqr(&self) -> T {
        self.data.iter().map(norm_sqr).fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint())
    }

    /// (M + M*)/2, used to remove rounding asymmetry.
    pub fn hermitian_part(&self) -> Self {
        let two = T::one() + T::one();
        let s = self.add(&self.adjoint()).expect("square");
        s.scale(&Complex::new(T::one() / two, T::zero()))
    }

    /// Indices of a maximal set of linearly independent columns, found by
    /// Gaussian elimination with full pivoting. In floating mode a pivot
    /// below the tolerance counts as zero.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut a = self.clone();
        let mut colperm: Vec<usize> = (0..self.cols).collect();
        let mut chosen = Vec::new();
        let tol2 = T::tolerance() * T::tolerance();
        for step in 0..self.rows.min(self.cols) {
            let mut best: Option<(usize, usize, T)> = None;
            for i in step..a.rows {
                for j in step..a.cols {
                    let v = norm_sqr(&a[(i, j)]);
                    let better = match &best {
                        None => true,
                        Some((_, _, b)) => v > *b,
                    };
                    if better {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, pv)) = best else { break };
            let zero = if T::EXACT { pv.is_zero() } else { pv <= tol2 };
            if zero {
                break;
            }
            a.swap_rows(step, pi);
            a.swap_cols(step, pj);
            colperm.swap(step, pj);
            chosen.push(colperm[step]);
            let piv = a[(step, step)].clone();
            for i in step + 1..a.rows {
                let f = a[(i, step)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in step..a.cols {
                    let t = f.clone() * a[(step, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                }
            }
        }
        chosen.sort_unstable();
        chosen
    }

    pub fn rank(&self) -> usize {
        self.independent_columns().len()
    }

    /// Submatrix of the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.hconcat(&Self::identity(n))?;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| {
                    norm_sqr(&a[(x, c)]).partial_cmp(&norm_sqr(&a[(y, c)])).unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty range");
            if negligible(&a[(p, c)]) {
                return Err(Error::Numerical("singular matrix".into()));
            }
            a.swap_rows(c, p);
            let piv = a[(c, c)].clone();
            for j in 0..2 * n {
                a[(c, j)] = a[(c, j)].clone() / piv.clone();
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..2 * n {
                    let t = f.clone() * a[(c, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                }
            }
        }
        Ok(a.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| Complex::new(f(&z.re), f(&z.im))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_inverse() {
        let m = ComplexMatrix::from_real_rows(&[&[q(2, 1), q(1, 1)], &[q(1, 1), q(1, 1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn rank_detection() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[0.0, 1.0, 1.0]]).unwrap();
        assert_eq!(m.rank(), 2);
        let e = ComplexMatrix::from_real_rows(&[&[q(1, 2), q(1, 2)], &[q(1, 2), q(1, 2)]]).unwrap();
        assert_eq!(e.rank(), 1);
        assert!(ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap().inverse().is_ok());
        assert!(ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap().inverse().is_err());
    }
}
