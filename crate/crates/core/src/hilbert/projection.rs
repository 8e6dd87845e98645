use super::matrix::{ComplexMatrix, MAX_DIM};
use crate::error::{Error, Result};
use crate::lattice::OrthoAlgebra;
use crate::scalar::Scalar;
use num_complex::Complex;
use std::marker::PhantomData;

/// An orthogonal projection: P = P* = P².
#[derive(Clone, Debug, PartialEq)]
pub struct Projection<T> {
    m: ComplexMatrix<T>,
}

impl<T: Scalar> Projection<T> {
    /// Validate a matrix as a projection (exactly, or within tolerance).
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(m.rows(), m.cols()));
        }
        if m.dim() > MAX_DIM {
            return Err(Error::Capacity(format!("dimension {} exceeds {MAX_DIM}", m.dim())));
        }
        if !m.is_hermitian() {
            return Err(Error::Numerical("matrix is not Hermitian".into()));
        }
        if !m.mul(&m)?.approx_eq(&m) {
            return Err(Error::Numerical("matrix is not idempotent".into()));
        }
        Ok(Projection { m })
    }

    pub fn zero(d: usize) -> Self {
        Projection { m: ComplexMatrix::zeros(d, d) }
    }

    pub fn identity(d: usize) -> Self {
        Projection { m: ComplexMatrix::identity(d) }
    }

    /// Projection onto the column space of `b` (any shape d×k), computed as
    /// B(B*B)⁻¹B* over an independent subset of the columns. Rational input
    /// gives a rational result.
    pub fn onto_columns(b: &ComplexMatrix<T>) -> Result<Self> {
        let d = b.rows();
        let cols = b.independent_columns();
        if cols.is_empty() {
            return Ok(Self::zero(d));
        }
        let basis = b.select_columns(&cols);
        let bstar = basis.adjoint();
        let gram_inv = bstar.mul(&basis)?.inverse()?;
        let mut m = basis.mul(&gram_inv)?.mul(&bstar)?;
        if !T::EXACT {
            m = m.hermitian_part();
        }
        Ok(Projection { m })
    }

    /// Projection onto the span of the given vectors.
    pub fn onto_span(vectors: &[Vec<Complex<T>>]) -> Result<Self> {
        Self::onto_columns(&ComplexMatrix::from_columns(vectors)?)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    fn same_dim(&self, o: &Self) -> Result<()> {
        if self.dim() != o.dim() {
            return Err(Error::Dimension(self.dim(), o.dim()));
        }
        Ok(())
    }

    /// I − P.
    pub fn ortho(&self) -> Self {
        Projection { m: ComplexMatrix::identity(self.dim()).sub(&self.m).expect("square") }
    }

    /// Projection onto the closed span of both ranges.
    pub fn join(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Self::onto_columns(&self.m.hconcat(&o.m)?)
    }

    /// Projection onto the intersection of ranges, (P⊥ ∨ Q⊥)⊥.
    pub fn meet(&self, o: &Self) -> Result<Self> {
        Ok(self.ortho().join(&o.ortho())?.ortho())
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.m.approx_eq(&o.m)
    }

    /// P ≤ Q iff QP = P.
    pub fn leq(&self, o: &Self) -> Result<bool> {
        self.same_dim(o)?;
        Ok(o.m.mul(&self.m)?.approx_eq(&self.m))
    }

    /// PQ = QP.
    pub fn commutes_with(&self, o: &Self) -> Result<bool> {
        self.same_dim(o)?;
        Ok(self.m.mul(&o.m)?.approx_eq(&o.m.mul(&self.m)?))
    }
}

/// The projection lattice Q(ℂ^d) as an [`OrthoAlgebra`].
#[derive(Clone, Copy, Debug)]
pub struct ProjectionLogic<T> {
    d: usize,
    _t: PhantomData<T>,
}

impl<T: Scalar> ProjectionLogic<T> {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::Capacity(format!("dimension {d} not in 1..={MAX_DIM}")));
        }
        Ok(ProjectionLogic { d, _t: PhantomData })
    }

    pub fn dim(&self) -> usize {
        self.d
    }
}

impl<T: Scalar> OrthoAlgebra for ProjectionLogic<T> {
    type Elem = Projection<T>;

    fn zero(&self) -> Projection<T> {
        Projection::zero(self.d)
    }
    fn one(&self) -> Projection<T> {
        Projection::identity(self.d)
    }
    fn meet(&self, a: &Projection<T>, b: &Projection<T>) -> Projection<T> {
        a.meet(b).expect("projections of the logic's dimension")
    }
    fn join(&self, a: &Projection<T>, b: &Projection<T>) -> Projection<T> {
        a.join(b).expect("projections of the logic's dimension")
    }
    fn ortho(&self, a: &Projection<T>) -> Projection<T> {
        a.ortho()
    }
    fn same(&self, a: &Projection<T>, b: &Projection<T>) -> bool {
        a.approx_eq(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn c(n: i64) -> Complex<Q> {
        Complex::new(Q::from_integer(n.into()), Q::zero())
    }

    #[test]
    fn exact_rank_one_pair_in_c2() {
        let p = Projection::onto_span(&[vec![c(1), c(0)]]).unwrap();
        let q = Projection::onto_span(&[vec![c(1), c(1)]]).unwrap();
        let half = Q::new(1.into(), 2.into());
        assert_eq!(q.matrix()[(0, 1)], Complex::new(half, Q::zero()));
        assert_eq!(p.meet(&q).unwrap(), Projection::zero(2));
        assert_eq!(p.join(&q).unwrap(), Projection::identity(2));
        assert!(!p.commutes_with(&q).unwrap());
        assert_eq!(Projection::<Q>::identity(3).ortho(), Projection::zero(3));
    }

    #[test]
    fn rejects_non_projections() {
        let m = ComplexMatrix::from_real_rows(&[&[Q::one(), Q::one()], &[Q::zero(), Q::zero()]]).unwrap();
        assert!(Projection::new(m).is_err());
        let big = ComplexMatrix::<f64>::identity(9);
        assert!(matches!(Projection::new(big), Err(Error::Capacity(_))));
    }

    #[test]
    fn float_meet_of_planes_in_c3() {
        let e = |i: usize| {
            let mut v = vec![Complex::new(0.0, 0.0); 3];
            v[i] = Complex::new(1.0, 0.0);
            v
        };
        let p = Projection::onto_span(&[e(0), e(1)]).unwrap();
        let q = Projection::onto_span(&[e(1), e(2)]).unwrap();
        let m = p.meet(&q).unwrap();
        assert!(m.approx_eq(&Projection::onto_span(&[e(1)]).unwrap()));
        assert_eq!(m.rank(), 1);
    }
}
