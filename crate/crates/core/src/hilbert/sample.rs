//! Seeded generators for projections and Hermitian matrices.

use super::matrix::ComplexMatrix;
use super::projection::Projection;
use super::spectral::hermitian_eigen;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};
use num_complex::Complex;
use rand::Rng;

fn entry<T: Scalar, R: Rng>(rng: &mut R) -> T {
    if T::EXACT {
        T::from_i64(rng.gen_range(-3..=3)).expect("small integer")
    } else {
        T::from_f64(rng.gen_range(-1.0..1.0)).expect("float")
    }
}

pub fn random_vector<T: Scalar, R: Rng>(rng: &mut R, d: usize) -> Vec<Complex<T>> {
    (0..d).map(|_| Complex::new(entry(rng), entry(rng))).collect()
}

/// Projection onto the span of `rank` random vectors in ℂ^d. Exact mode
/// draws small Gaussian integers, so the result has rational entries.
pub fn random_projection<T: Scalar, R: Rng>(rng: &mut R, d: usize, rank: usize) -> Result<Projection<T>> {
    if rank > d {
        return Err(Error::Precondition(format!("rank {rank} exceeds dimension {d}")));
    }
    for _ in 0..100 {
        let vs: Vec<_> = (0..rank).map(|_| random_vector(rng, d)).collect();
        let p = if rank == 0 { Projection::zero(d) } else { Projection::onto_span(&vs)? };
        if p.rank() == rank {
            return Ok(p);
        }
    }
    Err(Error::Numerical("could not draw independent vectors".into()))
}

/// Random Hermitian matrix with entries in a small box.
pub fn random_hermitian<T: Scalar, R: Rng>(rng: &mut R, d: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex::new(entry(rng), T::zero());
        for j in i + 1..d {
            let z = Complex::new(entry::<T, R>(rng), entry::<T, R>(rng));
            m[(j, i)] = z.conj();
            m[(i, j)] = z;
        }
    }
    m
}

/// A random unitary, taken as the eigenvector matrix of a random Hermitian.
pub fn random_unitary<T: RealScalar, R: Rng>(rng: &mut R, d: usize) -> Result<ComplexMatrix<T>> {
    Ok(hermitian_eigen(&random_hermitian::<T, R>(rng, d))?.1)
}

/// U diag(spectrum) U*.
pub fn hermitian_with_spectrum<T: RealScalar>(u: &ComplexMatrix<T>, spectrum: &[T]) -> Result<ComplexMatrix<T>> {
    Ok(u.mul(&ComplexMatrix::diagonal(spectrum))?.mul(&u.adjoint())?.hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_and_float_projections() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p: Projection<BigRational> = random_projection(&mut rng, 3, 2).unwrap();
        assert_eq!(p.rank(), 2);
        let q: Projection<f64> = random_projection(&mut rng, 4, 1).unwrap();
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_unitary::<f64, _>(&mut rng, 4).unwrap();
        assert!(u.mul(&u.adjoint()).unwrap().approx_eq(&ComplexMatrix::identity(4)));
    }
}
