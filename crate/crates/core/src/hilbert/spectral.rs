use super::matrix::{negligible, ComplexMatrix};
use super::projection::{Projection, ProjectionLogic};
use crate::error::{Error, Result};
use crate::ops::KotasSpec;
use crate::scalar::RealScalar;
use num_complex::Complex;

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix, by cyclic complex Jacobi rotations.
pub fn hermitian_eigen<T: RealScalar>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !a.is_hermitian() {
        return Err(Error::Precondition("matrix is not Hermitian".into()));
    }
    let n = a.dim();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut scale = T::zero();
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)].norm_sqr();
                if i == j {
                    scale = scale + x;
                } else {
                    off = off + x;
                }
            }
        }
        if off <= eps * eps * (scale + off) || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r.is_zero() {
                    continue;
                }
                let phi = apq.arg();
                let (app, aqq) = (m[(p, p)].re, m[(q, q)].re);
                let two = T::one() + T::one();
                let theta = (two * r).atan2(app - aqq) / two;
                let (c, s) = (theta.cos(), theta.sin());
                let e = Complex::new(phi.cos(), -phi.sin());
                // columns p, q of the rotation: (c, s·e) and (−s, c·e)
                let vpp = Complex::new(c, T::zero());
                let vqp = e * s;
                let vpq = Complex::new(-s, T::zero());
                let vqq = e * c;
                rotate(&mut m, &mut v, p, q, [vpp, vpq, vqp, vqq]);
            }
        }
    }
    let mut pairs: Vec<(T, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let vals = pairs.iter().map(|x| x.0).collect();
    let vecs = v.select_columns(&pairs.iter().map(|x| x.1).collect::<Vec<_>>());
    Ok((vals, vecs))
}

/// m ← R* m R and v ← v R for the unitary R acting on coordinates p, q.
fn rotate<T: RealScalar>(
    m: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    [rpp, rpq, rqp, rqq]: [Complex<T>; 4],
) {
    let n = m.dim();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * rpp + mkq * rqp;
        m[(k, q)] = mkp * rpq + mkq * rqq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * rpp + vkq * rqp;
        v[(k, q)] = vkp * rpq + vkq * rqq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = rpp.conj() * mpk + rqp.conj() * mqk;
        m[(q, k)] = rpq.conj() * mpk + rqq.conj() * mqk;
    }
}

/// A finite right-continuous spectral family: E(λ) is the projection of the
/// greatest cut at or below λ, and 0 below the first cut. Cut values within
/// the clustering tolerance of λ count as reached.
#[derive(Clone, Debug)]
pub struct SpectralFamily<T> {
    dim: usize,
    tol: T,
    cuts: Vec<(T, Projection<T>)>,
}

impl<T: RealScalar> SpectralFamily<T> {
    pub fn cuts(&self) -> &[(T, Projection<T>)] {
        &self.cuts
    }

    pub fn at(&self, lambda: T) -> Projection<T> {
        self.cuts
            .iter()
            .rev()
            .find(|(c, _)| *c <= lambda + self.tol)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(|| Projection::zero(self.dim))
    }

    /// ∑ λᵢ (E(λᵢ) − E(λᵢ₋₁)).
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        let mut prev = ComplexMatrix::zeros(self.dim, self.dim);
        for (lambda, e) in &self.cuts {
            let step = e.matrix().sub(&prev).expect("same dimension");
            acc = acc.add(&step.scale(&Complex::new(*lambda, T::zero()))).expect("same dimension");
            prev = e.matrix().clone();
        }
        acc
    }
}

/// Eigenvalues closer than this (relative to the spectral radius) are merged
/// into one cut.
fn cluster_tol<T: RealScalar>(vals: &[T]) -> T {
    let r = vals.iter().fold(T::one(), |a, &v| a.max(v.abs()));
    T::from(1e-7).unwrap_or_else(T::epsilon) * r
}

pub fn spectral_family<T: RealScalar>(a: &ComplexMatrix<T>) -> Result<SpectralFamily<T>> {
    let (vals, vecs) = hermitian_eigen(a)?;
    let n = a.dim();
    let tol = cluster_tol(&vals);
    let mut cuts: Vec<(T, Projection<T>)> = Vec::new();
    let mut acc = ComplexMatrix::zeros(n, n);
    let mut i = 0;
    while i < n {
        let mut k = i;
        let mut sum = vals[i];
        while k + 1 < n && vals[k + 1] - vals[i] <= tol {
            k += 1;
            sum = sum + vals[k];
        }
        for c in i..=k {
            let col = ComplexMatrix::from_columns(&[vecs.column(c)])?;
            acc = acc.add(&col.mul(&col.adjoint())?)?;
        }
        let lambda = sum / T::from(k - i + 1).expect("small count");
        let e = if k + 1 == n { Projection::identity(n) } else { Projection::new(acc.hermitian_part())? };
        cuts.push((lambda, e));
        i = k + 1;
    }
    Ok(SpectralFamily { dim: n, tol, cuts })
}

fn merged_cuts<T: RealScalar>(fa: &SpectralFamily<T>, fb: &SpectralFamily<T>) -> Vec<T> {
    let mut pts: Vec<T> = fa.cuts.iter().chain(&fb.cuts).map(|c| c.0).collect();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let tol = fa.tol.max(fb.tol);
    pts.dedup_by(|x, y| (*x - *y).abs() <= tol);
    pts
}

/// A ≼ B iff E^B(λ) ≤ E^A(λ) at every cut of either family.
pub fn spectral_order_leq<T: RealScalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(a.dim(), b.dim()));
    }
    let (fa, fb) = (spectral_family(a)?, spectral_family(b)?);
    for r in merged_cuts(&fa, &fb) {
        if !fb.at(r).leq(&fa.at(r))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (⋁_r E^B(r) ∗ E^A(r)⊥)⊥ over the merged cut points, with ∗ a
/// two-variable polynomial evaluated directly in the projection lattice.
pub fn q_value_order<T: RealScalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, conj: &KotasSpec) -> Result<Projection<T>> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(a.dim(), b.dim()));
    }
    let logic = ProjectionLogic::<T>::new(a.dim())?;
    let (fa, fb) = (spectral_family(a)?, spectral_family(b)?);
    let mut acc = Projection::zero(a.dim());
    for r in merged_cuts(&fa, &fb) {
        let term = conj.eval(&logic, &fb.at(r), &fa.at(r).ortho());
        acc = acc.join(&term)?;
    }
    Ok(acc.ortho())
}

/// Smallest eigenvalue of a Hermitian matrix is ≥ −τ·max(1, ‖M‖).
pub fn is_positive_semidefinite<T: RealScalar>(m: &ComplexMatrix<T>) -> Result<bool> {
    let (vals, _) = hermitian_eigen(m)?;
    let r = vals.iter().fold(T::one(), |a, &v| a.max(v.abs()));
    Ok(vals.first().is_none_or(|&v| v >= -(T::tolerance() * r)))
}

pub fn power<T: RealScalar>(m: &ComplexMatrix<T>, n: u32) -> Result<ComplexMatrix<T>> {
    let mut acc = ComplexMatrix::identity(m.dim());
    for _ in 0..n {
        acc = acc.mul(m)?;
    }
    Ok(acc.hermitian_part())
}

/// Exact-zero test on a matrix, shared by diagnostics.
pub fn is_zero_matrix<T: RealScalar>(m: &ComplexMatrix<T>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| negligible(&m[(i, j)])))
}
