//! The conjugation family P∘θQ = e^{iθP} Q e^{−iθP} and the operations
//! ∗_{j,θ,i} built from it.

use super::matrix::ComplexMatrix;
use super::projection::{Projection, ProjectionLogic};
use crate::error::{Error, Result};
use crate::lattice::OrthoAlgebra;
use crate::ops::conjunction;
use crate::scalar::{RealScalar, Scalar};
use num_complex::Complex;
use num_traits::One;

/// e^{iθ} as a complex number.
pub fn phase<T: RealScalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

fn check_unit<T: Scalar>(w: &Complex<T>) -> Result<()> {
    let n = w.re.clone() * w.re.clone() + w.im.clone() * w.im.clone() - T::one();
    if n.negligible() {
        Ok(())
    } else {
        Err(Error::Precondition("phase is not a unit complex number".into()))
    }
}

/// P∘θQ by the expansion Q + (w−1)PQ + (w̄−1)QP + (2 − w − w̄)PQP with w = e^{iθ}.
pub fn takeuti_expansion<T: Scalar>(p: &Projection<T>, q: &Projection<T>, w: &Complex<T>) -> Result<ComplexMatrix<T>> {
    check_unit(w)?;
    let one = Complex::<T>::one();
    let (pm, qm) = (p.matrix(), q.matrix());
    let pq = pm.mul(qm)?;
    let qp = qm.mul(pm)?;
    let pqp = pq.mul(pm)?;
    let two = one.clone() + one.clone();
    let c_pqp = two - w.clone() - w.conj();
    qm.add(&pq.scale(&(w.clone() - one.clone())))?
        .add(&qp.scale(&(w.conj() - one)))?
        .add(&pqp.scale(&c_pqp))
}

/// P∘θQ by direct conjugation with U = e^{iθP} = I + (w−1)P.
pub fn takeuti_conjugation<T: Scalar>(p: &Projection<T>, q: &Projection<T>, w: &Complex<T>) -> Result<ComplexMatrix<T>> {
    check_unit(w)?;
    let d = p.dim();
    let u = ComplexMatrix::identity(d).add(&p.matrix().scale(&(w.clone() - Complex::one())))?;
    u.mul(q.matrix())?.mul(&u.adjoint())
}

/// P∘θQ for a unit phase w = e^{iθ}; the result is validated as a projection.
pub fn takeuti_phase<T: Scalar>(p: &Projection<T>, q: &Projection<T>, w: &Complex<T>) -> Result<Projection<T>> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension(p.dim(), q.dim()));
    }
    let mut m = takeuti_expansion(p, q, w)?;
    if !T::EXACT {
        m = m.hermitian_part();
    }
    Projection::new(m)
}

/// P∘θQ for a real angle (floating mode).
pub fn takeuti_theta<T: RealScalar>(p: &Projection<T>, q: &Projection<T>, theta: T) -> Result<Projection<T>> {
    takeuti_phase(p, q, &phase(theta))
}

/// Value of ∗_{j,θ,i} together with the closed form it should equal.
#[derive(Clone, Debug)]
pub struct StarResult<T> {
    pub value: Projection<T>,
    pub closed_form: Projection<T>,
    pub holds: bool,
}

/// Closed form of P∗_{j,θ,i}Q.
///
/// Cases (iii), (v), (viii) and (x) join the non-Boolean part onto P∧Q.
/// Both facts used: ⫫(P,Q) commutes with U = e^{iθP}, and U fixes P∧Q.
pub fn star_closed_form<T: Scalar>(
    j: usize,
    i: usize,
    p: &Projection<T>,
    q: &Projection<T>,
    w: &Complex<T>,
) -> Result<Projection<T>> {
    let logic = ProjectionLogic::<T>::new(p.dim())?;
    let c_perp = logic.commutator(p, q).ortho();
    let pq = p.meet(q)?;
    let with_tail = |x: Projection<T>| -> Result<Projection<T>> { pq.join(&x.meet(&c_perp)?) };
    match (j, i) {
        (2, 0) => with_tail(takeuti_phase(p, q, w)?),
        (4, 0) => with_tail(takeuti_phase(p, &q.ortho(), w)?),
        (1, 1) => with_tail(takeuti_phase(&q.ortho(), &p.ortho(), w)?),
        (3, 1) => with_tail(takeuti_phase(&q.ortho(), p, w)?),
        (j, 0 | 1) if j <= 5 => conjunction(&logic, j, p, q),
        _ => Err(Error::Precondition(format!("(j, i) = ({j}, {i}) out of range"))),
    }
}

/// P∗_{j,θ,0}Q = P ∗_j (P∘θQ) and P∗_{j,θ,1}Q = (Q⊥∘θP) ∗_j Q, checked
/// against the closed form. A mismatch is a numerical-integrity error.
pub fn star_j_theta_i<T: Scalar>(
    j: usize,
    w: &Complex<T>,
    i: usize,
    p: &Projection<T>,
    q: &Projection<T>,
) -> Result<StarResult<T>> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension(p.dim(), q.dim()));
    }
    let logic = ProjectionLogic::<T>::new(p.dim())?;
    let value = match i {
        0 => conjunction(&logic, j, p, &takeuti_phase(p, q, w)?)?,
        1 => conjunction(&logic, j, &takeuti_phase(&q.ortho(), p, w)?, q)?,
        _ => return Err(Error::Precondition(format!("i = {i} not in {{0, 1}}"))),
    };
    let closed_form = star_closed_form(j, i, p, q, w)?;
    let holds = value.approx_eq(&closed_form);
    if !holds {
        return Err(Error::Numerical(format!("identity for (j, i) = ({j}, {i}) fails")));
    }
    Ok(StarResult { value, closed_form, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn c(n: i64, d: i64) -> Complex<Q> {
        Complex::new(Q::new(n.into(), d.into()), Q::zero())
    }

    #[test]
    fn exact_phase_conjugation() {
        let p = Projection::onto_span(&[vec![c(1, 1), c(0, 1)]]).unwrap();
        let q = Projection::onto_span(&[vec![c(1, 1), c(1, 1)]]).unwrap();
        // w = (3 + 4i)/5
        let w = Complex::new(Q::new(3.into(), 5.into()), Q::new(4.into(), 5.into()));
        let a = takeuti_expansion(&p, &q, &w).unwrap();
        let b = takeuti_conjugation(&p, &q, &w).unwrap();
        assert_eq!(a, b);
        assert!(Projection::new(a).is_ok());
        assert!(takeuti_expansion(&p, &q, &c(2, 1)).is_err());
    }

    #[test]
    fn zero_angle_is_identity_conjugation() {
        let p = Projection::onto_span(&[vec![c(1, 1), c(0, 1)]]).unwrap();
        let q = Projection::onto_span(&[vec![c(1, 1), c(1, 1)]]).unwrap();
        assert_eq!(takeuti_phase(&p, &q, &c(1, 1)).unwrap(), q);
    }
}
