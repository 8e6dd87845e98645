use crate::error::{Error, Result};
use crate::lattice::OrthoAlgebra;
use serde::Serialize;
use std::fmt;

/// The non-Boolean coefficient ε of a canonical form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Eps {
    Zero,
    P,
    NotP,
    Q,
    NotQ,
    One,
}

impl Eps {
    pub const ALL: [Eps; 6] = [Eps::Zero, Eps::P, Eps::NotP, Eps::Q, Eps::NotQ, Eps::One];

    pub fn eval<A: OrthoAlgebra>(self, alg: &A, p: &A::Elem, q: &A::Elem) -> A::Elem {
        match self {
            Eps::Zero => alg.zero(),
            Eps::P => p.clone(),
            Eps::NotP => alg.ortho(p),
            Eps::Q => q.clone(),
            Eps::NotQ => alg.ortho(q),
            Eps::One => alg.one(),
        }
    }

    pub fn ortho(self) -> Eps {
        match self {
            Eps::Zero => Eps::One,
            Eps::P => Eps::NotP,
            Eps::NotP => Eps::P,
            Eps::Q => Eps::NotQ,
            Eps::NotQ => Eps::Q,
            Eps::One => Eps::Zero,
        }
    }

    /// Substitute Q⊥ for Q.
    pub fn flip_q(self) -> Eps {
        match self {
            Eps::Q => Eps::NotQ,
            Eps::NotQ => Eps::Q,
            e => e,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Eps::Zero => "0",
            Eps::P => "P",
            Eps::NotP => "P'",
            Eps::Q => "Q",
            Eps::NotQ => "Q'",
            Eps::One => "1",
        }
    }
}

/// Canonical two-variable ortholattice polynomial
/// (P∧Q∧α) ∨ (P∧Q⊥∧β) ∨ (P⊥∧Q∧γ) ∨ (P⊥∧Q⊥∧δ) ∨ (ε∧⫫(P,Q)⊥).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KotasSpec {
    pub alpha: bool,
    pub beta: bool,
    pub gamma: bool,
    pub delta: bool,
    pub eps: Eps,
}

/// ε for →_j, j = 0..5.
const IMP_EPS: [Eps; 6] = [Eps::Zero, Eps::P, Eps::Q, Eps::NotP, Eps::NotQ, Eps::One];
/// ε for ∗_j, j = 0..5.
const CONJ_EPS: [Eps; 6] = [Eps::One, Eps::NotP, Eps::Q, Eps::P, Eps::NotQ, Eps::Zero];

impl KotasSpec {
    /// All 96 specs in a fixed order.
    pub fn all() -> Vec<KotasSpec> {
        let mut out = Vec::with_capacity(96);
        for bits in 0u8..16 {
            for eps in Eps::ALL {
                out.push(KotasSpec {
                    alpha: bits & 8 != 0,
                    beta: bits & 4 != 0,
                    gamma: bits & 2 != 0,
                    delta: bits & 1 != 0,
                    eps,
                });
            }
        }
        out
    }

    /// The spec of →_j: Boolean part (P⊥∧Q⊥)∨(P⊥∧Q)∨(P∧Q).
    pub fn implication(j: usize) -> Result<KotasSpec> {
        let eps = *IMP_EPS.get(j).ok_or_else(|| Error::Precondition(format!("j = {j} not in 0..5")))?;
        Ok(KotasSpec { alpha: true, beta: false, gamma: true, delta: true, eps })
    }

    /// The spec of ∗_j: Boolean part P∧Q.
    pub fn conjunction(j: usize) -> Result<KotasSpec> {
        let eps = *CONJ_EPS.get(j).ok_or_else(|| Error::Precondition(format!("j = {j} not in 0..5")))?;
        Ok(KotasSpec { alpha: true, beta: false, gamma: false, delta: false, eps })
    }

    /// The polynomial (P, Q) ↦ p(P, Q⊥)⊥.
    ///
    /// Substituting Q⊥ swaps the atoms P∧Q ↔ P∧Q⊥ and P⊥∧Q ↔ P⊥∧Q⊥; the
    /// complement then flips every coefficient inside ⫫ and replaces ε by
    /// ε⊥ inside ⫫⊥ (⫫ is central in the generated sublogic).
    pub fn dual(self) -> KotasSpec {
        KotasSpec {
            alpha: !self.beta,
            beta: !self.alpha,
            gamma: !self.delta,
            delta: !self.gamma,
            eps: self.eps.flip_q().ortho(),
        }
    }

    pub fn eval<A: OrthoAlgebra>(&self, alg: &A, p: &A::Elem, q: &A::Elem) -> A::Elem {
        let (np, nq) = (alg.ortho(p), alg.ortho(q));
        let mut acc = alg.zero();
        let terms = [
            (self.alpha, p, q),
            (self.beta, p, &nq),
            (self.gamma, &np, q),
            (self.delta, &np, &nq),
        ];
        for (on, x, y) in terms {
            if on {
                acc = alg.join(&acc, &alg.meet(x, y));
            }
        }
        if self.eps != Eps::Zero {
            let n = alg.ortho(&alg.commutator(p, q));
            acc = alg.join(&acc, &alg.meet(&self.eps.eval(alg, p, q), &n));
        }
        acc
    }

    /// Spec with the same Boolean part and ε = 0, i.e. the disjunctive normal
    /// form of the Boolean restriction.
    pub fn boolean_part(self) -> KotasSpec {
        KotasSpec { eps: Eps::Zero, ..self }
    }
}

impl fmt::Display for KotasSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x: bool| if x { 1 } else { 0 };
        write!(
            f,
            "kotas({},{},{},{},{})",
            b(self.alpha),
            b(self.beta),
            b(self.gamma),
            b(self.delta),
            self.eps.symbol()
        )
    }
}

/// →_j written out as in the explicit list, independent of [`KotasSpec`].
pub fn implication<A: OrthoAlgebra>(alg: &A, j: usize, p: &A::Elem, q: &A::Elem) -> Result<A::Elem> {
    let (np, nq) = (alg.ortho(p), alg.ortho(q));
    let m = |x: &A::Elem, y: &A::Elem| alg.meet(x, y);
    let jn = |x: &A::Elem, y: &A::Elem| alg.join(x, y);
    Ok(match j {
        0 => jn(&jn(&m(&np, &nq), &m(&np, q)), &m(p, q)),
        1 => jn(&jn(&m(&np, &nq), &m(&np, q)), &m(p, &jn(&np, q))),
        2 => jn(&m(&np, &nq), q),
        3 => jn(&np, &m(p, q)),
        4 => jn(&jn(&m(&jn(&np, q), &nq), &m(&np, q)), &m(p, q)),
        5 => jn(&np, q),
        _ => return Err(Error::Precondition(format!("j = {j} not in 0..5"))),
    })
}

/// ∗_j written out as in the explicit list, independent of [`KotasSpec`].
pub fn conjunction<A: OrthoAlgebra>(alg: &A, j: usize, p: &A::Elem, q: &A::Elem) -> Result<A::Elem> {
    let pq = alg.meet(p, q);
    let n = alg.ortho(&alg.commutator(p, q));
    let tail = match j {
        0 => n,
        1 => alg.meet(&alg.ortho(p), &n),
        2 => alg.meet(q, &n),
        3 => alg.meet(p, &n),
        4 => alg.meet(&alg.ortho(q), &n),
        5 => return Ok(pq),
        _ => return Err(Error::Precondition(format!("j = {j} not in 0..5"))),
    };
    Ok(alg.join(&pq, &tail))
}

/// The Sasaki projection P∧(P⊥∨Q).
pub fn sasaki_projection<A: OrthoAlgebra>(alg: &A, p: &A::Elem, q: &A::Elem) -> A::Elem {
    alg.meet(p, &alg.join(&alg.ortho(p), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::OrthoLattice;

    #[test]
    fn ninety_six_distinct_specs() {
        let all = KotasSpec::all();
        let mut d = all.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), 96);
    }

    #[test]
    fn dual_pairs_implications_with_conjunctions() {
        for j in 0..6 {
            let i = KotasSpec::implication(j).unwrap();
            assert_eq!(i.dual(), KotasSpec::conjunction(j).unwrap());
            assert_eq!(i.dual().dual(), i);
        }
        assert!(KotasSpec::implication(6).is_err());
    }

    #[test]
    fn sasaki_arrow_on_mo2() {
        let l = OrthoLattice::mo(2).unwrap();
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        let imp3 = KotasSpec::implication(3).unwrap();
        assert_eq!(imp3.eval(&l, &a, &b), l.ortho(a));
        let conj3 = KotasSpec::conjunction(3).unwrap();
        assert_eq!(conj3.eval(&l, &a, &b), a);
    }
}
