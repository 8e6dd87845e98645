use super::{Elem, OrthoLattice};

/// The operations shared by finite lattices and projection lattices.
///
/// Polynomials in the logical-operations layer are written once against this
/// trait and evaluated on either carrier.
pub trait OrthoAlgebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn ortho(&self, a: &Self::Elem) -> Self::Elem;
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.same(&self.meet(a, b), a)
    }

    /// P ⫦ Q iff P = (P∧Q) ∨ (P∧Q⊥).
    fn commutes(&self, p: &Self::Elem, q: &Self::Elem) -> bool {
        let split = self.join(&self.meet(p, q), &self.meet(p, &self.ortho(q)));
        self.same(&split, p)
    }

    /// Marsden commutator (P∧Q)∨(P∧Q⊥)∨(P⊥∧Q)∨(P⊥∧Q⊥).
    fn commutator(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        let (np, nq) = (self.ortho(p), self.ortho(q));
        let a = self.join(&self.meet(p, q), &self.meet(p, &nq));
        let b = self.join(&self.meet(&np, q), &self.meet(&np, &nq));
        self.join(&a, &b)
    }
}

impl OrthoAlgebra for OrthoLattice {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        self.bottom()
    }
    fn one(&self) -> Elem {
        self.top()
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        OrthoLattice::meet(self, *a, *b)
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        OrthoLattice::join(self, *a, *b)
    }
    fn ortho(&self, a: &Elem) -> Elem {
        OrthoLattice::ortho(self, *a)
    }
    fn same(&self, a: &Elem, b: &Elem) -> bool {
        a == b
    }
    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        OrthoLattice::leq(self, *a, *b)
    }
}
