use super::bits::BitRows;
use super::{Elem, ElementSet, OrthoLattice};
use crate::error::{Error, Result};

/// Result of splitting the sublogic generated by a set A along ⫫(A).
#[derive(Debug)]
pub struct Decomposition {
    /// E = ⫫(A).
    pub commutator: Elem,
    /// A^!!.
    pub sublogic: ElementSet,
    /// [0, E] in A^!! with ortho x ↦ x⊥∧E.
    pub boolean_factor: OrthoLattice,
    pub boolean_embedding: Vec<Elem>,
    /// [0, E⊥] in A^!! with ortho x ↦ x⊥∧E⊥.
    pub other_factor: OrthoLattice,
    pub other_embedding: Vec<Elem>,
    /// X ↦ (X∧E, X∧E⊥) is an order and ortho isomorphism onto the product.
    pub isomorphic: bool,
}

/// Sign patterns are enumerated explicitly, so keep the set small.
const BK_MAX_SET: usize = 20;

impl OrthoLattice {
    fn commute_rows(&self) -> &BitRows {
        self.commute.get_or_init(|| {
            let mut m = BitRows::new(self.len());
            for p in self.elements() {
                for q in self.elements() {
                    let split = self.join(self.meet(p, q), self.meet(p, self.ortho(q)));
                    if split == p {
                        m.set(p.index(), q.index());
                    }
                }
            }
            m
        })
    }

    /// P ⫦ Q.
    pub fn commutes(&self, p: Elem, q: Elem) -> bool {
        self.commute_rows().get(p.index(), q.index())
    }

    /// A^! = {P | P ⫦ Q for all Q ∈ A}.
    pub fn commutant(&self, a: &ElementSet) -> Result<ElementSet> {
        self.check_set(a)?;
        let m = self.commute_rows();
        let members = self
            .elements()
            .filter(|p| a.members().iter().all(|q| m.get(p.index(), q.index())));
        ElementSet::new(self, members)
    }

    /// A^!!, the sublogic generated by A.
    pub fn generated_sublogic(&self, a: &ElementSet) -> Result<ElementSet> {
        self.commutant(&self.commutant(a)?)
    }

    /// The center L^!.
    pub fn center(&self) -> ElementSet {
        self.commutant(&ElementSet::all(self)).expect("same lattice")
    }

    /// ⫫(P,Q) = (P∧Q)∨(P∧Q⊥)∨(P⊥∧Q)∨(P⊥∧Q⊥).
    pub fn commutator_pair(&self, p: Elem, q: Elem) -> Elem {
        let (np, nq) = (self.ortho(p), self.ortho(q));
        self.join_all([self.meet(p, q), self.meet(p, nq), self.meet(np, q), self.meet(np, nq)])
    }

    /// ⫫(A): the largest E in A^! ∩ A^!! below which all members of A
    /// pairwise commute. ⫫(∅) is the top.
    pub fn commutator_set(&self, a: &ElementSet) -> Result<Elem> {
        self.check_set(a)?;
        if a.is_empty() {
            return Ok(self.top());
        }
        let once = self.commutant(a)?;
        let twice = self.commutant(&once)?;
        let cands = once.intersection(&twice)?;
        let good: Vec<Elem> = cands
            .members()
            .iter()
            .copied()
            .filter(|&e| {
                a.members().iter().all(|&p| {
                    a.members().iter().all(|&q| self.commutes(self.meet(p, e), self.meet(q, e)))
                })
            })
            .collect();
        let max = self.join_all(good.iter().copied());
        if !good.contains(&max) {
            return Err(Error::InvalidLattice("commutator has no maximum".into()));
        }
        Ok(max)
    }

    /// Bruns–Kalmbach form of ⫫(A): the join over sign patterns θ of
    /// ⋀_{P∈A} P^θ(P).
    pub fn commutator_bk(&self, a: &ElementSet) -> Result<Elem> {
        self.check_set(a)?;
        let items = a.members();
        if items.len() > BK_MAX_SET {
            return Err(Error::Capacity(format!("{} generators for a sign-pattern join", items.len())));
        }
        let mut acc = self.bottom();
        for mask in 0u64..(1u64 << items.len()) {
            let m = self.meet_all(items.iter().enumerate().map(|(i, &p)| {
                if mask >> i & 1 == 1 {
                    self.ortho(p)
                } else {
                    p
                }
            }));
            acc = self.join(acc, m);
        }
        Ok(acc)
    }

    pub fn is_boolean(&self) -> bool {
        let m = self.commute_rows();
        self.elements().all(|p| m.count_row(p.index()) as usize == self.len())
    }

    /// P∧Q = 0 for all distinct P, Q other than 1.
    pub fn is_extremely_noncommutative(&self) -> bool {
        let top = self.top();
        self.elements().filter(|&p| p != top).all(|p| {
            self.elements()
                .filter(|&q| q != top && q != p)
                .all(|q| self.meet(p, q) == self.bottom())
        })
    }

    /// Split A^!! into [0, ⫫(A)] × [0, ⫫(A)⊥] and verify the isomorphism.
    pub fn decompose(&self, a: &ElementSet) -> Result<Decomposition> {
        if a.is_empty() {
            return Err(Error::Precondition("decompose needs a nonempty set".into()));
        }
        let e = self.commutator_set(a)?;
        let r = self.generated_sublogic(a)?;
        let ne = self.ortho(e);
        let (bf, bemb) = self.relative_interval(&r, e)?;
        let (of, oemb) = self.relative_interval(&r, ne)?;
        let isomorphic = self.check_split(&r, e, &bf, &bemb, &of, &oemb);
        Ok(Decomposition {
            commutator: e,
            sublogic: r,
            boolean_factor: bf,
            boolean_embedding: bemb,
            other_factor: of,
            other_embedding: oemb,
            isomorphic,
        })
    }

    fn check_split(
        &self,
        r: &ElementSet,
        e: Elem,
        bf: &OrthoLattice,
        bemb: &[Elem],
        of: &OrthoLattice,
        oemb: &[Elem],
    ) -> bool {
        let ne = self.ortho(e);
        let image = |x: Elem| -> Option<(Elem, Elem)> {
            let i = bemb.binary_search(&self.meet(x, e)).ok()?;
            let j = oemb.binary_search(&self.meet(x, ne)).ok()?;
            Some((Elem(i as u16), Elem(j as u16)))
        };
        let mut imgs = Vec::with_capacity(r.len());
        for &x in r.members() {
            match image(x) {
                Some(p) => imgs.push(p),
                None => return false,
            }
        }
        let mut sorted = imgs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != r.len() || r.len() != bf.len() * of.len() {
            return false;
        }
        let m = r.members();
        for (i, &x) in m.iter().enumerate() {
            let (x1, x2) = imgs[i];
            match image(self.ortho(x)) {
                Some(o) if o == (bf.ortho(x1), of.ortho(x2)) => {}
                _ => return false,
            }
            for (j, &y) in m.iter().enumerate() {
                let (y1, y2) = imgs[j];
                if self.leq(x, y) != (bf.leq(x1, y1) && of.leq(x2, y2)) {
                    return false;
                }
            }
        }
        true
    }
}
