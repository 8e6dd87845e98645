use super::kotas::{self, KotasSpec};
use crate::error::{Error, Result};
use crate::lattice::{Elem, OrthoLattice};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// How a [`BinaryOperation`] was defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpKind {
    /// An explicit table with a free-form name.
    Tabulated(String),
    /// A canonical-form polynomial.
    Kotas(KotasSpec),
    /// →_j from the explicit list.
    Implication(u8),
    /// ∗_j from the explicit list.
    Conjunction(u8),
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Tabulated(name) => write!(f, "{name}"),
            OpKind::Kotas(s) => write!(f, "{s}"),
            OpKind::Implication(j) => write!(f, "->{j}"),
            OpKind::Conjunction(j) => write!(f, "*{j}"),
        }
    }
}

/// A total binary operation on a finite lattice.
pub struct BinaryOperation {
    lattice: Arc<OrthoLattice>,
    kind: OpKind,
    table: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for BinaryOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryOperation({})", self.kind)
    }
}

impl Clone for BinaryOperation {
    fn clone(&self) -> Self {
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(t.clone());
        }
        BinaryOperation { lattice: self.lattice.clone(), kind: self.kind.clone(), table }
    }
}

impl BinaryOperation {
    pub fn kotas(lattice: Arc<OrthoLattice>, spec: KotasSpec) -> BinaryOperation {
        BinaryOperation { lattice, kind: OpKind::Kotas(spec), table: OnceLock::new() }
    }

    pub fn implication(lattice: Arc<OrthoLattice>, j: usize) -> Result<BinaryOperation> {
        KotasSpec::implication(j)?;
        Ok(BinaryOperation { lattice, kind: OpKind::Implication(j as u8), table: OnceLock::new() })
    }

    pub fn conjunction(lattice: Arc<OrthoLattice>, j: usize) -> Result<BinaryOperation> {
        KotasSpec::conjunction(j)?;
        Ok(BinaryOperation { lattice, kind: OpKind::Conjunction(j as u8), table: OnceLock::new() })
    }

    /// Tabulate an arbitrary function of two elements.
    pub fn from_fn(
        lattice: Arc<OrthoLattice>,
        name: impl Into<String>,
        f: impl Fn(&OrthoLattice, Elem, Elem) -> Elem,
    ) -> BinaryOperation {
        let n = lattice.len();
        let mut t = Vec::with_capacity(n * n);
        for p in lattice.elements() {
            for q in lattice.elements() {
                t.push(f(&lattice, p, q));
            }
        }
        let table = OnceLock::new();
        let _ = table.set(t);
        BinaryOperation { lattice, kind: OpKind::Tabulated(name.into()), table }
    }

    /// A tabulated operation from a row-major table of n² entries.
    pub fn from_table(lattice: Arc<OrthoLattice>, name: impl Into<String>, t: Vec<Elem>) -> Result<BinaryOperation> {
        let n = lattice.len();
        if t.len() != n * n {
            return Err(Error::Input(format!("table has {} entries, expected {}", t.len(), n * n)));
        }
        for &e in &t {
            lattice.check(e)?;
        }
        let table = OnceLock::new();
        let _ = table.set(t);
        Ok(BinaryOperation { lattice, kind: OpKind::Tabulated(name.into()), table })
    }

    pub fn lattice(&self) -> &Arc<OrthoLattice> {
        &self.lattice
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    fn compute(&self, p: Elem, q: Elem) -> Elem {
        let l = &*self.lattice;
        match &self.kind {
            OpKind::Kotas(s) => s.eval(l, &p, &q),
            OpKind::Implication(j) => kotas::implication(l, *j as usize, &p, &q).expect("j checked"),
            OpKind::Conjunction(j) => kotas::conjunction(l, *j as usize, &p, &q).expect("j checked"),
            OpKind::Tabulated(_) => unreachable!("tabulated ops are materialized at construction"),
        }
    }

    pub fn table(&self) -> &[Elem] {
        self.table.get_or_init(|| {
            let l = &self.lattice;
            let mut t = Vec::with_capacity(l.len() * l.len());
            for p in l.elements() {
                for q in l.elements() {
                    t.push(self.compute(p, q));
                }
            }
            t
        })
    }

    #[inline]
    pub fn apply(&self, p: Elem, q: Elem) -> Elem {
        self.table()[p.index() * self.lattice.len() + q.index()]
    }

    pub fn same_table(&self, other: &BinaryOperation) -> bool {
        self.lattice.fingerprint() == other.lattice.fingerprint() && self.table() == other.table()
    }

    /// The operation (P, Q) ↦ (P op Q⊥)⊥. Applied to an implication it
    /// yields the dual conjunction; applying it twice gives back the input.
    pub fn dual(&self) -> BinaryOperation {
        let name = format!("dual({})", self.kind);
        BinaryOperation::from_fn(self.lattice.clone(), name, |l, p, q| l.ortho(self.apply(p, l.ortho(q))))
    }
}

/// The dual conjunction of an implication, P∗Q = (P→Q⊥)⊥.
pub fn dual_conjunction(op: &BinaryOperation) -> BinaryOperation {
    op.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rejects_wrong_size() {
        let l = Arc::new(OrthoLattice::mo(2).unwrap());
        assert!(BinaryOperation::from_table(l.clone(), "t", vec![Elem(0); 35]).is_err());
        assert!(BinaryOperation::from_table(l, "t", vec![Elem(9); 36]).is_err());
    }

    #[test]
    fn dual_is_involution_on_mo2() {
        let l = Arc::new(OrthoLattice::mo(2).unwrap());
        for j in 0..6 {
            let i = BinaryOperation::implication(l.clone(), j).unwrap();
            assert!(i.dual().dual().same_table(&i));
        }
    }
}
