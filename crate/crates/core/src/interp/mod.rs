//! Q-valued interpretations I(→, ∗) of the bounded language over V^(Q).

mod census;
mod checks;
mod eval;

pub use census::{
    boolean_collapse_check, interpretation_census, non_normal_transfer_failure, takeuti_counterexample,
    CensusReport, CensusRow, CollapseReport, FailureReport, FailureWitness, TakeutiReport,
};
pub use checks::{
    absoluteness_check, bind_free, de_morgan_check, restriction_check, transfer_check, AbsolutenessReport,
    DeMorganReport, Equation, RestrictionReport, TransferReport,
};
pub use eval::{compile, truth_value, Compiled, Evaluator, Rel, TruthCache};

use crate::error::{Error, Result};
use crate::lattice::bits::Fnv;
use crate::lattice::{Elem, OrthoLattice};
use crate::ops::{check_conditions, BinaryOperation, KotasSpec};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Which interpretation: a polynomial pair I(→ⱼ, ∗ₖ) or a tabulated one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InterpId {
    Pair(u8, u8),
    Tabulated(String),
}

impl fmt::Display for InterpId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpId::Pair(j, k) => write!(f, "{j},{k}"),
            InterpId::Tabulated(name) => write!(f, "{name}"),
        }
    }
}

/// Name of the shipped interpretation with ∗ := ∨ and → := →₃.
pub const JOIN_CONJ: &str = "join-conj";
/// Name of the shipped interpretation with → := 1 and ∗ := ∗₅.
pub const CONST_IMP: &str = "const-imp";

/// A pair (→, ∗) of binary operations on one lattice. The flags are always
/// computed from the tables.
#[derive(Clone, Debug)]
pub struct Interpretation {
    lattice: Arc<OrthoLattice>,
    imp: BinaryOperation,
    conj: BinaryOperation,
    id: InterpId,
    normal: bool,
    self_dual: bool,
    nontrivial: bool,
    fingerprint: u64,
}

impl Interpretation {
    /// Build from arbitrary operations on `lattice`.
    pub fn new(id: InterpId, imp: BinaryOperation, conj: BinaryOperation) -> Result<Interpretation> {
        let lattice = imp.lattice().clone();
        if conj.lattice().fingerprint() != lattice.fingerprint() {
            return Err(Error::LatticeMismatch);
        }
        let l = &*lattice;
        let normal = check_conditions(&imp).lb.holds && check_conditions(&conj).gc.holds;
        let self_dual = conj.table() == imp.dual().table();
        let nontrivial = l.elements().all(|p| imp.apply(p, l.bottom()) == l.ortho(p))
            || l.elements().all(|p| conj.apply(p, l.top()) == p);
        let mut h = Fnv::new();
        h.write_u64(l.fingerprint());
        for &e in imp.table().iter().chain(conj.table()) {
            h.write_u64(e.0 as u64);
        }
        let fingerprint = h.finish();
        Ok(Interpretation { lattice, imp, conj, id, normal, self_dual, nontrivial, fingerprint })
    }

    /// I(→ⱼ, ∗ₖ).
    pub fn pair(lattice: Arc<OrthoLattice>, j: usize, k: usize) -> Result<Interpretation> {
        let imp = BinaryOperation::implication(lattice.clone(), j)?;
        let conj = BinaryOperation::conjunction(lattice, k)?;
        Interpretation::new(InterpId::Pair(j as u8, k as u8), imp, conj)
    }

    /// I(→₃, ∗₃).
    pub fn sasaki(lattice: Arc<OrthoLattice>) -> Interpretation {
        Interpretation::pair(lattice, 3, 3).expect("3,3 is a valid pair")
    }

    /// I(→₃, ∗₅).
    pub fn takeuti(lattice: Arc<OrthoLattice>) -> Interpretation {
        Interpretation::pair(lattice, 3, 5).expect("3,5 is a valid pair")
    }

    /// → := →₃ with ∗(P, Q) := P ∨ Q tabulated. Violates (GC).
    pub fn join_conjunction(lattice: Arc<OrthoLattice>) -> Interpretation {
        let imp = BinaryOperation::implication(lattice.clone(), 3).expect("j = 3");
        let conj = BinaryOperation::from_fn(lattice, "join", |l, p, q| l.join(p, q));
        Interpretation::new(InterpId::Tabulated(JOIN_CONJ.into()), imp, conj).expect("same lattice")
    }

    /// → := 1 constant with ∗ := ∗₅. Violates (LB).
    pub fn constant_implication(lattice: Arc<OrthoLattice>) -> Interpretation {
        let imp = BinaryOperation::from_fn(lattice.clone(), "one", |l, _, _| l.top());
        let conj = BinaryOperation::conjunction(lattice, 5).expect("k = 5");
        Interpretation::new(InterpId::Tabulated(CONST_IMP.into()), imp, conj).expect("same lattice")
    }

    /// All 36 polynomial pairs, j-major.
    pub fn all_pairs(lattice: &Arc<OrthoLattice>) -> Vec<Interpretation> {
        let mut out = Vec::with_capacity(36);
        for j in 0..6 {
            for k in 0..6 {
                out.push(Interpretation::pair(lattice.clone(), j, k).expect("j, k < 6"));
            }
        }
        out
    }

    /// The six pairs I(→ⱼ, ∗ⱼ).
    pub fn diagonal(lattice: &Arc<OrthoLattice>) -> Vec<Interpretation> {
        (0..6).map(|j| Interpretation::pair(lattice.clone(), j, j).expect("j < 6")).collect()
    }

    /// Parse `j,k`, `sasaki`, `takeuti`, `join-conj` or `const-imp`.
    pub fn from_name(lattice: Arc<OrthoLattice>, name: &str) -> Result<Interpretation> {
        let name = name.trim();
        match name {
            "sasaki" => return Ok(Interpretation::sasaki(lattice)),
            "takeuti" => return Ok(Interpretation::takeuti(lattice)),
            JOIN_CONJ => return Ok(Interpretation::join_conjunction(lattice)),
            CONST_IMP => return Ok(Interpretation::constant_implication(lattice)),
            _ => {}
        }
        let bad = || Error::Input(format!("unknown interpretation `{name}` (expected j,k with j,k in 0..=5)"));
        let (j, k) = name.split_once(',').ok_or_else(bad)?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        if j > 5 || k > 5 {
            return Err(bad());
        }
        Interpretation::pair(lattice, j, k)
    }

    pub fn lattice(&self) -> &Arc<OrthoLattice> {
        &self.lattice
    }

    pub fn imp(&self) -> &BinaryOperation {
        &self.imp
    }

    pub fn conj(&self) -> &BinaryOperation {
        &self.conj
    }

    pub fn id(&self) -> &InterpId {
        &self.id
    }

    /// → satisfies (LB) and ∗ satisfies (GC).
    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// P∗Q = (P→Q⊥)⊥ for all P, Q.
    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// P→0 = P⊥ for all P, or P∗1 = P for all P. Either one is enough for
    /// non-triviality.
    pub fn is_nontrivial(&self) -> bool {
        self.nontrivial
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    #[inline]
    pub fn implies(&self, p: Elem, q: Elem) -> Elem {
        self.imp.apply(p, q)
    }

    #[inline]
    pub fn and_then(&self, p: Elem, q: Elem) -> Elem {
        self.conj.apply(p, q)
    }

    /// The pair recomputed on another lattice, used for sublogics. Polynomial
    /// pairs are re-evaluated there; tabulated ones are carried over through
    /// `emb`, which must be closed under both operations.
    pub fn on_sublattice(&self, sub: Arc<OrthoLattice>, emb: &[Elem]) -> Result<Interpretation> {
        if let InterpId::Pair(j, k) = self.id {
            return Interpretation::pair(sub, j as usize, k as usize);
        }
        let mut back = vec![None; self.lattice.len()];
        for (i, &e) in emb.iter().enumerate() {
            back[e.index()] = Some(Elem(i as u16));
        }
        let restrict = |op: &BinaryOperation| -> Result<BinaryOperation> {
            let mut t = Vec::with_capacity(emb.len() * emb.len());
            for &p in emb {
                for &q in emb {
                    let r = op.apply(p, q);
                    t.push(back[r.index()].ok_or_else(|| {
                        Error::Precondition(format!("{} is not closed on the sublogic", op.name()))
                    })?);
                }
            }
            BinaryOperation::from_table(sub.clone(), op.name(), t)
        };
        Interpretation::new(self.id.clone(), restrict(&self.imp)?, restrict(&self.conj)?)
    }

    /// The canonical forms of the pair, when it is polynomial.
    pub fn specs(&self) -> Option<(KotasSpec, KotasSpec)> {
        match self.id {
            InterpId::Pair(j, k) => Some((
                KotasSpec::implication(j as usize).ok()?,
                KotasSpec::conjunction(k as usize).ok()?,
            )),
            InterpId::Tabulated(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let m2 = Arc::new(OrthoLattice::mo(2).unwrap());
        for i in Interpretation::all_pairs(&m2) {
            let InterpId::Pair(j, k) = *i.id() else { unreachable!() };
            assert!(i.is_normal() && i.is_nontrivial());
            assert_eq!(i.is_self_dual(), j == k, "{j},{k}");
        }
        let jc = Interpretation::join_conjunction(m2.clone());
        assert!(!jc.is_normal() && jc.is_nontrivial());
        let ci = Interpretation::constant_implication(m2.clone());
        assert!(!ci.is_normal() && ci.is_nontrivial());
        assert_eq!(Interpretation::from_name(m2.clone(), "takeuti").unwrap().id(), &InterpId::Pair(3, 5));
        assert_eq!(Interpretation::from_name(m2.clone(), " 2, 4").unwrap().id(), &InterpId::Pair(2, 4));
        assert!(Interpretation::from_name(m2, "6,1").is_err());
    }

    #[test]
    fn boolean_pairs_coincide() {
        let b3 = Arc::new(OrthoLattice::boolean(3).unwrap());
        let all = Interpretation::all_pairs(&b3);
        assert!(all.iter().all(|i| i.fingerprint() == all[0].fingerprint() && i.is_self_dual()));
    }
}
