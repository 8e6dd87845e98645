use super::binop::BinaryOperation;
use super::boolpoly::BoolPoly;
use super::kotas::KotasSpec;
use crate::error::{Error, Result};
use crate::lattice::{Elem, ElementSet, OrthoLattice};
use serde::Serialize;
use std::collections::BTreeSet;

/// Elements of a failing instance, by index and label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<(u16, String)>,
}

impl Witness {
    fn new(l: &OrthoLattice, els: &[Elem]) -> Witness {
        Witness { elements: els.iter().map(|&e| (e.0, l.label(e).to_string())).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Check {
    fn scan(l: &OrthoLattice, mut fails: impl FnMut(Elem, Elem) -> bool) -> Check {
        for p in l.elements() {
            for q in l.elements() {
                if fails(p, q) {
                    return Check { holds: false, witness: Some(Witness::new(l, &[p, q])) };
                }
            }
        }
        Check { holds: true, witness: None }
    }
}

/// The implicative conditions (LB), (E), (MP), (MT), (NG) and the
/// conjunctive condition (GC).
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub op: String,
    pub lattice_fingerprint: String,
    pub lb: Check,
    pub e: Check,
    pub mp: Check,
    pub mt: Check,
    pub ng: Check,
    pub gc: Check,
}

impl ConditionReport {
    /// (E), (MP), (MT) and (NG) together.
    pub fn material(&self) -> bool {
        self.e.holds && self.mp.holds && self.mt.holds && self.ng.holds
    }
}

pub fn check_conditions(op: &BinaryOperation) -> ConditionReport {
    let l = &**op.lattice();
    let f = |p, q| op.apply(p, q);
    ConditionReport {
        op: op.name(),
        lattice_fingerprint: format!("{:016x}", l.fingerprint()),
        lb: Check::scan(l, |p, q| l.commutes(p, q) && f(p, q) != l.join(l.ortho(p), q)),
        e: Check::scan(l, |p, q| (f(p, q) == l.top()) != l.leq(p, q)),
        mp: Check::scan(l, |p, q| !l.leq(l.meet(p, f(p, q)), q)),
        mt: Check::scan(l, |p, q| !l.leq(l.meet(l.ortho(q), f(p, q)), l.ortho(p))),
        ng: Check::scan(l, |p, q| !l.leq(l.meet(p, l.ortho(q)), l.ortho(f(p, q)))),
        gc: Check::scan(l, |p, q| l.commutes(p, q) && f(p, q) != l.meet(p, q)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalityReport {
    pub op: String,
    pub l1: Check,
    pub l2: Check,
}

impl LocalityReport {
    pub fn local(&self) -> bool {
        self.l1.holds && self.l2.holds
    }
}

/// (L1) f(P,Q) ∈ {P,Q}^!! for every pair, and (L2)
/// f(P,Q)∧E = f(P∧E, Q∧E)∧E for every triple with P, Q ⫦ E.
pub fn check_local(op: &BinaryOperation) -> LocalityReport {
    let l = &**op.lattice();
    let l1 = Check::scan(l, |p, q| {
        let gen = ElementSet::new(l, [p, q]).expect("same lattice");
        !l.generated_sublogic(&gen).expect("same lattice").contains(op.apply(p, q))
    });
    let mut l2 = Check { holds: true, witness: None };
    'outer: for e in l.elements() {
        let near: Vec<Elem> = l.elements().filter(|&x| l.commutes(x, e)).collect();
        for &p in &near {
            for &q in &near {
                let lhs = l.meet(op.apply(p, q), e);
                let rhs = l.meet(op.apply(l.meet(p, e), l.meet(q, e)), e);
                if lhs != rhs {
                    l2 = Check { holds: false, witness: Some(Witness::new(l, &[p, q, e])) };
                    break 'outer;
                }
            }
        }
    }
    LocalityReport { op: op.name(), l1, l2 }
}

fn in_generated(l: &OrthoLattice, p: Elem, q: Elem, x: Elem) -> Result<()> {
    let gen = l.generated_sublogic(&ElementSet::new(l, [p, q])?)?;
    if gen.contains(x) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not in the sublogic generated by {} and {}", l.label(x), l.label(p), l.label(q))))
    }
}

/// X_B = X ∧ ⫫(P,Q), for X in {P,Q}^!!.
pub fn b_part(l: &OrthoLattice, p: Elem, q: Elem, x: Elem) -> Result<Elem> {
    in_generated(l, p, q, x)?;
    Ok(l.meet(x, l.commutator_pair(p, q)))
}

/// X_N = X ∧ ⫫(P,Q)⊥, for X in {P,Q}^!!.
pub fn n_part(l: &OrthoLattice, p: Elem, q: Elem, x: Elem) -> Result<Elem> {
    in_generated(l, p, q, x)?;
    Ok(l.meet(x, l.ortho(l.commutator_pair(p, q))))
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantizationReport {
    /// f agrees with b on every commuting pair.
    pub on_commuting_pairs: Check,
    /// f(P,Q) ∧ ⫫(P,Q) = b_n(P,Q) for every pair.
    pub b_part_criterion: Check,
}

impl QuantizationReport {
    pub fn holds(&self) -> bool {
        self.on_commuting_pairs.holds
    }

    /// Both criteria give the same verdict.
    pub fn consistent(&self) -> bool {
        self.on_commuting_pairs.holds == self.b_part_criterion.holds
    }
}

/// Is `op` a quantization of the Boolean polynomial `b`?
pub fn check_quantization(op: &BinaryOperation, b: &BoolPoly) -> QuantizationReport {
    let l = &**op.lattice();
    let bn = b.dnf();
    QuantizationReport {
        on_commuting_pairs: Check::scan(l, |p, q| l.commutes(p, q) && op.apply(p, q) != b.eval(l, &p, &q)),
        b_part_criterion: Check::scan(l, |p, q| {
            l.meet(op.apply(p, q), l.commutator_pair(p, q)) != bn.eval(l, &p, &q)
        }),
    }
}

/// Number of distinct operations among the 96 canonical forms, compared by
/// full table on `l`.
pub fn census_polynomials(l: &OrthoLattice) -> usize {
    distinct_tables(l, |_, _| true)
}

/// Number of distinct operations among the 96 canonical forms when only the
/// values at noncommuting pairs are compared.
pub fn census_noncommuting(l: &OrthoLattice) -> usize {
    distinct_tables(l, |p, q| !l.commutes(p, q))
}

fn distinct_tables(l: &OrthoLattice, keep: impl Fn(Elem, Elem) -> bool) -> usize {
    let pairs: Vec<(Elem, Elem)> =
        l.elements().flat_map(|p| l.elements().map(move |q| (p, q))).filter(|&(p, q)| keep(p, q)).collect();
    let tables: BTreeSet<Vec<Elem>> = KotasSpec::all()
        .into_iter()
        .map(|s| pairs.iter().map(|(p, q)| s.eval(l, p, q)).collect())
        .collect();
    tables.len()
}
