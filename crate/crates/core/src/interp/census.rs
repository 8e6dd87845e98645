use super::checks::{de_morgan_check, transfer_check};
use super::eval::{compile, Evaluator};
use super::{InterpId, Interpretation};
use crate::error::{Error, Result};
use crate::formula::parse;
use crate::lattice::bits::Fnv;
use crate::lattice::{Elem, OrthoLattice};
use crate::quniverse::{Env, QSet, Universe};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// The first pair (in index order) that does not commute.
fn noncommuting_pair(l: &OrthoLattice) -> Option<(Elem, Elem)> {
    l.elements().flat_map(|p| l.elements().map(move |q| (p, q))).find(|&(p, q)| !l.commutes(p, q))
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub j: u8,
    pub k: u8,
    pub self_dual: bool,
    pub normal: bool,
    /// Hash of the full → and ∗ tables.
    pub table_fingerprint: u64,
    /// Hash of ⟦P̃⊆Q̃⟧ and ⟦(Q⊥)~∈P̃⟧ over all pairs (P, Q).
    pub discriminator: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub lattice_fingerprint: String,
    pub boolean: bool,
    pub rows: Vec<CensusRow>,
    /// Distinct discriminator vectors among the 36 pairs.
    pub distinct: usize,
    /// Distinct full-table fingerprints; agrees with `distinct` for
    /// polynomial pairs.
    pub distinct_tables: usize,
    /// Pairs flagged self-dual.
    pub self_dual: Vec<(u8, u8)>,
    /// Distinct interpretations among the self-dual pairs.
    pub self_dual_distinct: usize,
    /// The noncommuting (P, Q) used for the value lists.
    pub pair: Option<(Elem, Elem)>,
    /// ⟦P̃⊆Q̃⟧ under →ⱼ, j = 0..5.
    pub subset_values: Vec<Elem>,
    /// ⟦(Q⊥)~∈P̃⟧ under ∗ₖ, k = 0..5.
    pub member_values: Vec<Elem>,
    /// The same two lists from the closed forms (P→₀Q) ∨ X_N and (P∧Q) ∨ X_N.
    pub subset_expected: Vec<Elem>,
    pub member_expected: Vec<Elem>,
    pub lists_match: bool,
}

fn discriminator(ev: &Evaluator, tildes: &[QSet], l: &OrthoLattice) -> u64 {
    let mut h = Fnv::new();
    for p in l.elements() {
        for q in l.elements() {
            h.write_u64(ev.sub(tildes[p.index()], tildes[q.index()]).0 as u64);
            h.write_u64(ev.mem(tildes[l.ortho(q).index()], tildes[p.index()]).0 as u64);
        }
    }
    h.finish()
}

/// Build all 36 I(→ⱼ, ∗ₖ) and tell them apart by the two discriminators of
/// the uniqueness argument, evaluated over every pair of elements.
pub fn interpretation_census(l: &Arc<OrthoLattice>) -> Result<CensusReport> {
    let uni = Universe::new(l.clone());
    let tildes = l.elements().map(|p| uni.p_tilde(p)).collect::<Result<Vec<_>>>()?;
    let interps = Interpretation::all_pairs(l);
    let rows: Vec<CensusRow> = interps
        .par_iter()
        .map(|i| {
            let ev = Evaluator::new(i, &uni).expect("same lattice");
            let InterpId::Pair(j, k) = *i.id() else { unreachable!("polynomial pairs") };
            CensusRow {
                j,
                k,
                self_dual: i.is_self_dual(),
                normal: i.is_normal(),
                table_fingerprint: i.fingerprint(),
                discriminator: discriminator(&ev, &tildes, l),
            }
        })
        .collect();
    let distinct = rows.iter().map(|r| r.discriminator).collect::<BTreeSet<_>>().len();
    let distinct_tables = rows.iter().map(|r| r.table_fingerprint).collect::<BTreeSet<_>>().len();
    let self_dual: Vec<(u8, u8)> = rows.iter().filter(|r| r.self_dual).map(|r| (r.j, r.k)).collect();
    let self_dual_distinct =
        rows.iter().filter(|r| r.self_dual).map(|r| r.discriminator).collect::<BTreeSet<_>>().len();

    let pair = noncommuting_pair(l);
    let (mut subset_values, mut member_values, mut subset_expected, mut member_expected) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    if let Some((p, q)) = pair {
        let e = l.ortho(l.commutator_pair(p, q));
        let n = |x: Elem| l.meet(x, e);
        let (pp, qp) = (l.ortho(p), l.ortho(q));
        let imp0 = l.join_all([l.meet(pp, qp), l.meet(pp, q), l.meet(p, q)]);
        let pq = l.meet(p, q);
        for x in [l.bottom(), n(p), n(q), n(pp), n(qp), n(l.top())] {
            subset_expected.push(l.join(imp0, x));
        }
        for x in [n(l.top()), n(pp), n(q), n(p), n(qp), l.bottom()] {
            member_expected.push(l.join(pq, x));
        }
        for j in 0..6 {
            let i = Interpretation::pair(l.clone(), j, j)?;
            let ev = Evaluator::new(&i, &uni)?;
            subset_values.push(ev.sub(tildes[p.index()], tildes[q.index()]));
            member_values.push(ev.mem(tildes[qp.index()], tildes[p.index()]));
        }
    }
    let lists_match = subset_values == subset_expected && member_values == member_expected;
    Ok(CensusReport {
        lattice_fingerprint: format!("{:016x}", l.fingerprint()),
        boolean: l.is_boolean(),
        rows,
        distinct,
        distinct_tables,
        self_dual,
        self_dual_distinct,
        pair,
        subset_values,
        member_values,
        subset_expected,
        member_expected,
        lists_match,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TakeutiReport {
    pub p0: Elem,
    pub q0: Elem,
    /// E = ⫫(P₀, Q₀)⊥.
    pub e: Elem,
    pub p: Elem,
    pub q: Elem,
    /// ⟦(∃x∈P̃)¬φ(x)⟧ with φ(x) = ¬(x∈Q̃).
    pub exists_side: Elem,
    /// ⟦¬(∀x∈P̃)φ(x)⟧.
    pub forall_side: Elem,
    /// exists_side = 0 and forall_side = P > 0.
    pub pass: bool,
}

/// The bounded De Morgan failure of I(→₃, ∗₅) on a non-Boolean lattice.
pub fn takeuti_counterexample(l: &Arc<OrthoLattice>) -> Result<TakeutiReport> {
    let (p0, q0) = noncommuting_pair(l).ok_or_else(|| Error::NoCounterexample("the lattice is Boolean".into()))?;
    let e = l.ortho(l.commutator_pair(p0, q0));
    let (p, q) = (l.meet(p0, e), l.meet(q0, e));
    let uni = Universe::new(l.clone());
    let t = Interpretation::takeuti(l.clone());
    let ev = Evaluator::new(&t, &uni)?;
    let mut env = Env::new();
    env.insert("q", uni.p_tilde(q)?);
    let phi = parse("!(x in q)")?;
    let r = de_morgan_check(&ev, &phi, "x", uni.p_tilde(p)?, &env)?;
    let pass = r.exists_side == l.bottom() && r.forall_side == p && p != l.bottom();
    Ok(TakeutiReport { p0, q0, e, p, q, exists_side: r.exists_side, forall_side: r.forall_side, pass })
}

/// The provable formula used by the Boolean-collapse argument.
pub const COLLAPSE_FORMULA: &str = "z in x <-> ((z in x & z in y) | (z in x & !(z in y)))";

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    /// The lattice is Boolean and there is nothing to exhibit.
    pub vacuous: bool,
    pub p: Option<Elem>,
    pub q: Option<Elem>,
    /// The truth value at 0̌, P̃, Q̃.
    pub value: Option<Elem>,
    pub pass: bool,
}

/// On a non-Boolean lattice, a provable Δ0 instance whose value is below 1.
pub fn boolean_collapse_check(interp: &Interpretation) -> Result<CollapseReport> {
    if !interp.is_normal() {
        return Err(Error::Precondition("collapse check needs a normal interpretation".into()));
    }
    let l = interp.lattice();
    let Some((p, q)) = noncommuting_pair(l) else {
        return Ok(CollapseReport { vacuous: true, p: None, q: None, value: None, pass: true });
    };
    let uni = Universe::new(l.clone());
    let ev = Evaluator::new(interp, &uni)?;
    let f = compile(&parse(COLLAPSE_FORMULA)?)?;
    let value = ev.eval(&f, &[uni.empty(), uni.p_tilde(p)?, uni.p_tilde(q)?])?;
    Ok(CollapseReport { vacuous: false, p: Some(p), q: Some(q), value: Some(value), pass: value != l.top() })
}

/// Provable formulas from the necessity argument, with argument patterns:
/// `0` is 0̌, `P` and `Q` are P̃ and Q̃.
pub const NECESSITY_INSTANCES: [(&str, &str); 4] = [
    ("x1 in x2 <-> !(A y in x2 . !(y = x1))", "PQ"),
    ("(x1 = x2 -> !(x3 = x3)) <-> !(x1 = x2)", "0P0"),
    ("(E x in x1 . x = x2) <-> !(A x in x1 . !(x = x2))", "P0"),
    ("(x1 in x2 -> x1 in x3) <-> (!(x1 in x2) | x1 in x3)", "0PQ"),
];

#[derive(Clone, Debug, Serialize)]
pub struct FailureWitness {
    pub formula: String,
    pub args: Vec<String>,
    pub lhs: Elem,
    pub bound: Elem,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureReport {
    pub interp: InterpId,
    pub normal: bool,
    pub witness: Option<FailureWitness>,
}

/// Look for a Transfer Principle violation among the necessity-argument
/// instances, trying commuting (P, Q) first so that the bound is 1.
pub fn non_normal_transfer_failure(interp: &Interpretation) -> Result<FailureReport> {
    let l = interp.lattice();
    let uni = Universe::new(l.clone());
    let ev = Evaluator::new(interp, &uni)?;
    let mut pairs: Vec<(Elem, Elem)> = l.elements().flat_map(|p| l.elements().map(move |q| (p, q))).collect();
    pairs.sort_by_key(|&(p, q)| !l.commutes(p, q));
    for (src, pattern) in NECESSITY_INSTANCES {
        let f = compile(&parse(src)?)?;
        for &(p, q) in &pairs {
            let args = pattern
                .chars()
                .map(|c| match c {
                    'P' => uni.p_tilde(p),
                    'Q' => uni.p_tilde(q),
                    _ => Ok(uni.empty()),
                })
                .collect::<Result<Vec<_>>>()?;
            let r = transfer_check(&ev, &f, &args)?;
            if !r.pass {
                let witness = FailureWitness {
                    formula: src.to_string(),
                    args: args.iter().map(|&a| uni.render(a)).collect(),
                    lhs: r.lhs,
                    bound: r.bound,
                };
                return Ok(FailureReport { interp: interp.id().clone(), normal: interp.is_normal(), witness: Some(witness) });
            }
        }
    }
    Ok(FailureReport { interp: interp.id().clone(), normal: interp.is_normal(), witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(name: &str) -> Arc<OrthoLattice> {
        Arc::new(OrthoLattice::from_name(name, false).unwrap())
    }

    #[test]
    fn census_counts() {
        let r = interpretation_census(&lat("bool3")).unwrap();
        assert_eq!((r.distinct, r.self_dual_distinct, r.self_dual.len()), (1, 1, 36));
        for name in ["mo2", "prod(bool1,mo2)"] {
            let r = interpretation_census(&lat(name)).unwrap();
            assert_eq!((r.distinct, r.distinct_tables), (36, 36), "{name}");
            assert_eq!(r.self_dual, (0..6).map(|j| (j, j)).collect::<Vec<_>>());
            assert!(r.lists_match, "{name}: {:?} vs {:?}", r.subset_values, r.subset_expected);
        }
    }

    #[test]
    fn mo2_value_lists() {
        let l = lat("mo2");
        let r = interpretation_census(&l).unwrap();
        let (p, q) = r.pair.unwrap();
        let (pp, qp) = (l.ortho(p), l.ortho(q));
        assert_eq!(r.subset_values, [l.bottom(), p, q, pp, qp, l.top()]);
        assert_eq!(r.member_values, [l.top(), pp, q, p, qp, l.bottom()]);
    }

    #[test]
    fn takeuti() {
        let l = lat("mo2");
        let r = takeuti_counterexample(&l).unwrap();
        assert!(r.pass);
        assert_eq!((r.exists_side, l.label(r.forall_side)), (l.bottom(), "a"));
        let l = lat("prod(bool1,mo2)");
        let r = takeuti_counterexample(&l).unwrap();
        assert!(r.pass);
        assert_eq!((l.label(r.exists_side), l.label(r.forall_side)), ("(0,0)", "(0,a)"));
        assert!(matches!(takeuti_counterexample(&lat("bool3")), Err(Error::NoCounterexample(_))));
    }

    #[test]
    fn collapse() {
        for name in ["mo2", "prod(bool1,mo2)"] {
            let l = lat(name);
            let r = boolean_collapse_check(&Interpretation::sasaki(l.clone())).unwrap();
            assert!(r.pass && !r.vacuous && r.value != Some(l.top()));
        }
        assert!(boolean_collapse_check(&Interpretation::sasaki(lat("bool3"))).unwrap().vacuous);
    }

    #[test]
    fn necessity() {
        let b2 = lat("bool2");
        for i in [Interpretation::join_conjunction(b2.clone()), Interpretation::constant_implication(b2.clone())] {
            let w = non_normal_transfer_failure(&i).unwrap().witness.expect("a violation");
            assert_eq!(w.bound, b2.top());
        }
        assert!(non_normal_transfer_failure(&Interpretation::sasaki(b2)).unwrap().witness.is_none());
        assert!(non_normal_transfer_failure(&Interpretation::sasaki(lat("mo2"))).unwrap().witness.is_none());
    }
}
