use super::eval::{compile, Compiled, Evaluator};
use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::lattice::{Elem, ElementSet};
use crate::quniverse::{Env, QSet, Universe};
use serde::Serialize;
use std::sync::Arc;

/// Outcome of one Transfer Principle instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    /// ⟦φ(u⃗)⟧.
    pub lhs: Elem,
    /// ⫫(u⃗).
    pub bound: Elem,
    pub pass: bool,
}

/// ⟦φ(u⃗)⟧ ≥ ⫫(u⃗), and ⟦φ(u⃗)⟧ = 1 when ⫫(u⃗) = 1. `f` should be a
/// ZFC-provable Δ0 formula; that is the caller's business.
pub fn transfer_check(ev: &Evaluator, f: &Compiled, args: &[QSet]) -> Result<TransferReport> {
    let l = ev.lattice();
    let lhs = ev.eval(f, args)?;
    let bound = ev.universe().set_commutator(args)?;
    let pass = l.leq(bound, lhs) && (bound != l.top() || lhs == l.top());
    Ok(TransferReport { lhs, bound, pass })
}

/// Turn the constant `x` of `phi` into a variable, so it can be bound by a
/// quantifier placed around `phi`.
pub fn bind_free(phi: &Formula, x: &str) -> Formula {
    use Formula as F;
    let t = |t: &Term| match t {
        Term::Const(c) if c == x => Term::Var(c.clone()),
        other => other.clone(),
    };
    let b = |f: &Formula| Box::new(bind_free(f, x));
    match phi {
        F::Not(a) => F::Not(b(a)),
        F::And(p, q) => F::And(b(p), b(q)),
        F::Or(p, q) => F::Or(b(p), b(q)),
        F::Imp(p, q) => F::Imp(b(p), b(q)),
        F::Iff(p, q) => F::Iff(b(p), b(q)),
        F::ForallIn(y, r, body) => F::ForallIn(y.clone(), t(r), b(body)),
        F::ExistsIn(y, r, body) => F::ExistsIn(y.clone(), t(r), b(body)),
        F::Forall(y, body) => F::Forall(y.clone(), b(body)),
        F::Exists(y, body) => F::Exists(y.clone(), b(body)),
        F::Eq(p, q) => F::Eq(t(p), t(q)),
        F::In(p, q) => F::In(t(p), t(q)),
        F::Sub(p, q) => F::Sub(t(p), t(q)),
    }
}

/// Two truth values that a law says are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub left: Elem,
    pub right: Elem,
    pub holds: bool,
}

impl Equation {
    fn new(left: Elem, right: Elem) -> Equation {
        Equation { left, right, holds: left == right }
    }
}

/// De Morgan's laws at one instance. `m[i]` is law (M{i+1}).
#[derive(Clone, Debug, Serialize)]
pub struct DeMorganReport {
    pub m: [Equation; 6],
    /// ⟦¬(∀x∈u)φ(x)⟧.
    pub forall_side: Elem,
    /// ⟦(∃x∈u)¬φ(x)⟧.
    pub exists_side: Elem,
    /// (M5) holds.
    pub pass: bool,
}

impl DeMorganReport {
    /// (M5) and (M6).
    pub fn bounded_laws(&self) -> bool {
        self.m[4].holds && self.m[5].holds
    }

    /// (M1) to (M4).
    pub fn lattice_laws(&self) -> bool {
        self.m[..4].iter().all(|e| e.holds)
    }
}

fn fresh(phi: &Formula, base: &str) -> String {
    let names = phi.names();
    let mut n = base.to_string();
    while names.contains(&n) {
        n.push('_');
    }
    n
}

/// Evaluate (M1)–(M6) for φ(x) with x ranging over `u`. The other constants
/// of φ come from `env`.
///
/// (M1)/(M2) use φ(u) and (∃x∈u)φ(x) as the two subformulas. (M3)/(M4)
/// concern unbounded quantifiers, which are not evaluated; they are checked
/// as inf/sup duality over the finite family φ(u'), u' ∈ dom(u), and φ(u).
pub fn de_morgan_check(ev: &Evaluator, phi: &Formula, x: &str, u: QSet, env: &Env) -> Result<DeMorganReport> {
    let l = ev.lattice();
    let un = fresh(phi, "u");
    let mut env = env.clone();
    env.insert(un.clone(), u);
    let body = bind_free(phi, x);
    let r = Term::Const(un);
    let all = |b: Formula| Formula::ForallIn(x.to_string(), r.clone(), Box::new(b));
    let ex = |b: Formula| Formula::ExistsIn(x.to_string(), r.clone(), Box::new(b));
    let val = |f: &Formula, env: &Env| -> Result<Elem> {
        let c = compile(f)?;
        ev.eval(&c, &c.bind(env)?)
    };
    let not = Formula::not;

    let m5 = Equation::new(val(&not(all(body.clone())), &env)?, val(&ex(not(body.clone())), &env)?);
    let m6 = Equation::new(val(&not(ex(body.clone())), &env)?, val(&all(not(body.clone())), &env)?);

    let p1 = phi.clone();
    let p2 = ex(body.clone());
    let mut both = env.clone();
    both.insert(x, u);
    let m1 = Equation::new(
        val(&not(Formula::and(p1.clone(), p2.clone())), &both)?,
        val(&Formula::or(not(p1.clone()), not(p2.clone())), &both)?,
    );
    let m2 = Equation::new(
        val(&not(Formula::or(p1.clone(), p2.clone())), &both)?,
        val(&Formula::and(not(p1.clone()), not(p2)), &both)?,
    );

    let mut family = Vec::new();
    let targets: Vec<QSet> = ev.universe().dom(u).into_iter().map(|(c, _)| c).chain(std::iter::once(u)).collect();
    for t in targets {
        let mut e = env.clone();
        e.insert(x, t);
        family.push(val(&p1, &e)?);
    }
    let inf = l.meet_all(family.iter().copied());
    let sup = l.join_all(family.iter().copied());
    let m3 = Equation::new(l.ortho(inf), l.join_all(family.iter().map(|&v| l.ortho(v))));
    let m4 = Equation::new(l.ortho(sup), l.meet_all(family.iter().map(|&v| l.ortho(v))));

    Ok(DeMorganReport { m: [m1, m2, m3, m4, m5, m6], forall_side: m5.left, exists_side: m5.right, pass: m5.holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbsolutenessReport {
    /// ⟦φ⟧ in the whole lattice.
    pub full: Elem,
    /// ⟦φ⟧_R, mapped back into the whole lattice.
    pub within: Elem,
    pub pass: bool,
}

/// Evaluate `f` once in the full lattice and once inside the sublogic `r`,
/// with the operations recomputed on `r`, and compare.
pub fn absoluteness_check(ev: &Evaluator, f: &Compiled, args: &[QSet], r: &ElementSet) -> Result<AbsolutenessReport> {
    let uni = ev.universe();
    let l = ev.lattice();
    l.check_set(r)?;
    for &a in args {
        if !uni.in_sublogic(a, r)? {
            return Err(Error::Precondition("argument support is not inside the sublogic".into()));
        }
    }
    let (sub, emb) = l.subalgebra(r)?;
    let sub = Arc::new(sub);
    let interp = ev.interp().on_sublattice(sub.clone(), &emb)?;
    let mut back = vec![None; l.len()];
    for (i, &e) in emb.iter().enumerate() {
        back[e.index()] = Some(Elem(i as u16));
    }
    let sub_uni = Universe::new(sub);
    let moved = args
        .iter()
        .map(|&a| uni.transport(a, &sub_uni, &|e| back[e.index()]))
        .collect::<Result<Vec<_>>>()?;
    let sub_ev = Evaluator::new(&interp, &sub_uni)?;
    let full = ev.eval(f, args)?;
    let within = emb[sub_ev.eval(f, &moved)?.index()];
    Ok(AbsolutenessReport { full, within, pass: full == within })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    /// ⟦φ(u⃗)⟧ ∧ p.
    pub lhs: Elem,
    /// ⟦φ(u⃗|p)⟧ ∧ p.
    pub rhs: Elem,
    pub pass: bool,
}

/// ⟦φ(u⃗)⟧ ∧ p = ⟦φ(u⃗|p)⟧ ∧ p for p in the commutant of L(u⃗), in a normal
/// interpretation.
pub fn restriction_check(ev: &Evaluator, f: &Compiled, args: &[QSet], p: Elem) -> Result<RestrictionReport> {
    let uni = ev.universe();
    let l = ev.lattice();
    l.check(p)?;
    if !ev.interp().is_normal() {
        return Err(Error::Precondition("restriction principle needs a normal interpretation".into()));
    }
    let support = uni.joint_support(args)?;
    if !l.commutant(&support)?.contains(p) {
        return Err(Error::Precondition(format!("{} does not commute with every weight of the arguments", l.label(p))));
    }
    let restricted = args.iter().map(|&a| uni.restrict(a, p)).collect::<Result<Vec<_>>>()?;
    let lhs = l.meet(ev.eval(f, args)?, p);
    let rhs = l.meet(ev.eval(f, &restricted)?, p);
    Ok(RestrictionReport { lhs, rhs, pass: lhs == rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::interp::Interpretation;
    use crate::lattice::OrthoLattice;

    fn setup() -> (Arc<OrthoLattice>, Universe) {
        let l = Arc::new(OrthoLattice::mo(2).unwrap());
        (l.clone(), Universe::new(l))
    }

    #[test]
    fn dmsc0_on_mo2() {
        let (l, uni) = setup();
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        let f = compile(&parse("(A x in u . x in v) <-> !(E x in u . !(x in v))").unwrap()).unwrap();
        let args = [uni.p_tilde(a).unwrap(), uni.p_tilde(b).unwrap()];
        let t = Interpretation::takeuti(l.clone());
        let r = transfer_check(&Evaluator::new(&t, &uni).unwrap(), &f, &args).unwrap();
        assert_eq!(r.bound, l.bottom());
        assert!(r.pass && r.lhs != l.top());
        let s = Interpretation::sasaki(l.clone());
        let r = transfer_check(&Evaluator::new(&s, &uni).unwrap(), &f, &args).unwrap();
        assert_eq!(r.lhs, l.top());
    }

    #[test]
    fn takeuti_de_morgan_instance() {
        let (l, uni) = setup();
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        let t = Interpretation::takeuti(l.clone());
        let ev = Evaluator::new(&t, &uni).unwrap();
        let mut env = Env::new();
        env.insert("q", uni.p_tilde(b).unwrap());
        let phi = parse("!(x in q)").unwrap();
        let r = de_morgan_check(&ev, &phi, "x", uni.p_tilde(a).unwrap(), &env).unwrap();
        assert_eq!((r.exists_side, r.forall_side), (l.bottom(), a));
        assert!(!r.pass && r.lattice_laws());
    }

    #[test]
    fn restriction_examples() {
        let (l, uni) = setup();
        let a = l.element("a").unwrap();
        let s = Interpretation::sasaki(l.clone());
        let ev = Evaluator::new(&s, &uni).unwrap();
        let f = compile(&parse("z in x1").unwrap()).unwrap();
        let args = [uni.empty(), uni.p_tilde(a).unwrap()];
        for p in [l.top(), l.bottom(), a] {
            let r = restriction_check(&ev, &f, &args, p).unwrap();
            assert!(r.pass);
            assert_eq!(r.lhs, l.meet(p, s.and_then(a, l.top())));
        }
        assert!(restriction_check(&ev, &f, &args, l.element("b").unwrap()).is_err());
    }

    #[test]
    fn absoluteness_examples() {
        let (l, uni) = setup();
        let a = l.element("a").unwrap();
        let f = compile(&parse("x1 sub x2 | E y in x2 . y = x1").unwrap()).unwrap();
        let two = ElementSet::new(&l, [l.bottom(), l.top()]).unwrap();
        let block = ElementSet::new(&l, [l.bottom(), a, l.ortho(a), l.top()]).unwrap();
        for i in Interpretation::all_pairs(&l).iter().chain([&Interpretation::join_conjunction(l.clone())]) {
            let ev = Evaluator::new(i, &uni).unwrap();
            let checks = [uni.check_embed(&crate::quniverse::HfSet::ordinal(1)).unwrap(), uni.empty()];
            assert!(absoluteness_check(&ev, &f, &checks, &two).unwrap().pass);
            let at = [uni.p_tilde(a).unwrap(), uni.make(vec![(uni.p_tilde(a).unwrap(), l.ortho(a))]).unwrap()];
            assert!(absoluteness_check(&ev, &f, &at, &block).unwrap().pass);
            assert!(absoluteness_check(&ev, &f, &at, &two).is_err());
            assert!(absoluteness_check(&ev, &f, &at, &ElementSet::all(&l)).unwrap().pass);
        }
    }
}
