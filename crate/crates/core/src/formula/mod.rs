//! The language L(∈, V^(Q)): AST, parser, printer and classical semantics.

mod ast;
mod classical;
mod parse;

pub use ast::{Formula, Term};
pub use classical::{classical_satisfaction, HfEnv};
pub use parse::parse;

use std::collections::BTreeSet;
use Formula::*;

/// Which derived symbols to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Basis {
    /// Expand only ⇔ and ⊆.
    #[default]
    Full,
    /// Also rewrite ∨, ∃x∈y and ∃x through ¬, ∧ and the universal forms.
    SelfDual,
}

/// Expand sugar: φ⇔ψ := (φ∧ψ)∨(¬φ∧¬ψ) and x⊆y := ∀z∈x (z∈y) with a fresh
/// z. Under [`Basis::SelfDual`] additionally φ∨ψ := ¬(¬φ∧¬ψ),
/// ∃x∈y φ := ¬∀x∈y ¬φ and ∃x φ := ¬∀x ¬φ.
pub fn desugar(f: &Formula, basis: Basis) -> Formula {
    let mut used = f.names();
    go(f, basis, &mut used)
}

fn fresh(used: &mut BTreeSet<String>) -> String {
    let name = (0..).map(|i| format!("s{i}")).find(|n| !used.contains(n)).expect("unbounded supply");
    used.insert(name.clone());
    name
}

fn go(f: &Formula, basis: Basis, used: &mut BTreeSet<String>) -> Formula {
    let sd = basis == Basis::SelfDual;
    match f {
        Not(a) => Formula::not(go(a, basis, used)),
        And(a, b) => Formula::and(go(a, basis, used), go(b, basis, used)),
        Or(a, b) => {
            let (a, b) = (go(a, basis, used), go(b, basis, used));
            if sd {
                Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
            } else {
                Formula::or(a, b)
            }
        }
        Imp(a, b) => Formula::imp(go(a, basis, used), go(b, basis, used)),
        Iff(a, b) => {
            let (a, b) = (go(a, basis, used), go(b, basis, used));
            let both = Formula::and(a.clone(), b.clone());
            let neither = Formula::and(Formula::not(a), Formula::not(b));
            if sd {
                Formula::not(Formula::and(Formula::not(both), Formula::not(neither)))
            } else {
                Formula::or(both, neither)
            }
        }
        ForallIn(x, t, a) => ForallIn(x.clone(), t.clone(), Box::new(go(a, basis, used))),
        ExistsIn(x, t, a) => {
            let body = go(a, basis, used);
            if sd {
                Formula::not(ForallIn(x.clone(), t.clone(), Box::new(Formula::not(body))))
            } else {
                ExistsIn(x.clone(), t.clone(), Box::new(body))
            }
        }
        Forall(x, a) => Forall(x.clone(), Box::new(go(a, basis, used))),
        Exists(x, a) => {
            let body = go(a, basis, used);
            if sd {
                Formula::not(Forall(x.clone(), Box::new(Formula::not(body))))
            } else {
                Exists(x.clone(), Box::new(body))
            }
        }
        Eq(..) | In(..) => f.clone(),
        Sub(s, t) => {
            let z = fresh(used);
            ForallIn(z.clone(), s.clone(), Box::new(In(Term::Var(z), t.clone())))
        }
    }
}

/// True when `f` mentions no derived symbol of the given basis.
pub fn is_primitive(f: &Formula, basis: Basis) -> bool {
    let mut ok = true;
    f.walk(&mut |g| match g {
        Iff(..) | Sub(..) => ok = false,
        Or(..) | ExistsIn(..) | Exists(..) if basis == Basis::SelfDual => ok = false,
        _ => {}
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_cases() {
        let f = parse("A x in u . x in v").unwrap();
        assert_eq!(
            f,
            ForallIn("x".into(), Term::Const("u".into()), Box::new(In(Term::Var("x".into()), Term::Const("v".into()))))
        );
        assert!(matches!(parse("!(E x in u . !(x = y))").unwrap(), Not(b) if matches!(*b, ExistsIn(..))));
        let d = parse("u sub v <-> !(E x in u . !(x in v))").unwrap();
        assert!(matches!(&d, Iff(a, _) if matches!(**a, Sub(..))));
        assert!(d.is_delta0());
        assert!(!parse("A x . x = x").unwrap().is_delta0());
        assert!(parse("A x in u . E y in v . x = y").unwrap().is_delta0());
    }

    #[test]
    fn associativity() {
        let f = parse("a = a -> b = b -> c = c").unwrap();
        assert!(matches!(&f, Imp(_, r) if matches!(**r, Imp(..))));
        let g = parse("a = a <-> b = b <-> c = c").unwrap();
        assert!(matches!(&g, Iff(l, _) if matches!(**l, Iff(..))));
        let h = parse("a = a | b = b & c = c").unwrap();
        assert!(matches!(&h, Or(_, r) if matches!(**r, And(..))));
        // quantifier bodies are unary
        let q = parse("A x in u . x in v & y in w").unwrap();
        assert!(matches!(q, And(..)));
    }

    #[test]
    fn errors() {
        match parse("x = ") {
            Err(crate::Error::Syntax { line: 1, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("A x in u .\n  A x in v . x = x") {
            Err(crate::Error::Syntax { line: 2, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse("x ~ y").is_err());
        assert!(parse("(x = y").is_err());
        assert!(parse("x = y z").is_err());
        // rebinding on a different path is fine
        assert!(parse("(A x in u . x = x) & (E x in v . x = x)").is_ok());
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "x = y -> y = x",
            "(x = y -> y = x) -> x = x",
            "!(A z in x . z in y) | x sub y",
            "a = a <-> (b = b <-> c = c)",
            "!!(x in y)",
            "A x in u . (x in v & x = x)",
            "(A x in u . x in v) & y = y",
            "E z . !(z in z)",
        ] {
            let f = parse(s).unwrap();
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{s} printed as {f}");
        }
    }

    #[test]
    fn desugaring() {
        let f = parse("x sub y <-> (x = x | E z in y . z = z)").unwrap();
        let full = desugar(&f, Basis::Full);
        assert!(is_primitive(&full, Basis::Full));
        assert!(!is_primitive(&full, Basis::SelfDual));
        let sd = desugar(&f, Basis::SelfDual);
        assert!(is_primitive(&sd, Basis::SelfDual));
        // the fresh variable avoids existing names
        let g = desugar(&parse("s0 sub s1").unwrap(), Basis::Full);
        assert_eq!(g.to_string(), "A s2 in s0 . s2 in s1");
    }
}
