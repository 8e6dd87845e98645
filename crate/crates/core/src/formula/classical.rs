use super::ast::{Formula, Term};
use crate::error::{Error, Result};
use crate::quniverse::HfSet;
use std::collections::HashMap;

/// Constants of a formula bound to hereditarily finite sets.
pub type HfEnv = HashMap<String, HfSet>;

/// Two-valued satisfaction in ⟨V, ∈⟩ for hereditarily finite sets.
/// Unbounded quantifiers range over all of V and are rejected.
pub fn classical_satisfaction(f: &Formula, env: &HfEnv) -> Result<bool> {
    let mut vars: Vec<(String, HfSet)> = Vec::new();
    sat(f, env, &mut vars)
}

fn value<'a>(t: &Term, env: &'a HfEnv, vars: &'a [(String, HfSet)]) -> Result<&'a HfSet> {
    match t {
        Term::Var(x) => vars
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Unbound(x.clone())),
        Term::Const(c) => env.get(c).ok_or_else(|| Error::Unresolved(c.clone())),
    }
}

fn sat(f: &Formula, env: &HfEnv, vars: &mut Vec<(String, HfSet)>) -> Result<bool> {
    use Formula::*;
    Ok(match f {
        Not(a) => !sat(a, env, vars)?,
        And(a, b) => sat(a, env, vars)? && sat(b, env, vars)?,
        Or(a, b) => sat(a, env, vars)? || sat(b, env, vars)?,
        Imp(a, b) => !sat(a, env, vars)? || sat(b, env, vars)?,
        Iff(a, b) => sat(a, env, vars)? == sat(b, env, vars)?,
        ForallIn(x, t, a) | ExistsIn(x, t, a) => {
            let range: Vec<HfSet> = value(t, env, vars)?.members().cloned().collect();
            let want = matches!(f, ForallIn(..));
            let mut result = want;
            for m in range {
                vars.push((x.clone(), m));
                let r = sat(a, env, vars);
                vars.pop();
                if r? != want {
                    result = !want;
                    break;
                }
            }
            result
        }
        Forall(..) | Exists(..) => {
            return Err(Error::Unsupported("unbounded quantifier over V".into()));
        }
        Eq(s, t) => value(s, env, vars)? == value(t, env, vars)?,
        In(s, t) => value(t, env, vars)?.contains(value(s, env, vars)?),
        Sub(s, t) => value(s, env, vars)?.is_subset(value(t, env, vars)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn env(pairs: &[(&str, &str)]) -> HfEnv {
        pairs.iter().map(|(n, s)| (n.to_string(), HfSet::parse(s).unwrap())).collect()
    }

    #[test]
    fn basic_truths() {
        let e = env(&[("e", "{}"), ("s", "{{}}")]);
        assert!(classical_satisfaction(&parse("e sub s").unwrap(), &e).unwrap());
        assert!(!classical_satisfaction(&parse("s in e").unwrap(), &e).unwrap());
        let dmsc = parse("e sub s <-> !(E x in e . !(x in s))").unwrap();
        assert!(classical_satisfaction(&dmsc, &e).unwrap());
        assert!(classical_satisfaction(&parse("A x in s . E y in s . x = y").unwrap(), &e).unwrap());
        assert!(matches!(classical_satisfaction(&parse("A x . x = x").unwrap(), &e), Err(Error::Unsupported(_))));
        assert!(matches!(classical_satisfaction(&parse("q = q").unwrap(), &e), Err(Error::Unresolved(_))));
    }
}
