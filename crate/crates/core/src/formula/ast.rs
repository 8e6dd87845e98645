use std::collections::BTreeSet;
use std::fmt;

/// A term is a bound variable or a named constant. Constants are the free
/// identifiers of a formula and are resolved against an environment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForallIn(String, Term, Box<Formula>),
    ExistsIn(String, Term, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    Eq(Term, Term),
    In(Term, Term),
    Sub(Term, Term),
}

use Formula::*;

impl Formula {
    pub fn not(a: Formula) -> Formula {
        Not(Box::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Imp(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Iff(Box::new(a), Box::new(b))
    }

    /// No unbounded quantifier anywhere (⊆ and ⇔ are bounded sugar).
    pub fn is_delta0(&self) -> bool {
        match self {
            Forall(..) | Exists(..) => false,
            Not(a) => a.is_delta0(),
            And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => a.is_delta0() && b.is_delta0(),
            ForallIn(_, _, a) | ExistsIn(_, _, a) => a.is_delta0(),
            Eq(..) | In(..) | Sub(..) => true,
        }
    }

    /// Constant names in order of first occurrence (left to right).
    pub fn constants(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk_terms(&mut |t| {
            if let Term::Const(n) = t {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
        out
    }

    /// Every identifier used, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_terms(&mut |t| {
            out.insert(t.name().to_string());
        });
        self.walk(&mut |f| match f {
            ForallIn(x, ..) | ExistsIn(x, ..) | Forall(x, _) | Exists(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn walk(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Not(a) | ForallIn(_, _, a) | ExistsIn(_, _, a) | Forall(_, a) | Exists(_, a) => a.walk(f),
            And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Eq(..) | In(..) | Sub(..) => {}
        }
    }

    fn walk_terms(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Not(a) | Forall(_, a) | Exists(_, a) => a.walk_terms(f),
            ForallIn(_, t, a) | ExistsIn(_, t, a) => {
                f(t);
                a.walk_terms(f);
            }
            And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => {
                a.walk_terms(f);
                b.walk_terms(f);
            }
            Eq(s, t) | In(s, t) | Sub(s, t) => {
                f(s);
                f(t);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    fn prec(&self) -> u8 {
        match self {
            Iff(..) => 1,
            Imp(..) => 2,
            Or(..) => 3,
            And(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &Formula, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parens {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Prints with the fewest parentheses the grammar needs, so printing a
/// parsed formula and parsing it again gives the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prec();
        match self {
            Not(a) => {
                write!(f, "!")?;
                wrap(a, a.prec() < 5, f)
            }
            And(a, b) | Or(a, b) | Iff(a, b) => {
                let op = match self {
                    And(..) => "&",
                    Or(..) => "|",
                    _ => "<->",
                };
                wrap(a, a.prec() < p, f)?;
                write!(f, " {op} ")?;
                wrap(b, b.prec() <= p, f)
            }
            Imp(a, b) => {
                wrap(a, a.prec() <= p, f)?;
                write!(f, " -> ")?;
                wrap(b, b.prec() < p, f)
            }
            ForallIn(x, t, a) | ExistsIn(x, t, a) => {
                let q = if matches!(self, ForallIn(..)) { "A" } else { "E" };
                write!(f, "{q} {x} in {t} . ")?;
                wrap(a, a.prec() < 5, f)
            }
            Forall(x, a) | Exists(x, a) => {
                let q = if matches!(self, Forall(..)) { "A" } else { "E" };
                write!(f, "{q} {x} . ")?;
                wrap(a, a.prec() < 5, f)
            }
            Eq(s, t) => write!(f, "{s} = {t}"),
            In(s, t) => write!(f, "{s} in {t}"),
            Sub(s, t) => write!(f, "{s} sub {t}"),
        }
    }
}
