use super::kotas::{Eps, KotasSpec};
use crate::error::{Error, Result};
use crate::lattice::OrthoAlgebra;
use std::fmt;
use std::str::FromStr;

/// A Boolean polynomial in P and Q over {∧, ∨, ⊥, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolPoly {
    P,
    Q,
    Zero,
    One,
    Not(Box<BoolPoly>),
    And(Box<BoolPoly>, Box<BoolPoly>),
    Or(Box<BoolPoly>, Box<BoolPoly>),
}

impl BoolPoly {
    pub fn not(self) -> BoolPoly {
        BoolPoly::Not(Box::new(self))
    }

    pub fn and(self, o: BoolPoly) -> BoolPoly {
        BoolPoly::And(Box::new(self), Box::new(o))
    }

    pub fn or(self, o: BoolPoly) -> BoolPoly {
        BoolPoly::Or(Box::new(self), Box::new(o))
    }

    pub fn truth(&self, p: bool, q: bool) -> bool {
        match self {
            BoolPoly::P => p,
            BoolPoly::Q => q,
            BoolPoly::Zero => false,
            BoolPoly::One => true,
            BoolPoly::Not(x) => !x.truth(p, q),
            BoolPoly::And(x, y) => x.truth(p, q) && y.truth(p, q),
            BoolPoly::Or(x, y) => x.truth(p, q) || y.truth(p, q),
        }
    }

    pub fn eval<A: OrthoAlgebra>(&self, alg: &A, p: &A::Elem, q: &A::Elem) -> A::Elem {
        match self {
            BoolPoly::P => p.clone(),
            BoolPoly::Q => q.clone(),
            BoolPoly::Zero => alg.zero(),
            BoolPoly::One => alg.one(),
            BoolPoly::Not(x) => alg.ortho(&x.eval(alg, p, q)),
            BoolPoly::And(x, y) => alg.meet(&x.eval(alg, p, q), &y.eval(alg, p, q)),
            BoolPoly::Or(x, y) => alg.join(&x.eval(alg, p, q), &y.eval(alg, p, q)),
        }
    }

    /// The disjunctive normal form b_n, from the four truth-table rows, as a
    /// canonical spec with ε = 0.
    pub fn dnf(&self) -> KotasSpec {
        KotasSpec {
            alpha: self.truth(true, true),
            beta: self.truth(true, false),
            gamma: self.truth(false, true),
            delta: self.truth(false, false),
            eps: Eps::Zero,
        }
    }
}

impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolPoly::P => write!(f, "P"),
            BoolPoly::Q => write!(f, "Q"),
            BoolPoly::Zero => write!(f, "0"),
            BoolPoly::One => write!(f, "1"),
            BoolPoly::Not(x) => write!(f, "!{x}"),
            BoolPoly::And(x, y) => write!(f, "({x} & {y})"),
            BoolPoly::Or(x, y) => write!(f, "({x} | {y})"),
        }
    }
}

/// Parses `P`, `Q`, `0`, `1`, prefix `!`, postfix `'`, `&`, `|` and parentheses;
/// `&` binds tighter than `|`.
impl FromStr for BoolPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoolPoly> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_or(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Input(format!("trailing input in Boolean polynomial `{s}`")));
        }
        Ok(e)
    }
}

fn parse_or(t: &[char], pos: &mut usize) -> Result<BoolPoly> {
    let mut lhs = parse_and(t, pos)?;
    while t.get(*pos) == Some(&'|') {
        *pos += 1;
        lhs = lhs.or(parse_and(t, pos)?);
    }
    Ok(lhs)
}

fn parse_and(t: &[char], pos: &mut usize) -> Result<BoolPoly> {
    let mut lhs = parse_unary(t, pos)?;
    while t.get(*pos) == Some(&'&') {
        *pos += 1;
        lhs = lhs.and(parse_unary(t, pos)?);
    }
    Ok(lhs)
}

fn parse_unary(t: &[char], pos: &mut usize) -> Result<BoolPoly> {
    let c = *t.get(*pos).ok_or_else(|| Error::Input("unexpected end of polynomial".into()))?;
    *pos += 1;
    let mut e = match c {
        '!' => return Ok(parse_unary(t, pos)?.not()),
        'P' => BoolPoly::P,
        'Q' => BoolPoly::Q,
        '0' => BoolPoly::Zero,
        '1' => BoolPoly::One,
        '(' => {
            let e = parse_or(t, pos)?;
            if t.get(*pos) != Some(&')') {
                return Err(Error::Input("missing `)` in polynomial".into()));
            }
            *pos += 1;
            e
        }
        other => return Err(Error::Input(format!("unexpected `{other}` in polynomial"))),
    };
    while matches!(t.get(*pos), Some('\'') | Some('⊥')) {
        *pos += 1;
        e = e.not();
    }
    Ok(e)
}
