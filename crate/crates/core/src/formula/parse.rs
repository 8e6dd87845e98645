use super::ast::{Formula, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Dot,
    Eq,
    In,
    Sub,
    All,
    Ex,
    End,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let take = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            take(1, &mut i, &mut col);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let tok = if rest.starts_with("<->") {
            take(3, &mut i, &mut col);
            Tok::Iff
        } else if rest.starts_with("->") {
            take(2, &mut i, &mut col);
            Tok::Imp
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                take(1, &mut i, &mut col);
            }
            let w: String = chars[start..i].iter().collect();
            match w.as_str() {
                "A" => Tok::All,
                "E" => Tok::Ex,
                "in" => Tok::In,
                "sub" => Tok::Sub,
                _ => Tok::Ident(w),
            }
        } else {
            let t = match c {
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                '=' => Tok::Eq,
                _ => return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") }),
            };
            take(1, &mut i, &mut col);
            t
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    bound: Vec<String>,
}

/// Parse a formula. Identifiers bound by an enclosing quantifier become
/// variables, all others constants. `->` associates to the right, the other
/// binary connectives to the left.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, at: 0, bound: Vec::new() };
    let f = p.iff()?;
    if p.peek() != &Tok::End {
        return Err(p.err("unexpected token after formula"));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn err(&self, msg: &str) -> Error {
        let Pos { line, col } = self.pos();
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => format!("{t:?}"),
        };
        Error::Syntax { line, col, msg: format!("{msg} (found {found})") }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.imp()?;
        while self.eat(&Tok::Iff) {
            f = Formula::iff(f, self.imp()?);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Imp) {
            return Ok(Formula::imp(f, self.imp()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.at += 1;
                let f = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(f)
            }
            Tok::All | Tok::Ex => self.quant(),
            Tok::Ident(_) => self.atom(),
            _ => Err(self.err("expected a formula")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.err("expected an identifier")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let s = self.ident()?;
        Ok(if self.bound.contains(&s) { Term::Var(s) } else { Term::Const(s) })
    }

    fn quant(&mut self) -> Result<Formula> {
        let forall = self.peek() == &Tok::All;
        self.at += 1;
        let at = self.pos();
        let x = self.ident()?;
        if self.bound.contains(&x) {
            return Err(Error::Syntax { line: at.line, col: at.col, msg: format!("variable `{x}` is already bound here") });
        }
        let range = if self.eat(&Tok::In) { Some(self.term()?) } else { None };
        if !self.eat(&Tok::Dot) {
            return Err(self.err("expected `.` after quantifier"));
        }
        self.bound.push(x.clone());
        let body = self.unary();
        self.bound.pop();
        let body = Box::new(body?);
        Ok(match (forall, range) {
            (true, Some(t)) => Formula::ForallIn(x, t, body),
            (false, Some(t)) => Formula::ExistsIn(x, t, body),
            (true, None) => Formula::Forall(x, body),
            (false, None) => Formula::Exists(x, body),
        })
    }

    fn atom(&mut self) -> Result<Formula> {
        let s = self.term()?;
        let op = self.peek().clone();
        self.at += 1;
        let t = match op {
            Tok::Eq | Tok::In | Tok::Sub => self.term()?,
            _ => {
                self.at -= 1;
                return Err(self.err("expected `=`, `in` or `sub`"));
            }
        };
        Ok(match op {
            Tok::Eq => Formula::Eq(s, t),
            Tok::In => Formula::In(s, t),
            _ => Formula::Sub(s, t),
        })
    }
}
