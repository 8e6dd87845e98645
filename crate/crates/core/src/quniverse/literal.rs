use super::hf::HfParser;
use super::{QSet, Universe};
use crate::error::{Error, Result};
use crate::lattice::Elem;
use std::collections::BTreeMap;

/// Named QSets, in definition order.
#[derive(Clone, Debug, Default)]
pub struct Env {
    names: Vec<String>,
    map: BTreeMap<String, QSet>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, u: QSet) {
        let name = name.into();
        if self.map.insert(name.clone(), u).is_none() {
            self.names.push(name);
        }
    }

    pub fn get(&self, name: &str) -> Option<QSet> {
        self.map.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, QSet)> {
        self.names.iter().map(|n| (n.as_str(), self.map[n]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Parse `name = <literal>` lines. Blank lines and lines starting with `#`
/// are skipped. A literal is `qset { lit : label, ... }`, `check <set>`,
/// `ptilde <label>`, or the name of an earlier binding.
pub fn parse_env(text: &str, uni: &Universe) -> Result<Env> {
    let mut env = Env::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (name, rhs) = t.split_once('=').ok_or(Error::Syntax {
            line: i + 1,
            col: 1,
            msg: "expected `name = literal`".into(),
        })?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Syntax { line: i + 1, col: 1, msg: format!("bad name `{name}`") });
        }
        let offset = line.len() - line.trim_start().len() + t.find('=').expect("split") + 1;
        let u = parse_literal(rhs, uni, &env).map_err(|e| match e {
            Error::Syntax { col, msg, .. } => Error::Syntax { line: i + 1, col: col + offset, msg },
            other => other,
        })?;
        env.insert(name, u);
    }
    Ok(env)
}

/// Parse one literal against earlier bindings.
pub fn parse_literal(text: &str, uni: &Universe, env: &Env) -> Result<QSet> {
    let mut p = LitParser { s: text.as_bytes(), pos: 0, uni, env };
    let u = p.lit()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(u)
}

struct LitParser<'a> {
    s: &'a [u8],
    pos: usize,
    uni: &'a Universe,
    env: &'a Env,
}

impl LitParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn word(&mut self) -> &str {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    /// Element label: a run of characters up to `,` `}` or whitespace at
    /// parenthesis depth zero.
    fn label(&mut self) -> Result<Elem> {
        self.ws();
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(&c) = self.s.get(self.pos) {
            match c {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b',' | b'}' if depth == 0 => break,
                c if c.is_ascii_whitespace() && depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("bad label"))?;
        if text.is_empty() {
            return Err(self.err("expected an element label"));
        }
        self.uni.lattice().element(text)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn lit(&mut self) -> Result<QSet> {
        let at = self.pos;
        match self.word() {
            "qset" => {
                self.expect(b'{')?;
                let mut dom = Vec::new();
                self.ws();
                if self.s.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    return Ok(self.uni.empty());
                }
                loop {
                    let child = self.lit()?;
                    self.expect(b':')?;
                    let w = self.label()?;
                    dom.push((child, w));
                    self.ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `}`")),
                    }
                }
                self.uni.make(dom)
            }
            "check" => {
                let mut hp = HfParser { s: self.s, pos: self.pos };
                let h = hp.set(0).map_err(|e| match e {
                    Error::Syntax { col, msg, .. } => Error::Syntax { line: 1, col, msg },
                    other => other,
                })?;
                self.pos = hp.pos;
                self.uni.check_embed(&h)
            }
            "ptilde" => {
                let p = self.label()?;
                self.uni.p_tilde(p)
            }
            "" => {
                self.pos = at;
                Err(self.err("expected a literal"))
            }
            name => {
                let name = name.to_string();
                self.env.get(&name).ok_or(Error::Unresolved(name))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::OrthoLattice;
    use crate::quniverse::HfSet;
    use std::sync::Arc;

    #[test]
    fn env_file() {
        let uni = Universe::new(Arc::new(OrthoLattice::mo(2).unwrap()));
        let text = "# comment\nc0 = check {}\npA = ptilde a\nx = qset { c0 : b', pA : 1 }\ny = x\nz = check {0, 1}\n";
        let env = parse_env(text, &uni).unwrap();
        assert_eq!(env.len(), 5);
        let l = uni.lattice();
        assert_eq!(env.get("c0"), Some(uni.empty()));
        assert_eq!(env.get("pA"), Some(uni.p_tilde(l.element("a").unwrap()).unwrap()));
        assert_eq!(env.get("y"), env.get("x"));
        assert_eq!(env.get("z"), Some(uni.check_embed(&HfSet::ordinal(2)).unwrap()));
        for (_, u) in env.iter() {
            let again = parse_literal(&uni.render(u), &uni, &Env::new()).unwrap();
            assert_eq!(again, u);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let uni = Universe::new(Arc::new(OrthoLattice::mo(2).unwrap()));
        match parse_env("a = check {}\nb = qset { a : q }", &uni) {
            Err(Error::UnknownElement(_)) => {}
            other => panic!("{other:?}"),
        }
        match parse_env("a = qset { check {} ; 1 }", &uni) {
            Err(Error::Syntax { line: 1, col, .. }) => assert!(col > 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_env("a = nope", &uni), Err(Error::Unresolved(_))));
    }

    #[test]
    fn product_labels() {
        let b1 = OrthoLattice::boolean(1).unwrap();
        let m2 = OrthoLattice::mo(2).unwrap();
        let uni = Universe::new(Arc::new(OrthoLattice::product(&b1, &m2).unwrap()));
        let env = parse_env("p = ptilde (1,a)\nq = qset { p : (0,b'), check 1 : (1,1) }", &uni).unwrap();
        let q = env.get("q").unwrap();
        assert_eq!(parse_literal(&uni.render(q), &uni, &Env::new()).unwrap(), q);
    }
}
