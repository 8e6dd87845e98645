use crate::error::{Error, Result};
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;

/// Depth cap for hereditarily finite literals.
pub const MAX_HF_DEPTH: usize = 6;

/// A hereditarily finite set, ordered structurally so that equal sets are
/// equal values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HfSet(BTreeSet<HfSet>);

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet::default()
    }

    pub fn from_members(items: impl IntoIterator<Item = HfSet>) -> HfSet {
        HfSet(items.into_iter().collect())
    }

    /// The von Neumann ordinal n = {0, …, n−1}.
    pub fn ordinal(n: usize) -> HfSet {
        let mut acc = Vec::new();
        for _ in 0..n {
            let next = HfSet::from_members(acc.iter().cloned());
            acc.push(next);
        }
        HfSet::from_members(acc)
    }

    pub fn members(&self) -> impl Iterator<Item = &HfSet> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.contains(x)
    }

    pub fn is_subset(&self, o: &HfSet) -> bool {
        self.0.is_subset(&o.0)
    }

    /// Set-theoretic rank: 0 for ∅, else 1 + max rank of a member.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|x| x.rank() + 1).max().unwrap_or(0)
    }

    /// As a von Neumann numeral, if it is one.
    fn as_ordinal(&self) -> Option<usize> {
        let n = self.len();
        (n <= 8 && *self == HfSet::ordinal(n)).then_some(n)
    }

    /// Parse `{}`, `{{}, {{}}}` or a numeral, nested freely.
    pub fn parse(text: &str) -> Result<HfSet> {
        let mut p = HfParser { s: text.as_bytes(), pos: 0 };
        let v = p.set(0)?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    /// Random set of rank below `max_rank` with at most `width` members per level.
    pub fn random<R: Rng>(rng: &mut R, max_rank: usize, width: usize) -> HfSet {
        if max_rank == 0 {
            return HfSet::empty();
        }
        let k = rng.gen_range(0..=width);
        HfSet::from_members((0..k).map(|_| HfSet::random(rng, max_rank - 1, width)))
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_ordinal() {
            return write!(f, "{n}");
        }
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) struct HfParser<'a> {
    pub(crate) s: &'a [u8],
    pub(crate) pos: usize,
}

impl HfParser<'_> {
    pub(crate) fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    pub(crate) fn set(&mut self, depth: usize) -> Result<HfSet> {
        if depth > MAX_HF_DEPTH {
            return Err(Error::Capacity(format!("set literal nested deeper than {MAX_HF_DEPTH}")));
        }
        self.ws();
        match self.s.get(self.pos) {
            Some(b'{') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.ws();
                if self.s.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    return Ok(HfSet::empty());
                }
                loop {
                    items.push(self.set(depth + 1)?);
                    self.ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(HfSet::from_members(items));
                        }
                        _ => return Err(self.err("expected `,` or `}`")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: usize = std::str::from_utf8(&self.s[start..self.pos]).expect("digits").parse().map_err(|_| self.err("bad numeral"))?;
                if n > MAX_HF_DEPTH {
                    return Err(Error::Capacity(format!("numeral {n} nests deeper than {MAX_HF_DEPTH}")));
                }
                Ok(HfSet::ordinal(n))
            }
            _ => Err(self.err("expected a set literal")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let two = HfSet::parse("{ {}, {{}} }").unwrap();
        assert_eq!(two, HfSet::ordinal(2));
        assert_eq!(two.to_string(), "2");
        assert_eq!(HfSet::parse("{0, 1}").unwrap().to_string(), "2");
        assert_eq!(HfSet::parse("{2, {1}}").unwrap().len(), 2);
        assert_eq!(HfSet::parse("{{1}}").unwrap().rank(), 3);
        assert!(HfSet::parse("{{{{{{{{}}}}}}}}").is_err());
        assert!(HfSet::parse("{").is_err());
        assert_eq!(HfSet::parse("{1,1}").unwrap().len(), 1);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3", "{{1}}", "{1, {2}}", "{{{1}}, 2}"] {
            let v = HfSet::parse(s).unwrap();
            assert_eq!(HfSet::parse(&v.to_string()).unwrap(), v);
        }
    }
}
