//! Finite orthomodular lattices stored as order, ortho and meet/join tables.
//!
//! Elements are table indices wrapped in [`Elem`]. Every lattice carries a
//! structural fingerprint; element sets and universes built on one lattice
//! refuse to mix with another.

mod algebra;
pub(crate) mod bits;
mod build;
mod commute;
mod io;

pub use algebra::OrthoAlgebra;
pub use commute::Decomposition;
pub use io::LatticeFile;

use crate::error::{Error, Result};
use bits::{iter_bits, BitRows, Fnv};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

/// Default cap on the number of lattice elements (tables are n²).
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Index of an element in its lattice.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// How much of the axiom set a constructor insists on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Full orthomodular lattice.
    Oml,
    /// Ortholattice; the orthomodular law may fail. Used for negative tests.
    Ortholattice,
}

/// A finite (hence complete) orthomodular lattice.
pub struct OrthoLattice {
    n: usize,
    up: BitRows,
    down: BitRows,
    ortho: Vec<Elem>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    labels: Vec<String>,
    by_label: HashMap<String, Elem>,
    fingerprint: u64,
    orthomodular: bool,
    commute: OnceLock<BitRows>,
}

impl fmt::Debug for OrthoLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrthoLattice")
            .field("n", &self.n)
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint))
            .field("labels", &self.labels)
            .finish()
    }
}

/// First axiom violation found by [`OrthoLattice::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub elements: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn describe(&self, l: &OrthoLattice) -> String {
        match &self.violation {
            None => "all axioms hold".to_string(),
            Some(v) => {
                let els: Vec<String> =
                    v.elements.iter().map(|&e| format!("{}#{}", l.label(e), e.0)).collect();
                format!("{} fails at ({})", v.law, els.join(", "))
            }
        }
    }
}

/// A deduplicated, sorted set of elements tied to one lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    fingerprint: u64,
    members: Vec<Elem>,
}

impl ElementSet {
    pub fn new(l: &OrthoLattice, items: impl IntoIterator<Item = Elem>) -> Result<ElementSet> {
        let mut members: Vec<Elem> = items.into_iter().collect();
        if let Some(bad) = members.iter().find(|e| e.index() >= l.n) {
            return Err(Error::UnknownElement(format!("#{}", bad.0)));
        }
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet { fingerprint: l.fingerprint, members })
    }

    pub fn all(l: &OrthoLattice) -> ElementSet {
        ElementSet { fingerprint: l.fingerprint, members: l.elements().collect() }
    }

    pub fn empty(l: &OrthoLattice) -> ElementSet {
        ElementSet { fingerprint: l.fingerprint, members: Vec::new() }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn union(&self, other: &ElementSet) -> Result<ElementSet> {
        if self.fingerprint != other.fingerprint {
            return Err(Error::LatticeMismatch);
        }
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet { fingerprint: self.fingerprint, members })
    }

    pub fn intersection(&self, other: &ElementSet) -> Result<ElementSet> {
        if self.fingerprint != other.fingerprint {
            return Err(Error::LatticeMismatch);
        }
        let members = self.members.iter().copied().filter(|&e| other.contains(e)).collect();
        Ok(ElementSet { fingerprint: self.fingerprint, members })
    }
}

impl OrthoLattice {
    /// Assemble a lattice from an order relation (given as up-sets) and an
    /// ortho map. Meet and join are computed from the order; the result is
    /// validated at the requested level.
    pub(crate) fn from_order(
        up: BitRows,
        ortho: Vec<Elem>,
        labels: Vec<String>,
        validation: Validation,
    ) -> Result<OrthoLattice> {
        let n = ortho.len();
        let down = up.transpose();
        let meet = bound_table(&down, n).map_err(|(a, b)| {
            Error::InvalidLattice(format!("elements #{a} and #{b} have no meet"))
        })?;
        let join = bound_table(&up, n).map_err(|(a, b)| {
            Error::InvalidLattice(format!("elements #{a} and #{b} have no join"))
        })?;
        Self::assemble(up, Some(down), ortho, meet, join, labels, validation)
    }

    /// Assemble from precomputed tables. Used by constructors that know their
    /// meet and join in closed form.
    pub(crate) fn assemble(
        up: BitRows,
        down: Option<BitRows>,
        ortho: Vec<Elem>,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        labels: Vec<String>,
        validation: Validation,
    ) -> Result<OrthoLattice> {
        let n = ortho.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty carrier".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::Capacity(format!("{n} elements exceed the index width")));
        }
        if labels.len() != n {
            return Err(Error::InvalidLattice("label count differs from n".into()));
        }
        let down = down.unwrap_or_else(|| up.transpose());
        let bottom = (0..n)
            .find(|&a| up.count_row(a) as usize == n)
            .ok_or_else(|| Error::InvalidLattice("no bottom element".into()))?;
        let top = (0..n)
            .find(|&a| down.count_row(a) as usize == n)
            .ok_or_else(|| Error::InvalidLattice("no top element".into()))?;
        let mut by_label = HashMap::with_capacity(n);
        for (i, s) in labels.iter().enumerate() {
            if by_label.insert(s.clone(), Elem(i as u16)).is_some() {
                return Err(Error::InvalidLattice(format!("duplicate label `{s}`")));
            }
        }
        let mut fp = Fnv::new();
        fp.write_u64(n as u64);
        for &w in up.raw() {
            fp.write_u64(w);
        }
        for e in &ortho {
            fp.write_u64(e.0 as u64);
        }
        let l = OrthoLattice {
            n,
            up,
            down,
            ortho,
            meet,
            join,
            bottom: Elem(bottom as u16),
            top: Elem(top as u16),
            labels,
            by_label,
            fingerprint: fp.finish(),
            orthomodular: false,
            commute: OnceLock::new(),
        };
        let report = l.verify_axioms();
        let l = match &report.violation {
            None => OrthoLattice { orthomodular: true, ..l },
            Some(v) if v.law == "orthomodular law" && validation == Validation::Ortholattice => l,
            Some(_) => return Err(Error::InvalidLattice(report.describe(&l))),
        };
        Ok(l)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).map(|i| Elem(i as u16))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `false` only for ortholattices loaded with [`Validation::Ortholattice`]
    /// that violate the orthomodular law.
    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up.get(a.index(), b.index())
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a.index()]
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Look up an element by label. Accepts `#i` for a raw index and `⊥` as
    /// a synonym for the `'` used in built-in labels.
    pub fn element(&self, name: &str) -> Result<Elem> {
        let name = name.trim();
        if let Some(ix) = name.strip_prefix('#') {
            let i: usize = ix.parse().map_err(|_| Error::UnknownElement(name.to_string()))?;
            if i < self.n {
                return Ok(Elem(i as u16));
            }
            return Err(Error::UnknownElement(name.to_string()));
        }
        if let Some(&e) = self.by_label.get(name) {
            return Ok(e);
        }
        let alt = name.replace('⊥', "'");
        self.by_label.get(&alt).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        if e.index() < self.n {
            Ok(e)
        } else {
            Err(Error::UnknownElement(format!("#{}", e.0)))
        }
    }

    pub fn check_set(&self, s: &ElementSet) -> Result<()> {
        if s.fingerprint == self.fingerprint {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// Covering pairs (a, b) with a < b and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self.elements().any(|c| {
                    c != a && c != b && self.leq(a, c) && self.leq(c, b)
                });
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Check the ortholattice axioms and the orthomodular law over all
    /// pairs, returning the first violation.
    pub fn verify_axioms(&self) -> AxiomReport {
        AxiomReport { violation: self.first_violation() }
    }

    fn first_violation(&self) -> Option<Violation> {
        let n = self.n;
        let v = |law: &'static str, els: &[usize]| {
            Some(Violation { law, elements: els.iter().map(|&i| Elem(i as u16)).collect() })
        };
        for a in 0..n {
            if !self.up.get(a, a) {
                return v("reflexivity", &[a]);
            }
        }
        for a in 0..n {
            for b in iter_bits(self.up.row(a)) {
                if b != a && self.up.get(b, a) {
                    return v("antisymmetry", &[a, b]);
                }
                // up(a) must contain up(b) for transitivity
                let (ra, rb) = (self.up.row(a), self.up.row(b));
                if ra.iter().zip(rb).any(|(x, y)| y & !x != 0) {
                    return v("transitivity", &[a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let m = self.meet[a * n + b].index();
                let j = self.join[a * n + b].index();
                let (da, db, dm) = (self.down.row(a), self.down.row(b), self.down.row(m));
                if da.iter().zip(db).zip(dm).any(|((x, y), z)| x & y != *z) {
                    return v("meet table", &[a, b]);
                }
                let (ua, ub, uj) = (self.up.row(a), self.up.row(b), self.up.row(j));
                if ua.iter().zip(ub).zip(uj).any(|((x, y), z)| x & y != *z) {
                    return v("join table", &[a, b]);
                }
            }
        }
        for a in 0..n {
            let o = self.ortho[a].index();
            if o >= n || self.ortho[o].index() != a {
                return v("ortho involution", &[a]);
            }
            if self.join[a * n + o] != self.top {
                return v("excluded middle", &[a]);
            }
            if self.meet[a * n + o] != self.bottom {
                return v("noncontradiction", &[a]);
            }
        }
        for a in 0..n {
            for b in iter_bits(self.up.row(a)) {
                if !self.up.get(self.ortho[b].index(), self.ortho[a].index()) {
                    return v("ortho order-reversal", &[a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = self.ortho[self.meet[a * n + b].index()];
                let rhs = self.join[self.ortho[a].index() * n + self.ortho[b].index()];
                if lhs != rhs {
                    return v("De Morgan law", &[a, b]);
                }
            }
        }
        for a in 0..n {
            for b in iter_bits(self.up.row(a)) {
                let inner = self.meet[self.ortho[a].index() * n + b];
                if self.join[a * n + inner.index()].index() != b {
                    return v("orthomodular law", &[a, b]);
                }
            }
        }
        None
    }
}

/// Meet (from down-sets) or join (from up-sets) table. Returns the first
/// pair without a greatest common lower bound on failure.
fn bound_table(sets: &BitRows, n: usize) -> std::result::Result<Vec<Elem>, (usize, usize)> {
    let size: Vec<u32> = (0..n).map(|i| sets.count_row(i)).collect();
    let mut table = vec![Elem(0); n * n];
    let mut common = vec![0u64; sets.words()];
    for a in 0..n {
        for b in a..n {
            for (w, (x, y)) in common.iter_mut().zip(sets.row(a).iter().zip(sets.row(b))) {
                *w = x & y;
            }
            let total: u32 = common.iter().map(|w| w.count_ones()).sum();
            let best = iter_bits(&common).max_by_key(|&m| size[m]).ok_or((a, b))?;
            if size[best] != total {
                return Err((a, b));
            }
            table[a * n + b] = Elem(best as u16);
            table[b * n + a] = Elem(best as u16);
        }
    }
    Ok(table)
}
