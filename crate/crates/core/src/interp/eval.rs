use super::Interpretation;
use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::lattice::{Elem, OrthoLattice};
use crate::quniverse::{Env, QSet, Universe};
use std::collections::HashMap;
use std::sync::RwLock;

/// Atomic relation tag for the memo.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    In,
    Sub,
}

/// Memo for atomic truth values, keyed by relation, arguments and the
/// interpretation fingerprint. Safe to share between threads.
#[derive(Debug)]
pub struct TruthCache {
    enabled: bool,
    map: RwLock<HashMap<(Rel, QSet, QSet, u64), Elem>>,
}

impl Default for TruthCache {
    fn default() -> Self {
        TruthCache::new(true)
    }
}

impl TruthCache {
    pub fn new(enabled: bool) -> TruthCache {
        TruthCache { enabled, map: RwLock::default() }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("cache lock").clear();
    }

    fn get(&self, key: &(Rel, QSet, QSet, u64)) -> Option<Elem> {
        if !self.enabled {
            return None;
        }
        self.map.read().expect("cache lock").get(key).copied()
    }

    fn put(&self, key: (Rel, QSet, QSet, u64), v: Elem) {
        if self.enabled {
            self.map.write().expect("cache lock").entry(key).or_insert(v);
        }
    }

    /// Stored entries, for auditing against recomputation.
    pub fn entries(&self) -> Vec<(Rel, QSet, QSet, Elem)> {
        let map = self.map.read().expect("cache lock");
        let mut out: Vec<_> = map.iter().map(|(k, &v)| (k.0, k.1, k.2, v)).collect();
        out.sort_by_key(|e| (e.1, e.2, e.0 as u8));
        out
    }
}

#[derive(Clone, Debug)]
enum Arg {
    Slot(usize),
    Const(usize),
}

#[derive(Clone, Debug)]
enum Node {
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    All(usize, Arg, Box<Node>),
    Ex(usize, Arg, Box<Node>),
    Atom(Rel, Arg, Arg),
}

/// A Δ0 formula with variables resolved to slots and constants to argument
/// positions (first-occurrence order).
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    constants: Vec<String>,
    slots: usize,
    source: Formula,
}

impl Compiled {
    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn arity(&self) -> usize {
        self.constants.len()
    }

    pub fn source(&self) -> &Formula {
        &self.source
    }

    /// Arguments in constant order, looked up by name.
    pub fn bind(&self, env: &Env) -> Result<Vec<QSet>> {
        self.constants.iter().map(|c| env.get(c).ok_or_else(|| Error::Unresolved(c.clone()))).collect()
    }
}

/// Compile a formula. Unbounded quantifiers are rejected.
pub fn compile(f: &Formula) -> Result<Compiled> {
    let constants = f.constants();
    let mut scope: Vec<(String, usize)> = Vec::new();
    let mut slots = 0;
    let root = compile_node(f, &constants, &mut scope, &mut slots)?;
    Ok(Compiled { root, constants, slots, source: f.clone() })
}

fn compile_term(t: &Term, constants: &[String], scope: &[(String, usize)]) -> Result<Arg> {
    match t {
        Term::Var(x) => scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|&(_, s)| Arg::Slot(s))
            .ok_or_else(|| Error::Unbound(x.clone())),
        Term::Const(c) => {
            Ok(Arg::Const(constants.iter().position(|n| n == c).ok_or_else(|| Error::Unresolved(c.clone()))?))
        }
    }
}

fn compile_node(f: &Formula, cs: &[String], scope: &mut Vec<(String, usize)>, slots: &mut usize) -> Result<Node> {
    use Formula as F;
    let mut bin = |a: &Formula, b: &Formula| -> Result<(Box<Node>, Box<Node>)> {
        Ok((Box::new(compile_node(a, cs, scope, slots)?), Box::new(compile_node(b, cs, scope, slots)?)))
    };
    Ok(match f {
        F::Not(a) => Node::Not(Box::new(compile_node(a, cs, scope, slots)?)),
        F::And(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::And(a, b)
        }
        F::Or(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Or(a, b)
        }
        F::Imp(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Imp(a, b)
        }
        F::Iff(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Iff(a, b)
        }
        F::ForallIn(x, t, body) | F::ExistsIn(x, t, body) => {
            let range = compile_term(t, cs, scope)?;
            let s = *slots;
            *slots += 1;
            scope.push((x.clone(), s));
            let body = compile_node(body, cs, scope, slots);
            scope.pop();
            let body = Box::new(body?);
            if matches!(f, F::ForallIn(..)) {
                Node::All(s, range, body)
            } else {
                Node::Ex(s, range, body)
            }
        }
        F::Forall(..) | F::Exists(..) => {
            return Err(Error::Unsupported(format!("unbounded quantifier in `{f}`")));
        }
        F::Eq(a, b) => Node::Atom(Rel::Eq, compile_term(a, cs, scope)?, compile_term(b, cs, scope)?),
        F::In(a, b) => Node::Atom(Rel::In, compile_term(a, cs, scope)?, compile_term(b, cs, scope)?),
        F::Sub(a, b) => Node::Atom(Rel::Sub, compile_term(a, cs, scope)?, compile_term(b, cs, scope)?),
    })
}

/// Evaluates formulas of one interpretation over one universe.
pub struct Evaluator<'a> {
    interp: &'a Interpretation,
    uni: &'a Universe,
    cache: TruthCache,
}

impl<'a> Evaluator<'a> {
    pub fn new(interp: &'a Interpretation, uni: &'a Universe) -> Result<Evaluator<'a>> {
        Evaluator::with_cache(interp, uni, true)
    }

    pub fn with_cache(interp: &'a Interpretation, uni: &'a Universe, enabled: bool) -> Result<Evaluator<'a>> {
        if interp.lattice().fingerprint() != uni.lattice().fingerprint() {
            return Err(Error::LatticeMismatch);
        }
        Ok(Evaluator { interp, uni, cache: TruthCache::new(enabled) })
    }

    pub fn interp(&self) -> &Interpretation {
        self.interp
    }

    pub fn universe(&self) -> &Universe {
        self.uni
    }

    pub fn lattice(&self) -> &OrthoLattice {
        self.interp.lattice()
    }

    pub fn cache(&self) -> &TruthCache {
        &self.cache
    }

    fn fp(&self) -> u64 {
        self.interp.fingerprint()
    }

    /// ⟦u = v⟧ by (A1).
    pub fn eq(&self, u: QSet, v: QSet) -> Elem {
        let key = (Rel::Eq, u, v, self.fp());
        if let Some(e) = self.cache.get(&key) {
            return e;
        }
        let l = self.lattice();
        let mut acc = l.top();
        for (u1, w) in self.uni.node(u).dom.iter() {
            acc = l.meet(acc, self.interp.implies(*w, self.mem(*u1, v)));
        }
        for (v1, w) in self.uni.node(v).dom.iter() {
            acc = l.meet(acc, self.interp.implies(*w, self.mem(*v1, u)));
        }
        self.cache.put(key, acc);
        acc
    }

    /// ⟦u ∈ v⟧ by (A2).
    pub fn mem(&self, u: QSet, v: QSet) -> Elem {
        let key = (Rel::In, u, v, self.fp());
        if let Some(e) = self.cache.get(&key) {
            return e;
        }
        let l = self.lattice();
        let mut acc = l.bottom();
        for (v1, w) in self.uni.node(v).dom.iter() {
            acc = l.join(acc, self.interp.and_then(*w, self.eq(*v1, u)));
        }
        self.cache.put(key, acc);
        acc
    }

    /// ⟦u ⊆ v⟧ as ⟦(∀x∈u)(x∈v)⟧.
    pub fn sub(&self, u: QSet, v: QSet) -> Elem {
        let key = (Rel::Sub, u, v, self.fp());
        if let Some(e) = self.cache.get(&key) {
            return e;
        }
        let l = self.lattice();
        let mut acc = l.top();
        for (u1, w) in self.uni.node(u).dom.iter() {
            acc = l.meet(acc, self.interp.implies(*w, self.mem(*u1, v)));
        }
        self.cache.put(key, acc);
        acc
    }

    fn check_args(&self, f: &Compiled, args: &[QSet]) -> Result<()> {
        if args.len() != f.arity() {
            return Err(Error::Precondition(format!(
                "formula has {} constants, {} arguments given",
                f.arity(),
                args.len()
            )));
        }
        if args.iter().any(|&u| !self.uni.owns(u)) {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    /// ⟦f(args)⟧ with `args` in the order of `f.constants()`.
    pub fn eval(&self, f: &Compiled, args: &[QSet]) -> Result<Elem> {
        self.check_args(f, args)?;
        let mut slots = vec![None; f.slots];
        Ok(self.node(&f.root, args, &mut slots))
    }

    /// Compile and evaluate, binding constants from `env`.
    pub fn truth_value(&self, f: &Formula, env: &Env) -> Result<Elem> {
        let c = compile(f)?;
        let args = c.bind(env)?;
        self.eval(&c, &args)
    }

    fn arg(a: &Arg, args: &[QSet], slots: &[Option<QSet>]) -> QSet {
        match *a {
            Arg::Const(i) => args[i],
            Arg::Slot(s) => slots[s].expect("slot bound by its quantifier"),
        }
    }

    fn node(&self, n: &Node, args: &[QSet], slots: &mut Vec<Option<QSet>>) -> Elem {
        let l = self.lattice();
        match n {
            Node::Not(a) => l.ortho(self.node(a, args, slots)),
            Node::And(a, b) => {
                let x = self.node(a, args, slots);
                l.meet(x, self.node(b, args, slots))
            }
            Node::Or(a, b) => {
                let x = self.node(a, args, slots);
                l.join(x, self.node(b, args, slots))
            }
            Node::Imp(a, b) => {
                let x = self.node(a, args, slots);
                self.interp.implies(x, self.node(b, args, slots))
            }
            Node::Iff(a, b) => {
                let x = self.node(a, args, slots);
                let y = self.node(b, args, slots);
                l.join(l.meet(x, y), l.meet(l.ortho(x), l.ortho(y)))
            }
            Node::All(s, range, body) => {
                let u = Self::arg(range, args, slots);
                let mut acc = l.top();
                for &(c, w) in self.uni.node(u).dom.iter() {
                    slots[*s] = Some(c);
                    acc = l.meet(acc, self.interp.implies(w, self.node(body, args, slots)));
                }
                slots[*s] = None;
                acc
            }
            Node::Ex(s, range, body) => {
                let u = Self::arg(range, args, slots);
                let mut acc = l.bottom();
                for &(c, w) in self.uni.node(u).dom.iter() {
                    slots[*s] = Some(c);
                    acc = l.join(acc, self.interp.and_then(w, self.node(body, args, slots)));
                }
                slots[*s] = None;
                acc
            }
            Node::Atom(rel, a, b) => {
                let (u, v) = (Self::arg(a, args, slots), Self::arg(b, args, slots));
                match rel {
                    Rel::Eq => self.eq(u, v),
                    Rel::In => self.mem(u, v),
                    Rel::Sub => self.sub(u, v),
                }
            }
        }
    }
}

/// One-shot ⟦f⟧ with constants bound from `env`.
pub fn truth_value(interp: &Interpretation, uni: &Universe, f: &Formula, env: &Env) -> Result<Elem> {
    Evaluator::new(interp, uni)?.truth_value(f, env)
}
