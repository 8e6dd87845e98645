//! A bounded-rank fragment of V^(Q).
//!
//! A [`Universe`] owns a hash-consed store of nodes over one lattice. A
//! [`QSet`] is a handle into that store; structurally equal sets always get
//! the same handle, so equality and hashing of handles are structural.

mod hf;
mod literal;
mod random;
mod subset;

pub use hf::{HfSet, MAX_HF_DEPTH};
pub use literal::{parse_env, parse_literal, Env};
pub use random::QSetSampler;
pub use subset::{enumerate_power, QuantumSubset};

use crate::error::{Error, Result};
use crate::lattice::bits::Fnv;
use crate::lattice::{Elem, ElementSet, OrthoLattice};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, RwLock};

static NEXT_UNIVERSE: AtomicU32 = AtomicU32::new(1);

/// Handle to a node of a [`Universe`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct QSet {
    uni: u32,
    idx: u32,
}

impl QSet {
    /// Position in the store; stable for the lifetime of the universe.
    pub fn index(self) -> usize {
        self.idx as usize
    }
}

#[derive(Debug)]
pub struct Node {
    /// (child, weight) pairs in canonical order.
    pub dom: Vec<(QSet, Elem)>,
    pub rank: u32,
    pub hash: u64,
    /// L(u), sorted. Always contains 0.
    pub support: Vec<Elem>,
}

#[derive(Default)]
struct Store {
    nodes: Vec<Arc<Node>>,
    index: HashMap<Vec<(u32, u16)>, u32>,
}

pub struct Universe {
    id: u32,
    lattice: Arc<OrthoLattice>,
    store: RwLock<Store>,
}

impl std::fmt::Debug for Universe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Universe").field("id", &self.id).field("nodes", &self.len()).finish()
    }
}

impl Universe {
    pub fn new(lattice: Arc<OrthoLattice>) -> Universe {
        Universe { id: NEXT_UNIVERSE.fetch_add(1, Ordering::Relaxed), lattice, store: RwLock::default() }
    }

    pub fn lattice(&self) -> &Arc<OrthoLattice> {
        &self.lattice
    }

    /// Number of distinct nodes built so far.
    pub fn len(&self) -> usize {
        self.store.read().expect("store lock").nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn owns(&self, u: QSet) -> bool {
        u.uni == self.id
    }

    fn check(&self, u: QSet) -> Result<()> {
        if u.uni != self.id {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn node(&self, u: QSet) -> Arc<Node> {
        assert_eq!(u.uni, self.id, "QSet from another universe");
        self.store.read().expect("store lock").nodes[u.index()].clone()
    }

    pub fn dom(&self, u: QSet) -> Vec<(QSet, Elem)> {
        self.node(u).dom.clone()
    }

    pub fn rank(&self, u: QSet) -> u32 {
        self.node(u).rank
    }

    pub fn structural_hash(&self, u: QSet) -> u64 {
        self.node(u).hash
    }

    /// u(x) for x ∈ dom(u).
    pub fn weight(&self, u: QSet, x: QSet) -> Option<Elem> {
        self.node(u).dom.iter().find(|(c, _)| *c == x).map(|p| p.1)
    }

    /// Build (or find) the node with the given dom. Children must be
    /// distinct and weights valid elements.
    pub fn make(&self, dom: Vec<(QSet, Elem)>) -> Result<QSet> {
        for (c, w) in &dom {
            self.check(*c)?;
            self.lattice.check(*w)?;
        }
        let mut entries: Vec<(u64, QSet, Elem)> = {
            let store = self.store.read().expect("store lock");
            dom.iter().map(|&(c, w)| (store.nodes[c.index()].hash, c, w)).collect()
        };
        entries.sort_by_key(|&(h, c, _)| (h, c.idx));
        if entries.windows(2).any(|w| w[0].1 == w[1].1) {
            return Err(Error::DuplicateChild);
        }
        let key: Vec<(u32, u16)> = entries.iter().map(|&(_, c, w)| (c.idx, w.0)).collect();
        if let Some(&idx) = self.store.read().expect("store lock").index.get(&key) {
            return Ok(QSet { uni: self.id, idx });
        }
        let mut store = self.store.write().expect("store lock");
        if let Some(&idx) = store.index.get(&key) {
            return Ok(QSet { uni: self.id, idx });
        }
        let mut fnv = Fnv::new();
        fnv.write_u64(entries.len() as u64);
        let mut rank = 0;
        let mut support = vec![self.lattice.bottom()];
        for &(h, c, w) in &entries {
            fnv.write_u64(h);
            fnv.write_u64(w.0 as u64);
            let child = &store.nodes[c.index()];
            rank = rank.max(child.rank + 1);
            support.extend_from_slice(&child.support);
            support.push(w);
        }
        support.sort_unstable();
        support.dedup();
        let idx = u32::try_from(store.nodes.len()).map_err(|_| Error::Capacity("universe store is full".into()))?;
        store.nodes.push(Arc::new(Node {
            dom: entries.iter().map(|&(_, c, w)| (c, w)).collect(),
            rank,
            hash: fnv.finish(),
            support,
        }));
        store.index.insert(key, idx);
        Ok(QSet { uni: self.id, idx })
    }

    /// 0̌, the node with empty dom.
    pub fn empty(&self) -> QSet {
        self.make(Vec::new()).expect("empty dom is valid")
    }

    /// v̌ = {ǔ | u ∈ v} × {1}.
    pub fn check_embed(&self, v: &HfSet) -> Result<QSet> {
        if v.rank() > MAX_HF_DEPTH {
            return Err(Error::Capacity(format!("set of rank {} exceeds {MAX_HF_DEPTH}", v.rank())));
        }
        let dom = v.members().map(|x| Ok((self.check_embed(x)?, self.lattice.top()))).collect::<Result<_>>()?;
        self.make(dom)
    }

    /// P̃ = {⟨0̌, P⟩}.
    pub fn p_tilde(&self, p: Elem) -> Result<QSet> {
        let z = self.empty();
        self.make(vec![(z, p)])
    }

    /// The classical set u is the check-embedding of, if any.
    pub fn as_check(&self, u: QSet) -> Option<HfSet> {
        let node = self.node(u);
        let top = self.lattice.top();
        let mut items = Vec::with_capacity(node.dom.len());
        for &(c, w) in &node.dom {
            if w != top {
                return None;
            }
            items.push(self.as_check(c)?);
        }
        Some(HfSet::from_members(items))
    }

    /// L(u).
    pub fn support(&self, u: QSet) -> ElementSet {
        ElementSet::new(&self.lattice, self.node(u).support.iter().copied()).expect("support of a valid node")
    }

    /// L(u₁) ∪ … ∪ L(uₙ); for an empty list just {0}.
    pub fn joint_support(&self, us: &[QSet]) -> Result<ElementSet> {
        let mut items = vec![self.lattice.bottom()];
        for &u in us {
            self.check(u)?;
            items.extend_from_slice(&self.node(u).support);
        }
        ElementSet::new(&self.lattice, items)
    }

    /// ⫫(u₁, …, uₙ) = ⫫(L(u₁) ∪ … ∪ L(uₙ)).
    pub fn set_commutator(&self, us: &[QSet]) -> Result<Elem> {
        self.lattice.commutator_set(&self.joint_support(us)?)
    }

    /// Q(u₁, …, uₙ) = L(u₁, …, uₙ)^!!.
    pub fn generated_logic(&self, us: &[QSet]) -> Result<ElementSet> {
        self.lattice.generated_sublogic(&self.joint_support(us)?)
    }

    /// u|_p = {⟨x|_p, u(x)∧p⟩ | x ∈ dom(u)} ∪ {⟨u, 0⟩}.
    pub fn restrict(&self, u: QSet, p: Elem) -> Result<QSet> {
        self.check(u)?;
        self.lattice.check(p)?;
        let mut memo = HashMap::new();
        self.restrict_memo(u, p, &mut memo)
    }

    fn restrict_memo(&self, u: QSet, p: Elem, memo: &mut HashMap<QSet, QSet>) -> Result<QSet> {
        if let Some(&r) = memo.get(&u) {
            return Ok(r);
        }
        let mut dom: Vec<(QSet, Elem)> = Vec::new();
        let mut pairs = Vec::new();
        for (x, w) in self.dom(u) {
            pairs.push((self.restrict_memo(x, p, memo)?, self.lattice.meet(w, p)));
        }
        pairs.push((u, self.lattice.bottom()));
        for (c, w) in pairs {
            match dom.iter().find(|e| e.0 == c) {
                Some(e) if e.1 == w => {}
                Some(_) => return Err(Error::DuplicateChild),
                None => dom.push((c, w)),
            }
        }
        let r = self.make(dom)?;
        memo.insert(u, r);
        Ok(r)
    }

    /// Every node reachable from `u`, children before parents, each once.
    pub fn postorder(&self, u: QSet) -> Vec<QSet> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        self.visit(u, &mut seen, &mut out);
        out
    }

    fn visit(&self, u: QSet, seen: &mut std::collections::HashSet<QSet>, out: &mut Vec<QSet>) {
        if !seen.insert(u) {
            return;
        }
        for (c, _) in self.dom(u) {
            self.visit(c, seen, out);
        }
        out.push(u);
    }

    /// Structural recursion over dom: `f` sees u and the folded values of its
    /// children paired with their weights.
    pub fn fold<A: Clone>(&self, u: QSet, mut f: impl FnMut(QSet, &[(A, Elem)]) -> A) -> A {
        let mut done: HashMap<QSet, A> = HashMap::new();
        for v in self.postorder(u) {
            let kids: Vec<(A, Elem)> = self.dom(v).iter().map(|(c, w)| (done[c].clone(), *w)).collect();
            let a = f(v, &kids);
            done.insert(v, a);
        }
        done.remove(&u).expect("root visited")
    }

    /// Whether u ∈ V^(R) for the sublogic R, i.e. L(u) ⊆ R.
    pub fn in_sublogic(&self, u: QSet, r: &ElementSet) -> Result<bool> {
        self.check(u)?;
        self.lattice.check_set(r)?;
        Ok(self.node(u).support.iter().all(|&e| r.contains(e)))
    }

    /// Copy `u` into `target`, mapping each weight through `map`. Fails when
    /// a weight has no image.
    pub fn transport(&self, u: QSet, target: &Universe, map: &dyn Fn(Elem) -> Option<Elem>) -> Result<QSet> {
        self.check(u)?;
        let mut done: HashMap<QSet, QSet> = HashMap::new();
        for v in self.postorder(u) {
            let dom = self
                .dom(v)
                .into_iter()
                .map(|(c, w)| {
                    let w2 = map(w).ok_or_else(|| {
                        Error::Precondition(format!("weight {} has no image", self.lattice.label(w)))
                    })?;
                    Ok((done[&c], w2))
                })
                .collect::<Result<Vec<_>>>()?;
            done.insert(v, target.make(dom)?);
        }
        Ok(done[&u])
    }

    /// Literal form of `u`, parseable by [`parse_env`].
    pub fn render(&self, u: QSet) -> String {
        if let Some(h) = self.as_check(u) {
            return format!("check {h}");
        }
        let node = self.node(u);
        if let [(c, w)] = node.dom[..] {
            if self.node(c).dom.is_empty() {
                return format!("ptilde {}", self.lattice.label(w));
            }
        }
        let parts: Vec<String> =
            node.dom.iter().map(|&(c, w)| format!("{} : {}", self.render(c), self.lattice.label(w))).collect();
        format!("qset {{{}}}", parts.join(", "))
    }
}
