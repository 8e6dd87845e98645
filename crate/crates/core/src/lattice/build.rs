use super::bits::BitRows;
use super::{Elem, ElementSet, OrthoLattice, Validation, DEFAULT_MAX_ELEMENTS};
use crate::error::{Error, Result};

fn atom_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl OrthoLattice {
    /// The power-set lattice 2^k with set complement as ortho.
    pub fn boolean(k: usize) -> Result<OrthoLattice> {
        Self::boolean_capped(k, DEFAULT_MAX_ELEMENTS)
    }

    pub fn boolean_capped(k: usize, cap: usize) -> Result<OrthoLattice> {
        if k == 0 {
            return Err(Error::Precondition("a Boolean logic needs at least one atom".into()));
        }
        if k > 16 || (1usize << k) > cap {
            return Err(Error::Capacity(format!("2^{k} elements exceed the cap of {cap}")));
        }
        let n = 1usize << k;
        let full = n - 1;
        let mut up = BitRows::new(n);
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                if a & b == a {
                    up.set(a, b);
                }
                meet[a * n + b] = Elem((a & b) as u16);
                join[a * n + b] = Elem((a | b) as u16);
            }
        }
        let ortho = (0..n).map(|a| Elem((full & !a) as u16)).collect();
        let labels = (0..n)
            .map(|a| match a {
                0 => "0".to_string(),
                _ if a == full => "1".to_string(),
                _ => (0..k).filter(|i| a >> i & 1 == 1).map(atom_name).collect(),
            })
            .collect();
        Self::assemble(up, None, ortho, meet, join, labels, Validation::Oml)
    }

    /// MO_m: the horizontal sum of m four-element Boolean blocks. Atoms come
    /// in pairs `a, a'`, `b, b'`, ...
    pub fn mo(m: usize) -> Result<OrthoLattice> {
        Self::mo_capped(m, DEFAULT_MAX_ELEMENTS)
    }

    pub fn mo_capped(m: usize, cap: usize) -> Result<OrthoLattice> {
        if m == 0 {
            return Err(Error::Precondition("MO_m needs m >= 1".into()));
        }
        let n = 2 * m + 2;
        if n > cap {
            return Err(Error::Capacity(format!("{n} elements exceed the cap of {cap}")));
        }
        let top = n - 1;
        let mut up = BitRows::new(n);
        for a in 0..n {
            up.set(a, a);
            up.set(0, a);
            up.set(a, top);
        }
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(top as u16); n * n];
        for a in 0..n {
            for b in 0..n {
                if up.get(a, b) {
                    meet[a * n + b] = Elem(a as u16);
                    join[a * n + b] = Elem(b as u16);
                } else if up.get(b, a) {
                    meet[a * n + b] = Elem(b as u16);
                    join[a * n + b] = Elem(a as u16);
                }
            }
        }
        let mut ortho = vec![Elem(0); n];
        ortho[0] = Elem(top as u16);
        ortho[top] = Elem(0);
        let mut labels = vec![String::new(); n];
        labels[0] = "0".into();
        labels[top] = "1".into();
        for i in 0..m {
            let (p, q) = (2 * i + 1, 2 * i + 2);
            ortho[p] = Elem(q as u16);
            ortho[q] = Elem(p as u16);
            labels[p] = atom_name(i);
            labels[q] = format!("{}'", atom_name(i));
        }
        Self::assemble(up, None, ortho, meet, join, labels, Validation::Oml)
    }

    /// Componentwise product; element (x, y) has index x·|L2| + y.
    pub fn product(l1: &OrthoLattice, l2: &OrthoLattice) -> Result<OrthoLattice> {
        Self::product_capped(l1, l2, DEFAULT_MAX_ELEMENTS)
    }

    pub fn product_capped(l1: &OrthoLattice, l2: &OrthoLattice, cap: usize) -> Result<OrthoLattice> {
        let (n1, n2) = (l1.len(), l2.len());
        let n = n1 * n2;
        if n > cap {
            return Err(Error::Capacity(format!("{n} elements exceed the cap of {cap}")));
        }
        let split = |i: usize| (Elem((i / n2) as u16), Elem((i % n2) as u16));
        let pack = |x: Elem, y: Elem| Elem((x.index() * n2 + y.index()) as u16);
        let mut up = BitRows::new(n);
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for a in 0..n {
            let (a1, a2) = split(a);
            for b in 0..n {
                let (b1, b2) = split(b);
                if l1.leq(a1, b1) && l2.leq(a2, b2) {
                    up.set(a, b);
                }
                meet[a * n + b] = pack(l1.meet(a1, b1), l2.meet(a2, b2));
                join[a * n + b] = pack(l1.join(a1, b1), l2.join(a2, b2));
            }
        }
        let ortho = (0..n)
            .map(|a| {
                let (a1, a2) = split(a);
                pack(l1.ortho(a1), l2.ortho(a2))
            })
            .collect();
        let labels = (0..n)
            .map(|a| {
                let (a1, a2) = split(a);
                format!("({},{})", l1.label(a1), l2.label(a2))
            })
            .collect();
        Self::assemble(up, None, ortho, meet, join, labels, Validation::Oml)
    }

    /// Horizontal sum: identify the bottoms and tops of the given logics and
    /// keep everything else incomparable across blocks. Labels that clash are
    /// prefixed with the block number.
    pub fn horizontal_sum(blocks: &[&OrthoLattice]) -> Result<OrthoLattice> {
        if blocks.is_empty() {
            return Err(Error::Precondition("horizontal sum of no blocks".into()));
        }
        if blocks.iter().any(|b| b.len() < 2) {
            return Err(Error::Precondition("horizontal sum needs nontrivial blocks".into()));
        }
        // global index per (block, element)
        let mut index: Vec<Vec<usize>> = Vec::new();
        let mut labels = vec!["0".to_string()];
        let mut owner = vec![usize::MAX];
        for (bi, b) in blocks.iter().enumerate() {
            let mut map = vec![0usize; b.len()];
            for e in b.elements() {
                if e == b.bottom() || e == b.top() {
                    continue;
                }
                map[e.index()] = labels.len();
                labels.push(b.label(e).to_string());
                owner.push(bi);
            }
            index.push(map);
        }
        let top = labels.len();
        labels.push("1".into());
        owner.push(usize::MAX);
        for (bi, b) in blocks.iter().enumerate() {
            index[bi][b.top().index()] = top;
        }
        let n = labels.len();
        if n > DEFAULT_MAX_ELEMENTS {
            return Err(Error::Capacity(format!("{n} elements exceed the cap")));
        }
        let mut seen = std::collections::HashMap::new();
        for l in &labels {
            *seen.entry(l.clone()).or_insert(0) += 1;
        }
        for i in 0..n {
            if seen[&labels[i]] > 1 {
                labels[i] = format!("{}:{}", owner[i], labels[i]);
            }
        }
        let mut up = BitRows::new(n);
        let mut ortho = vec![Elem(0); n];
        ortho[0] = Elem(top as u16);
        ortho[top] = Elem(0);
        for i in 0..n {
            up.set(0, i);
            up.set(i, top);
            up.set(i, i);
        }
        for (bi, b) in blocks.iter().enumerate() {
            for x in b.elements() {
                let gx = index[bi][x.index()];
                ortho[gx] = Elem(index[bi][b.ortho(x).index()] as u16);
                for y in b.elements() {
                    if b.leq(x, y) {
                        up.set(gx, index[bi][y.index()]);
                    }
                }
            }
        }
        Self::from_order(up, ortho, labels, Validation::Oml)
    }

    /// The six-element hexagon ortholattice O6: 0 < a < b < 1 and
    /// 0 < b' < a' < 1. It is an ortholattice but not orthomodular.
    pub fn hexagon() -> OrthoLattice {
        // 0, a, b, b', a', 1
        let names = ["0", "a", "b", "b'", "a'", "1"];
        let mut up = BitRows::new(6);
        for &(x, y) in &[(1, 2), (3, 4)] {
            up.set(x, y);
        }
        for i in 0..6 {
            up.set(i, i);
            up.set(0, i);
            up.set(i, 5);
        }
        let ortho = [5u16, 4, 3, 2, 1, 0].iter().map(|&i| Elem(i)).collect();
        Self::from_order(up, ortho, names.iter().map(|s| s.to_string()).collect(), Validation::Ortholattice)
            .expect("hexagon is an ortholattice")
    }

    /// General constructor from an order relation given as pairs (a ≤ b);
    /// reflexive-transitive closure is taken.
    pub fn from_pairs(
        n: usize,
        ortho: &[usize],
        leq: &[(usize, usize)],
        labels: Option<Vec<String>>,
        validation: Validation,
    ) -> Result<OrthoLattice> {
        if n == 0 || ortho.len() != n {
            return Err(Error::InvalidLattice("ortho must list one image per element".into()));
        }
        if n > DEFAULT_MAX_ELEMENTS {
            return Err(Error::Capacity(format!("{n} elements exceed the cap")));
        }
        if let Some(&bad) = ortho.iter().find(|&&o| o >= n) {
            return Err(Error::InvalidLattice(format!("ortho image {bad} out of range")));
        }
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in leq {
            if a >= n || b >= n {
                return Err(Error::InvalidLattice(format!("pair ({a},{b}) out of range")));
            }
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut up = BitRows::new(n);
        for (i, row) in rel.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r {
                    up.set(i, j);
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let ortho = ortho.iter().map(|&o| Elem(o as u16)).collect();
        Self::from_order(up, ortho, labels, validation)
    }

    /// Extract a subalgebra (closed under ortho, meet and join) as a lattice
    /// of its own, with the embedding into `self`.
    pub fn subalgebra(&self, set: &ElementSet) -> Result<(OrthoLattice, Vec<Elem>)> {
        self.check_set(set)?;
        let members = set.members();
        if !set.contains(self.bottom()) || !set.contains(self.top()) {
            return Err(Error::Precondition("subalgebra must contain 0 and 1".into()));
        }
        let pos = |e: Elem| members.binary_search(&e).ok();
        let k = members.len();
        let mut ortho = Vec::with_capacity(k);
        for &x in members {
            let o = pos(self.ortho(x))
                .ok_or_else(|| Error::Precondition("set not closed under ortho".into()))?;
            ortho.push(Elem(o as u16));
        }
        let mut meet = vec![Elem(0); k * k];
        let mut join = vec![Elem(0); k * k];
        let mut up = BitRows::new(k);
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                let m = pos(self.meet(x, y))
                    .ok_or_else(|| Error::Precondition("set not closed under meet".into()))?;
                let jn = pos(self.join(x, y))
                    .ok_or_else(|| Error::Precondition("set not closed under join".into()))?;
                meet[i * k + j] = Elem(m as u16);
                join[i * k + j] = Elem(jn as u16);
                if self.leq(x, y) {
                    up.set(i, j);
                }
            }
        }
        let labels = members.iter().map(|&e| self.label(e).to_string()).collect();
        let sub = Self::assemble(up, None, ortho, meet, join, labels, Validation::Oml)?;
        Ok((sub, members.to_vec()))
    }

    /// The interval [0, e] inside the subalgebra `within`, with relative
    /// ortho x ↦ x⊥ ∧ e. `e` must be central in `within` for the result to
    /// be an orthomodular lattice; this is validated.
    pub fn relative_interval(&self, within: &ElementSet, e: Elem) -> Result<(OrthoLattice, Vec<Elem>)> {
        self.check_set(within)?;
        let members: Vec<Elem> =
            within.members().iter().copied().filter(|&x| self.leq(x, e)).collect();
        let pos = |x: Elem| members.binary_search(&x).ok();
        let k = members.len();
        if k == 0 {
            return Err(Error::Precondition("interval below an element outside the set".into()));
        }
        let mut ortho = Vec::with_capacity(k);
        let mut meet = vec![Elem(0); k * k];
        let mut join = vec![Elem(0); k * k];
        let mut up = BitRows::new(k);
        for &x in &members {
            let o = pos(self.meet(self.ortho(x), e))
                .ok_or_else(|| Error::Precondition("relative ortho leaves the set".into()))?;
            ortho.push(Elem(o as u16));
        }
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                let m = pos(self.meet(x, y))
                    .ok_or_else(|| Error::Precondition("set not closed under meet".into()))?;
                let jn = pos(self.join(x, y))
                    .ok_or_else(|| Error::Precondition("set not closed under join".into()))?;
                meet[i * k + j] = Elem(m as u16);
                join[i * k + j] = Elem(jn as u16);
                if self.leq(x, y) {
                    up.set(i, j);
                }
            }
        }
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let sub = Self::assemble(up, None, ortho, meet, join, labels, Validation::Oml)?;
        Ok((sub, members))
    }

    /// An order- and ortho-preserving bijection `self → other`, if one
    /// exists. Backtracking with degree pruning; meant for small lattices.
    pub fn isomorphism(&self, other: &OrthoLattice) -> Option<Vec<Elem>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let deg = |l: &OrthoLattice, a: usize| (l.up.count_row(a), l.down.count_row(a));
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        fn go(
            a: &OrthoLattice,
            b: &OrthoLattice,
            i: usize,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            deg: &dyn Fn(&OrthoLattice, usize) -> (u32, u32),
        ) -> bool {
            if i == a.len() {
                return true;
            }
            if map[i].is_some() {
                return go(a, b, i + 1, map, used, deg);
            }
            let oi = a.ortho[i].index();
            for c in 0..b.len() {
                if used[c] || deg(a, i) != deg(b, c) {
                    continue;
                }
                let oc = b.ortho[c].index();
                if oi == i && oc != c || oi != i && (oc == c || used[oc] || map[oi].is_some()) {
                    continue;
                }
                let fits = |x: usize, y: usize, map: &[Option<usize>]| {
                    (0..a.len()).all(|k| match map[k] {
                        Some(m) => a.leq(Elem(x as u16), Elem(k as u16)) == b.leq(Elem(y as u16), Elem(m as u16))
                            && a.leq(Elem(k as u16), Elem(x as u16)) == b.leq(Elem(m as u16), Elem(y as u16)),
                        None => true,
                    })
                };
                if !fits(i, c, map) {
                    continue;
                }
                map[i] = Some(c);
                used[c] = true;
                let paired = oi != i;
                if paired {
                    map[oi] = Some(oc);
                    used[oc] = true;
                }
                if (!paired || fits(oi, oc, map)) && go(a, b, i + 1, map, used, deg) {
                    return true;
                }
                map[i] = None;
                used[c] = false;
                if paired {
                    map[oi] = None;
                    used[oc] = false;
                }
            }
            false
        }
        if go(self, other, 0, &mut map, &mut used, &deg) {
            Some(map.into_iter().map(|m| Elem(m.expect("complete map") as u16)).collect())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_shapes() {
        assert!(OrthoLattice::boolean(0).is_err());
        let b1 = OrthoLattice::boolean(1).unwrap();
        assert_eq!(b1.len(), 2);
        let b2 = OrthoLattice::boolean(2).unwrap();
        assert_eq!(b2.len(), 4);
        let a = b2.element("a").unwrap();
        assert_eq!(b2.label(b2.ortho(a)), "b");
        assert!(matches!(OrthoLattice::boolean(13), Err(Error::Capacity(_))));
        assert!(matches!(OrthoLattice::boolean_capped(5, 16), Err(Error::Capacity(_))));
        assert!(OrthoLattice::boolean_capped(4, 16).is_ok());
    }

    #[test]
    fn mo_shapes() {
        let m2 = OrthoLattice::mo(2).unwrap();
        assert_eq!(m2.labels(), &["0", "a", "a'", "b", "b'", "1"]);
        let (a, b) = (m2.element("a").unwrap(), m2.element("b").unwrap());
        assert_eq!(m2.meet(a, b), m2.bottom());
        assert_eq!(m2.join(a, b), m2.top());
        assert_eq!(OrthoLattice::mo(1).unwrap().len(), 4);
    }

    #[test]
    fn isomorphism_search() {
        let m1 = OrthoLattice::mo(1).unwrap();
        let b2 = OrthoLattice::boolean(2).unwrap();
        assert!(m1.isomorphism(&b2).is_some());
        let m2 = OrthoLattice::mo(2).unwrap();
        let b1 = OrthoLattice::boolean(1).unwrap();
        let p = OrthoLattice::product(&b1, &b1).unwrap();
        assert!(p.isomorphism(&b2).is_some());
        assert!(m2.isomorphism(&OrthoLattice::hexagon()).is_none());
        let m3 = OrthoLattice::mo(3).unwrap();
        let b3 = OrthoLattice::boolean(3).unwrap();
        assert!(m3.isomorphism(&b3).is_none());
        let map = m2.isomorphism(&m2).unwrap();
        for a in m2.elements() {
            assert_eq!(m2.ortho(map[a.index()]), map[m2.ortho(a).index()]);
        }
    }

    #[test]
    fn products() {
        let b1 = OrthoLattice::boolean(1).unwrap();
        let m2 = OrthoLattice::mo(2).unwrap();
        let p = OrthoLattice::product(&b1, &m2).unwrap();
        assert_eq!(p.len(), 12);
        assert!(p.verify_axioms().ok());
        assert_eq!(OrthoLattice::product(&m2, &m2).unwrap().len(), 36);
        assert!(matches!(OrthoLattice::product_capped(&m2, &m2, 35), Err(Error::Capacity(_))));
    }

    #[test]
    fn horizontal_sum_of_blocks_is_mo() {
        let b2 = OrthoLattice::boolean(2).unwrap();
        let s = OrthoLattice::horizontal_sum(&[&b2, &b2, &b2]).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.is_extremely_noncommutative() && !s.is_boolean());
    }

    #[test]
    fn hexagon_is_not_orthomodular() {
        let h = OrthoLattice::hexagon();
        assert!(!h.is_orthomodular());
        let r = h.verify_axioms();
        let v = r.violation.unwrap();
        assert_eq!(v.law, "orthomodular law");
        let (x, y) = (v.elements[0], v.elements[1]);
        assert!(h.leq(x, y));
        assert_ne!(h.join(x, h.meet(h.ortho(x), y)), y);
    }

    #[test]
    fn from_pairs_rejects_non_oml_by_default() {
        let ortho = [5, 4, 3, 2, 1, 0];
        let pairs = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
        assert!(OrthoLattice::from_pairs(6, &ortho, &pairs, None, Validation::Oml).is_err());
        let h = OrthoLattice::from_pairs(6, &ortho, &pairs, None, Validation::Ortholattice).unwrap();
        assert!(!h.is_orthomodular());
    }
}
