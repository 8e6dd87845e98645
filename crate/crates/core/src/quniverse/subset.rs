use super::hf::HfSet;
use super::{QSet, Universe};
use crate::error::{Error, Result};
use crate::lattice::{Elem, OrthoLattice};
use crate::ops::BinaryOperation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A ∈ P(X̌)^(Q): a weight for each x̌, x ∈ X.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantumSubset {
    base: Vec<HfSet>,
    weights: Vec<Elem>,
    fingerprint: u64,
}

impl QuantumSubset {
    /// Weights are given in the order of `base` after sorting and
    /// deduplication of `base` (pass a sorted, distinct base to be safe).
    pub fn new(l: &OrthoLattice, base: Vec<HfSet>, weights: Vec<Elem>) -> Result<QuantumSubset> {
        if base.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("base must be strictly increasing".into()));
        }
        if base.len() != weights.len() {
            return Err(Error::Precondition("one weight per base element".into()));
        }
        for &w in &weights {
            l.check(w)?;
        }
        Ok(QuantumSubset { base, weights, fingerprint: l.fingerprint() })
    }

    /// The constant subset with every weight `w`.
    pub fn constant(l: &OrthoLattice, base: Vec<HfSet>, w: Elem) -> Result<QuantumSubset> {
        let n = base.len();
        QuantumSubset::new(l, base, vec![w; n])
    }

    pub fn base(&self) -> &[HfSet] {
        &self.base
    }

    pub fn weights(&self) -> &[Elem] {
        &self.weights
    }

    pub fn weight(&self, x: &HfSet) -> Option<Elem> {
        self.base.binary_search(x).ok().map(|i| self.weights[i])
    }

    fn same_base(&self, o: &QuantumSubset) -> Result<()> {
        if self.fingerprint != o.fingerprint {
            return Err(Error::LatticeMismatch);
        }
        if self.base != o.base {
            return Err(Error::Precondition("quantum subsets over different bases".into()));
        }
        Ok(())
    }

    fn zip(&self, o: &QuantumSubset, f: impl Fn(Elem, Elem) -> Elem) -> Result<QuantumSubset> {
        self.same_base(o)?;
        let weights = self.weights.iter().zip(&o.weights).map(|(&a, &b)| f(a, b)).collect();
        Ok(QuantumSubset { base: self.base.clone(), weights, fingerprint: self.fingerprint })
    }

    /// A⊥(x̌) = A(x̌)⊥.
    pub fn complement(&self, l: &OrthoLattice) -> QuantumSubset {
        let weights = self.weights.iter().map(|&w| l.ortho(w)).collect();
        QuantumSubset { base: self.base.clone(), weights, fingerprint: self.fingerprint }
    }

    pub fn meet(&self, l: &OrthoLattice, o: &QuantumSubset) -> Result<QuantumSubset> {
        self.zip(o, |a, b| l.meet(a, b))
    }

    pub fn join(&self, l: &OrthoLattice, o: &QuantumSubset) -> Result<QuantumSubset> {
        self.zip(o, |a, b| l.join(a, b))
    }

    /// (A ∩∗ B)(x̌) = A(x̌) ∗ B(x̌).
    pub fn quantized_meet(&self, o: &QuantumSubset, conj: &BinaryOperation) -> Result<QuantumSubset> {
        if conj.lattice().fingerprint() != self.fingerprint {
            return Err(Error::LatticeMismatch);
        }
        self.zip(o, |a, b| conj.apply(a, b))
    }

    /// The node with dom = dom(X̌).
    pub fn to_qset(&self, uni: &Universe) -> Result<QSet> {
        if uni.lattice().fingerprint() != self.fingerprint {
            return Err(Error::LatticeMismatch);
        }
        let dom = self
            .base
            .iter()
            .zip(&self.weights)
            .map(|(x, &w)| Ok((uni.check_embed(x)?, w)))
            .collect::<Result<Vec<_>>>()?;
        uni.make(dom)
    }
}

/// P(X̌)^(Q): every weight assignment when there are at most `budget` of
/// them, otherwise `budget` uniform draws from `seed`. Order is
/// deterministic: lexicographic in weight indices, or draw order.
pub fn enumerate_power(base: &[HfSet], l: &OrthoLattice, budget: usize, seed: u64) -> Result<Vec<QuantumSubset>> {
    let mut base = base.to_vec();
    base.sort();
    base.dedup();
    let n = l.len();
    let k = base.len();
    let total = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match total {
        Some(t) if t <= budget => {
            let mut out = Vec::with_capacity(t);
            let mut idx = vec![0usize; k];
            loop {
                let weights = idx.iter().map(|&i| Elem(i as u16)).collect();
                out.push(QuantumSubset::new(l, base.clone(), weights)?);
                let mut pos = k;
                loop {
                    if pos == 0 {
                        return Ok(out);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..budget)
                .map(|_| {
                    let weights = (0..k).map(|_| Elem(rng.gen_range(0..n) as u16)).collect();
                    QuantumSubset::new(l, base.clone(), weights)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn counts() {
        let m2 = OrthoLattice::mo(2).unwrap();
        assert_eq!(enumerate_power(&[HfSet::ordinal(0)], &m2, 100, 0).unwrap().len(), 6);
        let b1 = OrthoLattice::boolean(1).unwrap();
        assert_eq!(enumerate_power(&[HfSet::ordinal(0), HfSet::ordinal(1)], &b1, 100, 0).unwrap().len(), 4);
        let p = OrthoLattice::product(&b1, &m2).unwrap();
        assert_eq!(enumerate_power(&[HfSet::ordinal(0)], &p, 100, 0).unwrap().len(), 12);
        let sampled = enumerate_power(&[HfSet::ordinal(0), HfSet::ordinal(1), HfSet::ordinal(2)], &p, 50, 3).unwrap();
        assert_eq!(sampled.len(), 50);
        assert_eq!(sampled, enumerate_power(&[HfSet::ordinal(2), HfSet::ordinal(1), HfSet::ordinal(0)], &p, 50, 3).unwrap());
    }

    #[test]
    fn algebra() {
        let l = Arc::new(OrthoLattice::mo(2).unwrap());
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        let x = vec![HfSet::ordinal(0)];
        let sa = QuantumSubset::new(&l, x.clone(), vec![a]).unwrap();
        let sb = QuantumSubset::new(&l, x.clone(), vec![b]).unwrap();
        assert_eq!(sa.complement(&l).complement(&l), sa);
        let s3 = BinaryOperation::conjunction(l.clone(), 3).unwrap();
        let s5 = BinaryOperation::conjunction(l.clone(), 5).unwrap();
        assert_eq!(sa.quantized_meet(&sb.complement(&l), &s3).unwrap().weights(), &[a]);
        assert_eq!(sa.quantized_meet(&sb, &s5).unwrap(), sa.meet(&l, &sb).unwrap());
        let uni = Universe::new(l.clone());
        assert_eq!(sa.to_qset(&uni).unwrap(), uni.p_tilde(a).unwrap());
        let other = QuantumSubset::new(&l, vec![HfSet::ordinal(1)], vec![a]).unwrap();
        assert!(sa.meet(&l, &other).is_err());
    }
}
