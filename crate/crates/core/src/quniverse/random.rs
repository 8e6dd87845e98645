use super::hf::HfSet;
use super::{QSet, Universe};
use crate::error::Result;
use crate::lattice::Elem;
use rand::seq::SliceRandom;
use rand::Rng;

/// Stratified random QSets of bounded rank: check-embeddings, P̃ for random
/// elements, restrictions and mixed nests with random weights. Noncommuting
/// supports come up often on non-Boolean lattices.
#[derive(Clone, Debug)]
pub struct QSetSampler {
    pub max_rank: u32,
    /// Largest dom of a mixed nest.
    pub width: usize,
}

impl QSetSampler {
    pub fn new(max_rank: u32, width: usize) -> QSetSampler {
        QSetSampler { max_rank, width }
    }

    fn element<R: Rng>(uni: &Universe, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..uni.lattice().len()) as u16)
    }

    /// One draw of rank at most `self.max_rank`.
    pub fn sample<R: Rng>(&self, uni: &Universe, rng: &mut R) -> Result<QSet> {
        self.draw(uni, rng, self.max_rank)
    }

    fn draw<R: Rng>(&self, uni: &Universe, rng: &mut R, max_rank: u32) -> Result<QSet> {
        if max_rank == 0 {
            return Ok(uni.empty());
        }
        match rng.gen_range(0..5) {
            0 => {
                let h = HfSet::random(rng, max_rank as usize, 2);
                uni.check_embed(&h)
            }
            1 => uni.p_tilde(Self::element(uni, rng)),
            2 if max_rank >= 2 => {
                let u = self.draw(uni, rng, max_rank - 1)?;
                uni.restrict(u, Self::element(uni, rng))
            }
            _ => {
                let k = rng.gen_range(0..=self.width);
                let mut dom: Vec<(QSet, Elem)> = Vec::with_capacity(k);
                for _ in 0..k {
                    let c = self.draw(uni, rng, max_rank - 1)?;
                    if dom.iter().all(|(d, _)| *d != c) {
                        let w = if rng.gen_bool(0.2) { uni.lattice().top() } else { Self::element(uni, rng) };
                        dom.push((c, w));
                    }
                }
                dom.shuffle(rng);
                uni.make(dom)
            }
        }
    }

    /// `n` independent draws.
    pub fn tuple<R: Rng>(&self, uni: &Universe, rng: &mut R, n: usize) -> Result<Vec<QSet>> {
        (0..n).map(|_| self.sample(uni, rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::OrthoLattice;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn ranks_are_bounded_and_draws_reproducible() {
        let uni = Universe::new(Arc::new(OrthoLattice::mo(2).unwrap()));
        let s = QSetSampler::new(3, 3);
        let mut r1 = ChaCha8Rng::seed_from_u64(5);
        let xs = s.tuple(&uni, &mut r1, 200).unwrap();
        assert!(xs.iter().all(|&u| uni.rank(u) <= 3));
        assert!(xs.iter().any(|&u| uni.rank(u) == 3));
        let mut r2 = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(s.tuple(&uni, &mut r2, 200).unwrap(), xs);
        let noncommuting = xs.iter().filter(|&&u| uni.set_commutator(&[u]).unwrap() != uni.lattice().top()).count();
        assert!(noncommuting > 20);
    }
}
