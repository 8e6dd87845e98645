mod common;

use common::{lattice, FAMILY};
use proptest::prelude::*;
use qvset::quniverse::{HfSet, QSetSampler, Universe};
use qvset::{Elem, ElementSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn restriction_support(li in 0..FAMILY.len(), seed in any::<u64>(), pi in any::<usize>()) {
        let l = lattice(FAMILY[li]);
        let uni = Universe::new(l.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = QSetSampler::new(3, 3).sample(&uni, &mut rng).unwrap();
        let p = Elem((pi % l.len()) as u16);
        let r = uni.restrict(u, p).unwrap();
        let support = uni.support(u);
        let cut = ElementSet::new(&l, support.members().iter().map(|&s| l.meet(s, p)).chain([l.bottom()])).unwrap();
        // the marker pair <u,0> keeps L(u) inside L(u|p)
        prop_assert_eq!(uni.support(r), cut.union(&support).unwrap());
        prop_assert_eq!(uni.restrict(u, p).unwrap(), r);
        // the marker child u has rank(u)
        prop_assert_eq!(uni.rank(r), uni.rank(u) + 1);
        // restriction is injective thanks to the marker
        let v = QSetSampler::new(3, 3).sample(&uni, &mut rng).unwrap();
        if v != u {
            prop_assert_ne!(uni.restrict(v, p).unwrap(), r);
        }
    }

    #[test]
    fn check_embedding(seed in any::<u64>(), li in 0..FAMILY.len()) {
        let l = lattice(FAMILY[li]);
        let uni = Universe::new(l.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = HfSet::random(&mut rng, 3, 3);
        let c = uni.check_embed(&h).unwrap();
        prop_assert_eq!(uni.as_check(c), Some(h.clone()));
        prop_assert!(uni.support(c).is_subset(&ElementSet::new(&l, [l.bottom(), l.top()]).unwrap()));
        prop_assert_eq!(uni.check_embed(&h).unwrap(), c);
        prop_assert_eq!(uni.set_commutator(&[c]).unwrap(), l.top());
    }

    #[test]
    fn sublogic_transport(li in 0..FAMILY.len(), seed in any::<u64>()) {
        let l = lattice(FAMILY[li]);
        let uni = Universe::new(l.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let us = QSetSampler::new(3, 2).tuple(&uni, &mut rng, 2).unwrap();
        let r = uni.generated_logic(&us).unwrap();
        for &u in &us {
            prop_assert!(uni.in_sublogic(u, &r).unwrap());
        }
        let (sub, emb) = l.subalgebra(&r).unwrap();
        let small = Universe::new(std::sync::Arc::new(sub));
        let back = |e: Elem| emb.iter().position(|&x| x == e).map(|i| Elem(i as u16));
        for &u in &us {
            let t = uni.transport(u, &small, &back).unwrap();
            prop_assert_eq!(small.rank(t), uni.rank(u));
            prop_assert_eq!(small.support(t).len(), uni.support(u).len());
        }
    }
}

#[test]
fn p_tilde_support() {
    let l = lattice("mo2");
    let uni = Universe::new(l.clone());
    for p in l.elements() {
        let t = uni.p_tilde(p).unwrap();
        assert_eq!(uni.support(t), ElementSet::new(&l, [l.bottom(), p]).unwrap());
        assert_eq!(uni.dom(t), vec![(uni.empty(), p)]);
    }
}
