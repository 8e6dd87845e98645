mod common;

use common::{lattice, FAMILY};
use proptest::prelude::*;
use qvset::{Elem, ElementSet, OrthoLattice};

fn pick(l: &OrthoLattice, i: usize) -> Elem {
    Elem((i % l.len()) as u16)
}

proptest! {
    #[test]
    fn ortholattice_laws(li in 0..FAMILY.len(), i in any::<usize>(), j in any::<usize>()) {
        let l = lattice(FAMILY[li]);
        let (p, q) = (pick(&l, i), pick(&l, j));
        prop_assert_eq!(l.ortho(l.ortho(p)), p);
        prop_assert_eq!(l.meet(p, l.ortho(p)), l.bottom());
        prop_assert_eq!(l.join(p, l.ortho(p)), l.top());
        prop_assert_eq!(l.ortho(l.meet(p, q)), l.join(l.ortho(p), l.ortho(q)));
        if l.leq(p, q) {
            prop_assert!(l.leq(l.ortho(q), l.ortho(p)));
            // orthomodular law
            prop_assert_eq!(l.join(p, l.meet(q, l.ortho(p))), q);
        }
    }

    #[test]
    fn commutation(li in 0..FAMILY.len(), i in any::<usize>(), j in any::<usize>()) {
        let l = lattice(FAMILY[li]);
        let (p, q) = (pick(&l, i), pick(&l, j));
        let c = l.commutes(p, q);
        prop_assert_eq!(c, l.commutes(q, p));
        prop_assert_eq!(c, p == l.join(l.meet(p, q), l.meet(p, l.ortho(q))));
        prop_assert_eq!(c, l.commutes(p, l.ortho(q)));
        let pair = ElementSet::new(&l, [p, q]).unwrap();
        let com = l.commutator_pair(p, q);
        prop_assert_eq!(com, l.commutator_set(&pair).unwrap());
        prop_assert_eq!(com, l.commutator_bk(&pair).unwrap());
        prop_assert_eq!(c, com == l.top());
        // {P,Q}^!! is Boolean exactly when P and Q commute
        let gen = l.generated_sublogic(&pair).unwrap();
        let (sub, _) = l.subalgebra(&gen).unwrap();
        prop_assert_eq!(c, sub.is_boolean());
        // P∧E and Q∧E commute below E = ⫫(P,Q)
        prop_assert!(l.commutes(l.meet(p, com), l.meet(q, com)));
    }

    #[test]
    fn set_commutators_agree(li in 0..FAMILY.len(), picks in prop::collection::vec(any::<usize>(), 0..5)) {
        let l = lattice(FAMILY[li]);
        let a = ElementSet::new(&l, picks.iter().map(|&i| pick(&l, i))).unwrap();
        let com = l.commutator_set(&a).unwrap();
        prop_assert_eq!(com, l.commutator_bk(&a).unwrap());
        let cut: Vec<Elem> = a.members().iter().map(|&x| l.meet(x, com)).collect();
        for &x in &cut {
            for &y in &cut {
                prop_assert!(l.commutes(x, y));
            }
        }
        // the commutator lies in the center of the generated sublogic
        let gen = l.generated_sublogic(&a).unwrap();
        prop_assert!(gen.contains(com));
        for &x in gen.members() {
            prop_assert!(l.commutes(x, com));
        }
    }
}

#[test]
fn center_and_commutants() {
    for name in FAMILY {
        let l = lattice(name);
        let center = l.center();
        for p in l.elements() {
            let comm = l.commutant(&ElementSet::new(&l, [p]).unwrap()).unwrap();
            assert!(center.is_subset(&comm));
            assert!(comm.contains(p) && comm.contains(l.ortho(p)));
        }
        assert_eq!(center.len() == l.len(), l.is_boolean(), "{name}");
    }
}

#[test]
fn reference_shapes() {
    assert_eq!(lattice("mo2").len(), 6);
    assert_eq!(lattice("prod(bool1,mo2)").len(), 12);
    assert_eq!(lattice("bool3").len(), 8);
    assert!(lattice("mo2").is_extremely_noncommutative());
    assert!(!lattice("prod(bool1,mo2)").is_extremely_noncommutative());
    let a = lattice("prod(bool1,mo2)");
    let b = lattice("prod(mo2,bool1)");
    assert!(a.isomorphism(&b).is_some());
    assert!(a.isomorphism(&lattice("mo3")).is_none());
}
