mod common;

use common::{random_pair, spectral_cases, P64};
use num_complex::Complex;
use num_rational::BigRational;
use qvset::hilbert::sample::{hermitian_with_spectrum, random_projection, random_unitary};
use qvset::hilbert::*;
use qvset::ops::{conjunction, KotasSpec};
use qvset::{OrthoAlgebra, OrthoLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn twelve_identities_hold_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial_meets = 0;
    for _ in 0..100 {
        let (p, q) = random_pair(&mut rng);
        if p.meet(&q).unwrap().rank() > 0 {
            nontrivial_meets += 1;
        }
        for theta in [PI / 7.0, PI / 3.0, 1.0] {
            for j in 0..6 {
                for i in 0..2 {
                    let r = star_j_theta_i(j, &phase(theta), i, &p, &q).unwrap();
                    assert!(r.holds);
                }
            }
        }
    }
    assert!(nontrivial_meets > 10);
}

#[test]
fn literal_p_star0_q_reading_fails() {
    // Taking the displayed P∗₀Q literally as the head of case (iii) gives
    // a different projection whenever ⫫(P,Q) is not 1.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let logic = ProjectionLogic::<f64>::new(4).unwrap();
    let mut differs = 0;
    for _ in 0..20 {
        let (p, q) = random_pair(&mut rng);
        let w = phase(1.0);
        let head = conjunction(&logic, 0, &p, &q).unwrap();
        let tail = takeuti_phase(&p, &q, &w).unwrap().meet(&logic.commutator(&p, &q).ortho()).unwrap();
        let literal = head.join(&tail).unwrap();
        let value = star_j_theta_i(2, &w, 0, &p, &q).unwrap().value;
        if !literal.approx_eq(&value) {
            differs += 1;
        }
    }
    assert!(differs > 0);
}

#[test]
fn expansion_matches_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let (p, q) = random_pair(&mut rng);
        for theta in [PI / 7.0, PI / 3.0, 1.0] {
            let w = phase(theta);
            let a = takeuti_expansion(&p, &q, &w).unwrap();
            let b = takeuti_conjugation(&p, &q, &w).unwrap();
            assert!(a.approx_eq(&b));
            assert!(Projection::new(a.hermitian_part()).is_ok());
        }
    }
}

#[test]
fn theta_zero_and_commuting_pairs_fix_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..30 {
        let (p, q) = random_pair(&mut rng);
        assert!(takeuti_theta(&p, &q, 0.0).unwrap().approx_eq(&q));
        let q2 = p.ortho();
        assert!(takeuti_theta(&p, &q2, 0.7).unwrap().approx_eq(&q2));
        for j in 0..6 {
            for i in 0..2 {
                let r = star_j_theta_i(j, &phase(0.0), i, &p, &q).unwrap();
                let logic = ProjectionLogic::<f64>::new(4).unwrap();
                assert!(r.value.approx_eq(&conjunction(&logic, j, &p, &q).unwrap()));
            }
        }
    }
}

#[test]
fn exact_identities_with_rational_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = exact_phase("3/5", "4/5").unwrap();
    for _ in 0..5 {
        let p: Projection<BigRational> = random_projection(&mut rng, 3, 1).unwrap();
        let q: Projection<BigRational> = random_projection(&mut rng, 3, 2).unwrap();
        for j in 0..6 {
            for i in 0..2 {
                assert!(star_j_theta_i(j, &w, i, &p, &q).unwrap().holds);
            }
        }
    }
}

#[test]
fn c2_rank_one_pairs_generate_mo2() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let p: P64 = random_projection(&mut rng, 2, 1).unwrap();
        let q: P64 = random_projection(&mut rng, 2, 1).unwrap();
        let c = closure_generate(&[p.clone(), q.clone()], 64).unwrap();
        assert_eq!(c.lattice.len(), 6);
        assert!(c.lattice.is_extremely_noncommutative());
        assert!(c.lattice.isomorphism(&OrthoLattice::mo(2).unwrap()).is_some());
        let (gp, gq) = (c.locate(&p).unwrap(), c.locate(&q).unwrap());
        assert_eq!(c.lattice.commutator_pair(gp, gq), c.lattice.bottom());
    }
}

#[test]
fn closure_commutator_matches_matrix_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut seen = [false; 2];
    for k in 0..40 {
        // half of the pairs are built from a shared orthonormal basis
        let (p, q): (P64, P64) = if k % 2 == 0 {
            let u = random_unitary::<f64, _>(&mut rng, 3).unwrap();
            let pick = |rng: &mut ChaCha8Rng| {
                let cols: Vec<_> = (0..3).filter(|_| rng.gen_bool(0.5)).map(|j| u.column(j)).collect();
                if cols.is_empty() { Projection::zero(3) } else { Projection::onto_span(&cols).unwrap() }
            };
            (pick(&mut rng), pick(&mut rng))
        } else {
            (random_projection(&mut rng, 3, 1).unwrap(), random_projection(&mut rng, 3, 2).unwrap())
        };
        let c = closure_generate(&[p.clone(), q.clone()], 256).unwrap();
        let (gp, gq) = (c.locate(&p).unwrap(), c.locate(&q).unwrap());
        let central = c.lattice.commutator_pair(gp, gq) == c.lattice.top();
        assert_eq!(central, p.commutes_with(&q).unwrap());
        seen[central as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn q_value_order_detects_spectral_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for commuting in [true, false] {
        let mut ordered = 0;
        for (a, b) in spectral_cases(&mut rng, commuting) {
            let leq = spectral_order_leq(&a, &b).unwrap();
            ordered += leq as usize;
            for j in 0..5 {
                let v = q_value_order(&a, &b, &KotasSpec::conjunction(j).unwrap()).unwrap();
                assert_eq!(v.approx_eq(&Projection::identity(a.dim())), leq, "j={j}");
            }
        }
        assert!(ordered >= 10 && ordered < 50);
    }
}

#[test]
fn commuting_spectral_order_is_entrywise() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let u = random_unitary::<f64, _>(&mut rng, 3).unwrap();
        let sa: Vec<f64> = (0..3).map(|_| rng.gen_range(0..=3) as f64).collect();
        let sb: Vec<f64> = (0..3).map(|_| rng.gen_range(0..=3) as f64).collect();
        let a = hermitian_with_spectrum(&u, &sa).unwrap();
        let b = hermitian_with_spectrum(&u, &sb).unwrap();
        let entrywise = sa.iter().zip(&sb).all(|(x, y)| x <= y);
        assert_eq!(spectral_order_leq(&a, &b).unwrap(), entrywise);
    }
}

#[test]
fn spectral_order_gives_ordered_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut checked = 0;
    for (a, b) in spectral_cases(&mut rng, false).into_iter().chain(spectral_cases(&mut rng, true)) {
        // shift both into the positive cone
        let shift = ComplexMatrix::identity(a.dim()).scale(&Complex::new(4.0, 0.0));
        let (a, b) = (a.add(&shift).unwrap(), b.add(&shift).unwrap());
        if !spectral_order_leq(&a, &b).unwrap() {
            continue;
        }
        checked += 1;
        for n in 1..=4 {
            let diff = power(&b, n).unwrap().sub(&power(&a, n).unwrap()).unwrap();
            assert!(is_positive_semidefinite(&diff.hermitian_part()).unwrap());
        }
    }
    assert!(checked >= 20);
}

#[test]
fn q_value_with_meet_on_reversed_diagonals() {
    let a = ComplexMatrix::<f64>::diagonal(&[2.0, 3.0]);
    let b = ComplexMatrix::<f64>::diagonal(&[1.0, 2.0]);
    let v = q_value_order(&a, &b, &KotasSpec::conjunction(5).unwrap()).unwrap();
    assert!(v.leq(&Projection::identity(2)).unwrap());
    assert!(!v.approx_eq(&Projection::identity(2)));
    assert!(!spectral_order_leq(&a, &b).unwrap());
    assert!(q_value_order(&a, &a, &KotasSpec::conjunction(5).unwrap()).unwrap().approx_eq(&Projection::identity(2)));
}

#[test]
fn eigen_agrees_with_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let d = rng.gen_range(1..=5);
        let m = qvset::hilbert::sample::random_hermitian::<f64, _>(&mut rng, d);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        let nm = nalgebra::DMatrix::from_fn(d, d, |i, j| nalgebra::Complex::new(m[(i, j)].re, m[(i, j)].im));
        let mut oracle: Vec<f64> = nm.symmetric_eigenvalues().iter().cloned().collect();
        oracle.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in vals.iter().zip(&oracle) {
            assert!((x - y).abs() < 1e-9);
        }
        let back = hermitian_with_spectrum(&vecs, &vals).unwrap();
        assert!(back.approx_eq(&m));
    }
}
