#![allow(dead_code)]

use qvset::formula::{Formula, Term};
use qvset::hilbert::sample::{hermitian_with_spectrum, random_projection, random_unitary, random_vector};
use qvset::hilbert::{ComplexMatrix, Projection};
use rand_chacha::ChaCha8Rng;
use qvset::OrthoLattice;
use rand::Rng;
use std::sync::Arc;

pub fn lattice(name: &str) -> Arc<OrthoLattice> {
    Arc::new(OrthoLattice::from_name(name, false).unwrap())
}

/// Lattices the property tests range over.
pub const FAMILY: [&str; 6] = ["bool1", "bool2", "mo2", "mo3", "prod(bool1,mo2)", "bool3"];

fn term<R: Rng>(rng: &mut R, bound: &[String], consts: &[&str]) -> Term {
    let k = rng.gen_range(0..bound.len() + consts.len());
    if k < bound.len() {
        Term::Var(bound[k].clone())
    } else {
        Term::Const(consts[k - bound.len()].to_string())
    }
}

/// A random Δ0 formula over `consts`, with bound variables `w0`, `w1`, ...
pub fn random_delta0<R: Rng>(rng: &mut R, depth: usize, consts: &[&str]) -> Formula {
    gen(rng, depth, &mut Vec::new(), consts)
}

fn gen<R: Rng>(rng: &mut R, depth: usize, bound: &mut Vec<String>, consts: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let (a, b) = (term(rng, bound, consts), term(rng, bound, consts));
        return match rng.gen_range(0..3) {
            0 => Formula::Eq(a, b),
            1 => Formula::In(a, b),
            _ => Formula::Sub(a, b),
        };
    }
    let sub = |rng: &mut R, bound: &mut Vec<String>| gen(rng, depth - 1, bound, consts);
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng, bound)),
        1 => Formula::and(sub(rng, bound), sub(rng, bound)),
        2 => Formula::or(sub(rng, bound), sub(rng, bound)),
        3 => Formula::imp(sub(rng, bound), sub(rng, bound)),
        4 => Formula::iff(sub(rng, bound), sub(rng, bound)),
        k => {
            let t = term(rng, bound, consts);
            let x = format!("w{}", bound.len());
            bound.push(x.clone());
            let body = Box::new(sub(rng, bound));
            bound.pop();
            if k == 5 {
                Formula::ForallIn(x, t, body)
            } else {
                Formula::ExistsIn(x, t, body)
            }
        }
    }
}

pub type P64 = Projection<f64>;

/// Pairs in ℂ⁴ with varied ranks; about a third share a common vector so
/// that P∧Q is nonzero.
pub fn random_pair(rng: &mut ChaCha8Rng) -> (P64, P64) {
    let d = 4;
    let (rp, rq) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    if rng.gen_bool(0.35) {
        let common = random_vector::<f64, _>(rng, d);
        let mut vp = vec![common.clone()];
        let mut vq = vec![common];
        vp.extend((1..rp).map(|_| random_vector(rng, d)));
        vq.extend((1..rq).map(|_| random_vector(rng, d)));
        (Projection::onto_span(&vp).unwrap(), Projection::onto_span(&vq).unwrap())
    } else {
        (random_projection(rng, d, rp).unwrap(), random_projection(rng, d, rq).unwrap())
    }
}

/// Fifty Hermitian pairs of dimension 2 to 4 with integer spectra.
pub fn spectral_cases(rng: &mut ChaCha8Rng, commuting: bool) -> Vec<(ComplexMatrix<f64>, ComplexMatrix<f64>)> {
    let mut out = Vec::new();
    for k in 0..50 {
        let d = rng.gen_range(2..=4);
        let spec = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..d).map(|_| rng.gen_range(-3..=3) as f64).collect() };
        let u = random_unitary::<f64, _>(rng, d).unwrap();
        let (a, b) = if commuting {
            let sa = spec(rng);
            // every third pair is ordered entrywise in the joint eigenbasis
            let sb = if k % 3 == 0 { sa.iter().map(|x| x + rng.gen_range(0..=2) as f64).collect() } else { spec(rng) };
            (hermitian_with_spectrum(&u, &sa).unwrap(), hermitian_with_spectrum(&u, &sb).unwrap())
        } else {
            let v = random_unitary::<f64, _>(rng, d).unwrap();
            let sa = spec(rng);
            // every third pair has spec(A) entirely below spec(B)
            let sb = if k % 3 == 0 {
                let top = sa.iter().cloned().fold(f64::MIN, f64::max);
                (0..d).map(|_| top + rng.gen_range(0..=3) as f64).collect()
            } else {
                spec(rng)
            };
            (hermitian_with_spectrum(&u, &sa).unwrap(), hermitian_with_spectrum(&v, &sb).unwrap())
        };
        out.push((a, b));
    }
    out
}

