use super::projection::Projection;
use crate::error::{Error, Result};
use crate::lattice::bits::BitRows;
use crate::lattice::{Elem, OrthoLattice, Validation};
use crate::scalar::Scalar;

/// A finite sub-ortholattice of Q(ℂ^d) with the matrix of each element.
#[derive(Debug)]
pub struct Closure<T> {
    pub lattice: OrthoLattice,
    pub elements: Vec<Projection<T>>,
}

impl<T: Scalar> Closure<T> {
    pub fn projection(&self, e: Elem) -> &Projection<T> {
        &self.elements[e.index()]
    }

    /// Index of a projection equal to `p`, if it is in the closure.
    pub fn locate(&self, p: &Projection<T>) -> Option<Elem> {
        self.elements.iter().position(|x| x.approx_eq(p)).map(|i| Elem(i as u16))
    }
}

fn find<T: Scalar>(items: &[Projection<T>], p: &Projection<T>) -> Option<usize> {
    items.iter().position(|x| x.approx_eq(p))
}

/// Close `gens` under meet, join and ortho. Fails with
/// [`Error::ClosureDiverged`] once more than `cap` elements appear.
pub fn closure_generate<T: Scalar>(gens: &[Projection<T>], cap: usize) -> Result<Closure<T>> {
    let d = gens.first().map(|g| g.dim()).ok_or_else(|| Error::Precondition("no generators".into()))?;
    if let Some(g) = gens.iter().find(|g| g.dim() != d) {
        return Err(Error::Dimension(d, g.dim()));
    }
    let mut items: Vec<Projection<T>> = vec![Projection::zero(d), Projection::identity(d)];
    let mut gen_ix = Vec::new();
    let push = |items: &mut Vec<Projection<T>>, p: Projection<T>| -> Result<usize> {
        if let Some(i) = find(items, &p) {
            return Ok(i);
        }
        if items.len() >= cap {
            return Err(Error::ClosureDiverged(cap));
        }
        items.push(p);
        Ok(items.len() - 1)
    };
    for g in gens {
        gen_ix.push(push(&mut items, g.clone())?);
        push(&mut items, g.ortho())?;
    }
    let mut done = 0;
    while done < items.len() {
        let end = items.len();
        for i in 0..end {
            for j in done.max(i)..end {
                if i < done && j < done {
                    continue;
                }
                let (m, jn) = (items[i].meet(&items[j])?, items[i].join(&items[j])?);
                for p in [m, jn] {
                    let o = p.ortho();
                    push(&mut items, p)?;
                    push(&mut items, o)?;
                }
            }
        }
        done = end;
    }
    let n = items.len();
    let mut up = BitRows::new(n);
    for i in 0..n {
        for j in 0..n {
            if items[i].leq(&items[j])? {
                up.set(i, j);
            }
        }
    }
    let ortho = (0..n)
        .map(|i| {
            find(&items, &items[i].ortho())
                .map(|k| Elem(k as u16))
                .ok_or_else(|| Error::Numerical("ortho left the closure".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ => match gen_ix.iter().position(|&g| g == i) {
                Some(k) => format!("g{k}"),
                None => format!("e{i}"),
            },
        })
        .collect();
    let lattice = OrthoLattice::from_order(up, ortho, labels, Validation::Oml)?;
    // the order-derived tables must agree with the matrix operations
    for a in lattice.elements() {
        for b in lattice.elements() {
            let m = items[a.index()].meet(&items[b.index()])?;
            if !m.approx_eq(&items[lattice.meet(a, b).index()]) {
                return Err(Error::Numerical("closure meet table disagrees with matrices".into()));
            }
        }
    }
    Ok(Closure { lattice, elements: items })
}
