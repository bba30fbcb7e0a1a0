//! Seeded random complexes, chain maps, fibrations and lifting squares.

use std::collections::BTreeMap;

use rand::Rng;

use super::cells::{disk, sphere};
use super::complex::{ChainMap, Complex, Flavor};
use super::lifting::{add_chain_map_equations, chain_map_basis, linear_combination, BlockSystem, Term};
use crate::algebra::{Bidegree, Parity};
use crate::linalg::Matrix;
use crate::random::{integer, SampleRng};

pub fn random_invertible(rng: &mut SampleRng, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| integer(rng, 2)).collect()).collect();
        let m = if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn random_bidegree(rng: &mut SampleRng, flavor: Flavor, weights: (i64, i64)) -> Bidegree {
    let parity = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
    match flavor {
        Flavor::Graded => (rng.gen_range(weights.0..=weights.1), parity),
        Flavor::Ungraded => (0, parity),
    }
}

/// Direct sum of random spheres and disks of total dimension `dim`, in a
/// randomly changed basis. Graded bottom weights lie in `weights`.
pub fn random_complex(
    rng: &mut SampleRng,
    flavor: Flavor,
    dim: usize,
    weights: (i64, i64),
    disks_only: bool,
) -> Complex {
    let mut c = Complex::zero(flavor);
    while c.total_dim() < dim {
        let remaining = dim - c.total_dim();
        let b = random_bidegree(rng, flavor, weights);
        let piece = if remaining >= 2 && (disks_only || rng.gen_bool(0.5)) {
            disk(flavor, b)
        } else if disks_only {
            break;
        } else {
            sphere(flavor, b)
        };
        c = c.direct_sum(&piece).expect("same flavor");
    }
    let change: BTreeMap<_, _> = c.support().into_iter().map(|b| (b, random_invertible(rng, c.dim(b)))).collect();
    c.conjugate(&change).expect("invertible change of basis")
}

pub fn random_chain_map(rng: &mut SampleRng, source: &Complex, target: &Complex) -> ChainMap {
    let basis = chain_map_basis(source, target);
    let coefficients: Vec<_> = basis.iter().map(|_| integer(rng, 2)).collect();
    let terms: Vec<_> = coefficients.iter().cloned().zip(basis.iter()).collect();
    linear_combination(source, target, &terms)
}

/// Surjection `X ⊕ R → X` (identity on `X`, a random chain map on `R`),
/// presented in a random basis. With `acyclic`, `R` is a sum of disks and the
/// map is also a quasi-isomorphism.
pub fn random_fibration(
    rng: &mut SampleRng,
    x: &Complex,
    extra_dim: usize,
    weights: (i64, i64),
    acyclic: bool,
) -> ChainMap {
    let r = random_complex(rng, x.flavor(), extra_dim, weights, acyclic);
    let g = random_chain_map(rng, &r, x);
    let y = x.direct_sum(&r).expect("same flavor");
    let change: BTreeMap<_, _> = y.support().into_iter().map(|b| (b, random_invertible(rng, y.dim(b)))).collect();
    let y2 = y.conjugate(&change).expect("invertible");
    let blocks = y
        .support()
        .into_iter()
        .map(|b| {
            let p = Matrix::identity(x.dim(b)).hstack(&g.block(b));
            (b, p.mul(&change[&b].inverse().expect("invertible")))
        })
        .collect();
    ChainMap::new(&y2, x, blocks).expect("fibration is a chain map")
}

/// Random commuting square `p∘top = bottom∘i` from the solution space of the
/// commutation equations.
pub fn random_square(rng: &mut SampleRng, i: &ChainMap, p: &ChainMap) -> (ChainMap, ChainMap) {
    let (a, b) = (i.source(), i.target());
    let (y, x) = (p.source(), p.target());
    let shapes = a
        .support()
        .into_iter()
        .map(|d| ((0u8, d), y.dim(d), a.dim(d)))
        .chain(b.support().into_iter().map(|d| ((1u8, d), x.dim(d), b.dim(d))));
    let mut sys = BlockSystem::new(shapes);
    add_chain_map_equations(&mut sys, a, y, |d| (0u8, d));
    add_chain_map_equations(&mut sys, b, x, |d| (1u8, d));
    for d in a.support() {
        let pd = p.block(d);
        let id = i.block(d);
        sys.add(
            &[
                Term { left: Some(&pd), block: (0, d), right: None, negate: false },
                Term { left: None, block: (1, d), right: Some(&id), negate: true },
            ],
            x.dim(d),
            a.dim(d),
            None,
        );
    }
    let kernel = sys.kernel();
    let mut v = vec![crate::scalar::int(0); sys.unknowns()];
    for k in &kernel {
        let c = integer(rng, 2);
        for (slot, e) in v.iter_mut().zip(k) {
            *slot += &c * e;
        }
    }
    let blocks = sys.unpack(&v);
    let pick = |tag: u8| -> BTreeMap<Bidegree, Matrix> {
        blocks.iter().filter(|((t, _), _)| *t == tag).map(|(&(_, d), m)| (d, m.clone())).collect()
    };
    let top = ChainMap::new(a, y, pick(0)).expect("kernel gives chain maps");
    let bottom = ChainMap::new(b, x, pick(1)).expect("kernel gives chain maps");
    (top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;

    #[test]
    fn random_objects_have_the_advertised_properties() {
        let mut r = rng(7);
        for flavor in [Flavor::Graded, Flavor::Ungraded] {
            for _ in 0..5 {
                let x = random_complex(&mut r, flavor, 5, (-2, 2), false);
                assert_eq!(x.total_dim(), 5);
                let p = random_fibration(&mut r, &x, 4, (-2, 2), true);
                assert!(p.is_fibration());
                assert!(p.is_weak_equivalence());
                let q = random_fibration(&mut r, &x, 3, (-2, 2), false);
                assert!(q.is_fibration());
            }
        }
    }

    #[test]
    fn random_squares_commute() {
        let mut r = rng(3);
        let a = random_complex(&mut r, Flavor::Graded, 3, (0, 1), false);
        let b = random_complex(&mut r, Flavor::Graded, 4, (0, 1), false);
        let i = random_chain_map(&mut r, &a, &b);
        let x = random_complex(&mut r, Flavor::Graded, 3, (0, 1), false);
        let p = random_fibration(&mut r, &x, 2, (0, 1), false);
        let (top, bottom) = random_square(&mut r, &i, &p);
        let lhs = p.compose(&top).unwrap();
        let rhs = bottom.compose(&i).unwrap();
        for d in a.support() {
            assert_eq!(lhs.block(d), rhs.block(d));
        }
    }
}
