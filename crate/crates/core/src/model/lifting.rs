use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::complex::{ChainMap, Complex};
use crate::algebra::Bidegree;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Linear system whose unknowns are the entries of one matrix block per
/// bidegree, with equations of the form `Σ ± L·X_b·R = C`.
pub(crate) struct BlockSystem<K = Bidegree> {
    blocks: BTreeMap<K, (usize, usize, usize)>,
    unknowns: usize,
    rows: Vec<(Vec<Scalar>, Scalar)>,
}

pub(crate) struct Term<'a, K = Bidegree> {
    pub left: Option<&'a Matrix>,
    pub block: K,
    pub right: Option<&'a Matrix>,
    pub negate: bool,
}

impl<K: Ord + Copy> BlockSystem<K> {
    pub fn new(shapes: impl IntoIterator<Item = (K, usize, usize)>) -> Self {
        let mut blocks = BTreeMap::new();
        let mut offset = 0;
        for (b, r, c) in shapes {
            blocks.insert(b, (offset, r, c));
            offset += r * c;
        }
        BlockSystem { blocks, unknowns: offset, rows: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Adds the entrywise equations `Σ terms = rhs`; `rhs` has shape `out_rows × out_cols`.
    pub fn add(&mut self, terms: &[Term<'_, K>], out_rows: usize, out_cols: usize, rhs: Option<&Matrix>) {
        for r in 0..out_rows {
            for c in 0..out_cols {
                let mut row = vec![Scalar::zero(); self.unknowns];
                for t in terms {
                    let Some(&(offset, br, bc)) = self.blocks.get(&t.block) else {
                        continue;
                    };
                    // (L X R)[r, c] = Σ_{i,j} L[r, i] X[i, j] R[j, c]
                    for i in 0..br {
                        let l = match t.left {
                            Some(m) => m[(r, i)].clone(),
                            None if i == r => Scalar::from_integer(1.into()),
                            None => continue,
                        };
                        if l.is_zero() {
                            continue;
                        }
                        for j in 0..bc {
                            let rr = match t.right {
                                Some(m) => m[(j, c)].clone(),
                                None if j == c => Scalar::from_integer(1.into()),
                                None => continue,
                            };
                            if rr.is_zero() {
                                continue;
                            }
                            let v = &l * &rr;
                            let slot = &mut row[offset + i * bc + j];
                            if t.negate {
                                *slot -= v;
                            } else {
                                *slot += v;
                            }
                        }
                    }
                }
                let b = rhs.map(|m| m[(r, c)].clone()).unwrap_or_else(Scalar::zero);
                if row.iter().any(|x| !x.is_zero()) || !b.is_zero() {
                    self.rows.push((row, b));
                }
            }
        }
    }

    fn matrix(&self) -> (Matrix, Vec<Scalar>) {
        let a = Matrix::from_rows(self.rows.iter().map(|(r, _)| r.clone()).collect());
        let a = if self.rows.is_empty() { Matrix::zeros(0, self.unknowns) } else { a };
        (a, self.rows.iter().map(|(_, b)| b.clone()).collect())
    }

    pub fn solve(&self) -> std::result::Result<Vec<Scalar>, Infeasible> {
        let (a, b) = self.matrix();
        match a.solve(&b) {
            Some(x) => Ok(x),
            None => {
                let rank = a.rank();
                let augmented = a.hstack(&Matrix::from_columns(a.rows(), &[b])).rank();
                Err(Infeasible { equations: a.rows(), unknowns: self.unknowns, rank, augmented_rank: augmented })
            }
        }
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.matrix().0.nullspace()
    }

    pub fn unpack(&self, x: &[Scalar]) -> BTreeMap<K, Matrix> {
        self.blocks
            .iter()
            .map(|(&b, &(offset, r, c))| {
                let mut m = Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = x[offset + i * c + j].clone();
                    }
                }
                (b, m)
            })
            .collect()
    }
}

/// Rank witness that a linear system has no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Infeasible {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

#[derive(Clone, Debug)]
pub enum Lift {
    Found(ChainMap),
    None(Infeasible),
}

impl Lift {
    pub fn map(&self) -> Option<&ChainMap> {
        match self {
            Lift::Found(h) => Some(h),
            Lift::None(_) => None,
        }
    }
}

fn maps_equal(f: &ChainMap, g: &ChainMap) -> bool {
    f.source() == g.source() && f.target() == g.target() && f.support().iter().all(|&b| f.block(b) == g.block(b))
}

/// Adds `d_Y·H_b − H_{next b}·d_B = 0` for all `b` of `b_complex`.
pub(crate) fn add_chain_map_equations<K: Ord + Copy>(
    sys: &mut BlockSystem<K>,
    b_complex: &Complex,
    y: &Complex,
    key: impl Fn(Bidegree) -> K,
) {
    for &b in &b_complex.support() {
        let nb = b_complex.next(b);
        let dy = y.d(b);
        let db = b_complex.d(b);
        sys.add(
            &[
                Term { left: Some(&dy), block: key(b), right: None, negate: false },
                Term { left: None, block: key(nb), right: Some(&db), negate: true },
            ],
            y.dim(nb),
            b_complex.dim(b),
            None,
        );
    }
}

/// Solves for `h: B → Y` with `h∘i = top`, `p∘h = bottom` and `d h = h d`
/// as a single linear system over all bidegrees.
pub fn solve_lift(i: &ChainMap, p: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<Lift> {
    let (a, b) = (i.source(), i.target());
    let (y, x) = (p.source(), p.target());
    if top.source() != a || top.target() != y || bottom.source() != b || bottom.target() != x {
        return Err(Error::InvalidInput("lifting square has mismatched objects".into()));
    }
    if !maps_equal(&p.compose(top)?, &bottom.compose(i)?) {
        return Err(Error::NonCommutingSquare);
    }
    let support = b.support();
    let mut sys = BlockSystem::new(support.iter().map(|&bd| (bd, y.dim(bd), b.dim(bd))));
    for &bd in &support {
        let ib = i.block(bd);
        let tb = top.block(bd);
        sys.add(&[Term { left: None, block: bd, right: Some(&ib), negate: false }], y.dim(bd), a.dim(bd), Some(&tb));
        let pb = p.block(bd);
        let bb = bottom.block(bd);
        sys.add(&[Term { left: Some(&pb), block: bd, right: None, negate: false }], x.dim(bd), b.dim(bd), Some(&bb));
    }
    add_chain_map_equations(&mut sys, b, y, |k| k);
    match sys.solve() {
        Ok(v) => {
            let h = ChainMap::new(b, y, sys.unpack(&v))?;
            if !maps_equal(&h.compose(i)?, top) || !maps_equal(&p.compose(&h)?, bottom) {
                return Err(Error::InvalidInput("lift failed verification by substitution".into()));
            }
            Ok(Lift::Found(h))
        }
        Err(cert) => Ok(Lift::None(cert)),
    }
}

/// Basis of the space of chain maps `source → target`.
pub fn chain_map_basis(source: &Complex, target: &Complex) -> Vec<ChainMap> {
    let support = source.support();
    let mut sys = BlockSystem::new(support.iter().map(|&b| (b, target.dim(b), source.dim(b))));
    add_chain_map_equations(&mut sys, source, target, |k| k);
    sys.kernel()
        .iter()
        .map(|v| ChainMap::new(source, target, sys.unpack(v)).expect("kernel vectors are chain maps"))
        .collect()
}

/// `Σ c_k f_k` for maps with common source and target.
pub fn linear_combination(source: &Complex, target: &Complex, terms: &[(Scalar, &ChainMap)]) -> ChainMap {
    let mut blocks = BTreeMap::new();
    for &b in &source.support() {
        let mut m = Matrix::zeros(target.dim(b), source.dim(b));
        for (c, f) in terms {
            m = m.add(&f.block(b).scale(c));
        }
        blocks.insert(b, m);
    }
    ChainMap::new(source, target, blocks).expect("linear combination of chain maps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Parity;
    use crate::model::cells::{cell, CellKind};
    use crate::model::complex::Flavor;

    #[test]
    fn identity_lift_is_top() {
        let d = cell(CellKind::Graded { n: 0, parity: Parity::Even }).disk;
        let id = ChainMap::identity(&d);
        let z = Complex::zero(Flavor::Graded);
        let p = ChainMap::zero(&d, &z);
        let top = id.clone();
        let bottom = ChainMap::zero(&d, &z);
        let h = solve_lift(&id, &p, &top, &bottom).unwrap();
        assert_eq!(h.map().unwrap().block((0, Parity::Even)), Matrix::identity(1));
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let c = cell(CellKind::Ungraded { parity: Parity::Even });
        let id = ChainMap::identity(&c.disk);
        let zero = ChainMap::zero(&c.disk, &c.disk);
        assert!(matches!(solve_lift(&id, &id, &id, &zero), Err(Error::NonCommutingSquare)));
    }

    #[test]
    fn boundary_inclusion_against_non_surjection_has_no_lift() {
        // p = i_even misses t; the bottom identity lands in that cokernel.
        let c = cell(CellKind::Ungraded { parity: Parity::Even });
        let i = &c.boundary_inclusion;
        let top = ChainMap::identity(&c.sphere);
        let bottom = ChainMap::identity(&c.disk);
        match solve_lift(i, i, &top, &bottom).unwrap() {
            Lift::None(cert) => assert!(cert.augmented_rank > cert.rank),
            Lift::Found(_) => panic!("lift should not exist"),
        }
    }

    #[test]
    fn initial_inclusion_lifts_against_fibrations() {
        let c = cell(CellKind::Ungraded { parity: Parity::Odd });
        let y = c.disk.direct_sum(&c.sphere).unwrap();
        let p = ChainMap::new(
            &y,
            &c.disk,
            c.disk
                .support()
                .into_iter()
                .map(|b| (b, Matrix::identity(1).hstack(&Matrix::zeros(1, y.dim(b) - 1))))
                .collect(),
        )
        .unwrap();
        assert!(p.is_fibration());
        let j = &c.initial_inclusion;
        let top = ChainMap::zero(j.source(), &y);
        let bottom = ChainMap::identity(&c.disk);
        assert!(solve_lift(j, &p, &top, &bottom).unwrap().map().is_some());
    }

    #[test]
    fn chain_maps_from_a_disk_are_one_per_target_element() {
        let c = cell(CellKind::Graded { n: 1, parity: Parity::Odd });
        let target = c.disk.direct_sum(&c.sphere).unwrap();
        // Hom(D, V) ≅ V_bottom.
        assert_eq!(chain_map_basis(&c.disk, &target).len(), target.dim(c.kind.bottom()));
    }
}
