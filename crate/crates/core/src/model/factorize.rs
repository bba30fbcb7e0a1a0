use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::complex::{ChainMap, Complex, Flavor};
use super::generate::{random_complex, random_fibration, random_square};
use super::lifting::solve_lift;
use crate::algebra::Bidegree;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanBuilder};
use crate::random::SampleRng;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizationMode {
    /// Cofibration followed by an acyclic fibration (attach `I`-cells).
    CofThenAcyclicFib,
    /// Acyclic cofibration followed by a fibration (attach `J`-cells).
    AcyclicCofThenFib,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub mode: FactorizationMode,
    pub middle: Complex,
    pub left: ChainMap,
    pub right: ChainMap,
    /// Attached cells as (bidegree of the new basis vector, count).
    pub attached: BTreeMap<Bidegree, usize>,
    pub rounds: usize,
}

/// A basis vector of the middle object: its differential in the coordinates
/// of the next component and its image in the target.
struct Column {
    d: Vec<Scalar>,
    p: Vec<Scalar>,
}

struct Builder<'a> {
    flavor: Flavor,
    target: &'a Complex,
    cols: BTreeMap<Bidegree, Vec<Column>>,
}

fn padded(v: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut v = v.to_vec();
    v.resize(n, Scalar::zero());
    v
}

impl<'a> Builder<'a> {
    fn new(f: &'a ChainMap) -> Self {
        let v = f.source();
        let mut cols = BTreeMap::new();
        for b in v.support() {
            let d = v.d(b);
            let fb = f.block(b);
            let list = (0..v.dim(b)).map(|k| Column { d: d.column(k), p: fb.column(k) }).collect();
            cols.insert(b, list);
        }
        Builder { flavor: v.flavor(), target: f.target(), cols }
    }

    fn dim(&self, b: Bidegree) -> usize {
        self.cols.get(&b).map_or(0, Vec::len)
    }

    fn d(&self, b: Bidegree) -> Matrix {
        let rows = self.dim(self.flavor.next(b));
        let cols: Vec<_> = self.cols.get(&b).map_or(vec![], |c| c.iter().map(|c| padded(&c.d, rows)).collect());
        Matrix::from_columns(rows, &cols)
    }

    fn p(&self, b: Bidegree) -> Matrix {
        let rows = self.target.dim(b);
        let cols: Vec<_> = self.cols.get(&b).map_or(vec![], |c| c.iter().map(|c| c.p.clone()).collect());
        Matrix::from_columns(rows, &cols)
    }

    fn push(&mut self, b: Bidegree, d: Vec<Scalar>, p: Vec<Scalar>) -> usize {
        let list = self.cols.entry(b).or_default();
        list.push(Column { d, p });
        list.len() - 1
    }

    fn complex(&self) -> Result<Complex> {
        let dims = self.cols.iter().map(|(&b, c)| (b, c.len())).collect();
        let d = self.cols.keys().map(|&b| (b, self.d(b))).collect();
        Complex::new(self.flavor, dims, d)
    }

    fn degrees(&self) -> BTreeSet<Bidegree> {
        self.cols.keys().map(|&b| self.flavor.prev(b)).chain(self.target.support()).collect()
    }

    /// Attaches one `I`-cell per unsolved lifting problem at `b`, i.e. per
    /// basis vector of a complement of `{(de, pe)}` in
    /// `{(z, y) : dz = 0, dy = pz}` with `z` in the next component.
    fn attach_sphere_cells(&mut self, b: Bidegree) -> usize {
        let nb = self.flavor.next(b);
        let (ez, wy) = (self.dim(nb), self.target.dim(b));
        if ez + wy == 0 {
            return 0;
        }
        // (z, y) ↦ (d z, d y − p z)
        let dz = self.d(nb);
        let dy = self.target.d(b);
        let pz = self.p(nb).scale(&scalar::int(-1));
        let top = dz.hstack(&Matrix::zeros(dz.rows(), wy));
        let bottom = pz.hstack(&dy);
        let problems = top.vstack(&bottom).nullspace();
        let mut solved = SpanBuilder::new(ez + wy);
        let (d, p) = (self.d(b), self.p(b));
        for k in 0..self.dim(b) {
            let mut v = d.column(k);
            v.extend(p.column(k));
            solved.insert(&v);
        }
        let mut added = 0;
        for v in problems {
            if solved.insert(&v) {
                self.push(b, v[..ez].to_vec(), v[ez..].to_vec());
                added += 1;
            }
        }
        added
    }

    /// Attaches one `J`-cell per basis vector of a complement of the image of
    /// `p` at `b`.
    fn attach_disk_cells(&mut self, b: Bidegree) -> usize {
        let n = self.target.dim(b);
        let mut image = SpanBuilder::new(n);
        let p = self.p(b);
        for k in 0..p.cols() {
            image.insert(&p.column(k));
        }
        let nb = self.flavor.next(b);
        let dw = self.target.d(b);
        let mut added = 0;
        for k in 0..n {
            let mut y = vec![Scalar::zero(); n];
            y[k] = scalar::int(1);
            if !image.insert(&y) {
                continue;
            }
            let top = self.push(nb, vec![], dw.apply(&y));
            let mut unit = vec![Scalar::zero(); top + 1];
            unit[top] = scalar::int(1);
            self.push(b, unit, y);
            added += 1;
        }
        added
    }
}

/// Small-object factorization of `f: V → W` as `right ∘ left`, attaching
/// cells in sorted bidegree order until no lifting problem remains.
pub fn factorize(f: &ChainMap, mode: FactorizationMode) -> Result<Factorization> {
    let mut builder = Builder::new(f);
    let mut attached: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut rounds = 0;
    match mode {
        FactorizationMode::AcyclicCofThenFib => {
            rounds = 1;
            for b in f.target().support() {
                let n = builder.attach_disk_cells(b);
                if n > 0 {
                    *attached.entry(b).or_default() += n;
                }
            }
        }
        FactorizationMode::CofThenAcyclicFib => {
            let limit = 2 * (f.source().total_dim() + f.target().total_dim()) + 4;
            loop {
                let mut added = 0;
                for b in builder.degrees() {
                    let n = builder.attach_sphere_cells(b);
                    if n > 0 {
                        *attached.entry(b).or_default() += n;
                        added += n;
                    }
                }
                if added == 0 {
                    break;
                }
                rounds += 1;
                if rounds > limit {
                    return Err(Error::CapInsufficient(format!(
                        "cell attachment did not stabilise after {limit} rounds"
                    )));
                }
            }
        }
    }
    let middle = builder.complex()?;
    let v = f.source();
    let left_blocks = v
        .support()
        .into_iter()
        .map(|b| {
            let extra = middle.dim(b) - v.dim(b);
            (b, Matrix::identity(v.dim(b)).vstack(&Matrix::zeros(extra, v.dim(b))))
        })
        .collect();
    let left = ChainMap::new(v, &middle, left_blocks)?;
    let right_blocks = middle.support().into_iter().map(|b| (b, builder.p(b))).collect();
    let right = ChainMap::new(&middle, f.target(), right_blocks)?;
    Ok(Factorization { mode, middle, left, right, attached, rounds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub composition_exact: bool,
    pub right_fibration: bool,
    /// Required in the first mode only.
    pub right_weak_equivalence: bool,
    /// Required in the second mode only.
    pub left_weak_equivalence: bool,
    pub llp_trials: usize,
    pub llp_passed: usize,
}

impl FactorizationCheck {
    pub fn passed(&self, mode: FactorizationMode) -> bool {
        let predicate = match mode {
            FactorizationMode::CofThenAcyclicFib => self.right_weak_equivalence,
            FactorizationMode::AcyclicCofThenFib => self.left_weak_equivalence,
        };
        self.composition_exact && self.right_fibration && predicate && self.llp_passed == self.llp_trials
    }
}

impl Factorization {
    /// Verifies the factorization and tests the left factor's lifting
    /// property against `trials` random squares over random (acyclic)
    /// fibrations.
    pub fn check(&self, original: &ChainMap, rng: &mut SampleRng, trials: usize) -> Result<FactorizationCheck> {
        let composite = self.right.compose(&self.left)?;
        let composition_exact = original.support().iter().all(|&b| composite.block(b) == original.block(b));
        let acyclic = self.mode == FactorizationMode::CofThenAcyclicFib;
        let flavor = original.source().flavor();
        let weights = weight_range(&self.middle);
        let mut passed = 0;
        for _ in 0..trials {
            let x = random_complex(rng, flavor, 3, weights, false);
            let p = random_fibration(rng, &x, 4, weights, acyclic);
            let (top, bottom) = random_square(rng, &self.left, &p);
            if solve_lift(&self.left, &p, &top, &bottom)?.map().is_some() {
                passed += 1;
            }
        }
        Ok(FactorizationCheck {
            composition_exact,
            right_fibration: self.right.is_fibration(),
            right_weak_equivalence: self.right.is_weak_equivalence(),
            left_weak_equivalence: self.left.is_weak_equivalence(),
            llp_trials: trials,
            llp_passed: passed,
        })
    }
}

/// Bottom weights for panel cells, covering the support of `c`.
fn weight_range(c: &Complex) -> (i64, i64) {
    let support = c.support();
    match (support.first(), support.last()) {
        (Some(lo), Some(hi)) => (lo.0 - 1, hi.0),
        _ => (0, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Parity;
    use crate::model::cells::{disk, sphere};
    use crate::model::generate::{random_chain_map, random_complex};
    use crate::random::rng;

    #[test]
    fn identity_needs_no_cells() {
        let c = disk(Flavor::Graded, (0, Parity::Odd)).direct_sum(&sphere(Flavor::Graded, (2, Parity::Even))).unwrap();
        for mode in [FactorizationMode::CofThenAcyclicFib, FactorizationMode::AcyclicCofThenFib] {
            let fac = factorize(&ChainMap::identity(&c), mode).unwrap();
            assert!(fac.attached.is_empty());
            assert_eq!(fac.middle, c);
        }
    }

    #[test]
    fn zero_into_sphere_attaches_a_disk() {
        let s = sphere(Flavor::Graded, (0, Parity::Even));
        let f = ChainMap::zero(&Complex::zero(Flavor::Graded), &s);
        let fac = factorize(&f, FactorizationMode::AcyclicCofThenFib).unwrap();
        assert_eq!(fac.middle.total_dim(), 2);
        assert!(fac.middle.is_acyclic());
        let check = fac.check(&f, &mut rng(1), 5).unwrap();
        assert!(check.passed(fac.mode), "{check:?}");
        assert!(!check.right_weak_equivalence);
    }

    #[test]
    fn sphere_to_zero_factors_through_a_disk() {
        let s = sphere(Flavor::Graded, (1, Parity::Odd));
        let f = ChainMap::zero(&s, &Complex::zero(Flavor::Graded));
        let fac = factorize(&f, FactorizationMode::CofThenAcyclicFib).unwrap();
        assert!(fac.middle.is_acyclic());
        let check = fac.check(&f, &mut rng(2), 5).unwrap();
        assert!(check.passed(fac.mode), "{check:?}");
    }

    #[test]
    fn random_maps_factor_in_both_modes() {
        let mut r = rng(11);
        for flavor in [Flavor::Graded, Flavor::Ungraded] {
            for _ in 0..4 {
                let v = random_complex(&mut r, flavor, 4, (-1, 1), false);
                let w = random_complex(&mut r, flavor, 4, (-1, 1), false);
                let f = random_chain_map(&mut r, &v, &w);
                for mode in [FactorizationMode::CofThenAcyclicFib, FactorizationMode::AcyclicCofThenFib] {
                    let fac = factorize(&f, mode).unwrap();
                    let check = fac.check(&f, &mut r, 3).unwrap();
                    assert!(check.passed(mode), "{mode:?} {check:?}");
                    let again = factorize(&f, mode).unwrap();
                    assert_eq!(again.middle, fac.middle);
                }
            }
        }
    }
}
