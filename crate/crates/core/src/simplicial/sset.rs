use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{SimplexForms, SimplexMap};
use crate::algebra::{AlgebraMap, Element, Monomial, Parity};
use crate::dg::{monomial_basis, weight_space_degree_bound, DgAlgebra, Window, MAX_BASIS, MAX_EXACT_DEGREE};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A subcomplex of `Δ[n]` given by its maximal simplices (vertex sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    name: String,
    ambient: usize,
    facets: Vec<Vec<usize>>,
}

impl FiniteSimplicialSet {
    pub fn simplex(n: usize) -> Self {
        FiniteSimplicialSet { name: format!("Delta[{n}]"), ambient: n, facets: vec![(0..=n).collect()] }
    }

    /// `∂Δ[n]`: the faces `d_i`, each omitting vertex `i`.
    pub fn boundary(n: usize) -> Self {
        let facets = if n == 0 { Vec::new() } else { (0..=n).map(|i| (0..=n).filter(|&j| j != i).collect()).collect() };
        FiniteSimplicialSet { name: format!("boundary Delta[{n}]"), ambient: n, facets }
    }

    /// `Λ^n_k`: the faces `d_i` for `i ≠ k`, i.e. all faces containing vertex `k`.
    pub fn horn(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidInput(format!("no horn Lambda^{n}_{k}")));
        }
        Ok(FiniteSimplicialSet {
            name: format!("Lambda^{n}_{k}"),
            ambient: n,
            facets: (0..=n).filter(|&i| i != k).map(|i| (0..=n).filter(|&j| j != i).collect()).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// All nondegenerate simplices, as sorted vertex lists.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut out = std::collections::BTreeSet::new();
        for f in &self.facets {
            for mask in 1u32..(1 << f.len()) {
                out.insert(
                    f.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect::<Vec<_>>(),
                );
            }
        }
        out.into_iter().collect()
    }
}

/// Coefficients for a cotensor: the terminal algebra `0`, or a free dg algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientAlgebra {
    Zero,
    Free(DgAlgebra),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CotensorEntry {
    pub weight: i64,
    pub parity: Parity,
    pub dimension: usize,
    pub exact: bool,
    /// Each basis vector lists one form per facet, printed.
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityEntry {
    pub weight: i64,
    pub parity: Parity,
    pub rank: usize,
    pub target_dimension: usize,
    pub surjective: bool,
}

/// Positions of `sub` inside the sorted vertex list `within`.
fn inclusion(sub: &[usize], within: &[usize]) -> SimplexMap {
    let values = sub.iter().map(|v| within.iter().position(|w| w == v).unwrap()).collect();
    SimplexMap::new(values, within.len() - 1).expect("sorted vertex subsets give monotone maps")
}

struct Facet {
    vertices: Vec<usize>,
    forms: SimplexForms,
    basis: Vec<Monomial>,
}

struct Layout {
    facets: Vec<Facet>,
    offsets: Vec<usize>,
    exact: bool,
}

fn layout(a: &DgAlgebra, k: &FiniteSimplicialSet, w: i64, p: Parity, cap: u32) -> Result<Layout> {
    let mut facets = Vec::new();
    let mut exact = true;
    let mut offsets = Vec::new();
    let mut total = 0;
    for v in k.facets() {
        let forms = SimplexForms::new(v.len() - 1, a)?;
        let bound = weight_space_degree_bound(forms.table(), w);
        let degree = match bound {
            Some(b) if b <= MAX_EXACT_DEGREE => b,
            Some(_) => return Err(Error::CapInsufficient(format!("weight {w} needs too large a degree"))),
            None => {
                exact = false;
                cap
            }
        };
        let basis = monomial_basis(forms.table(), w, p, degree);
        offsets.push(total);
        total += basis.len();
        facets.push(Facet { vertices: v.clone(), forms, basis });
    }
    offsets.push(total);
    if total > MAX_BASIS {
        return Err(Error::CapInsufficient(format!("cotensor space exceeds {MAX_BASIS} monomials")));
    }
    Ok(Layout { facets, offsets, exact })
}

/// Coordinates over a growing monomial index.
struct Coordinates {
    index: HashMap<Monomial, usize>,
}

impl Coordinates {
    fn new() -> Self {
        Coordinates { index: HashMap::new() }
    }

    fn slot(&mut self, m: &Monomial) -> usize {
        let next = self.index.len();
        *self.index.entry(m.clone()).or_insert(next)
    }
}

fn dense(entries: &[BTreeMap<usize, Scalar>], rows: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, entries.len());
    for (c, col) in entries.iter().enumerate() {
        for (r, v) in col {
            m[(*r, c)] = v.clone();
        }
    }
    m
}

/// Compatibility constraints between facets, as a matrix on the product space.
fn constraints(lay: &Layout) -> Result<Matrix> {
    let total = *lay.offsets.last().unwrap();
    let mut columns: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); total];
    let mut rows = 0;
    for (i, f) in lay.facets.iter().enumerate() {
        for (j, g) in lay.facets.iter().enumerate().skip(i + 1) {
            let common: Vec<usize> = f.vertices.iter().copied().filter(|v| g.vertices.contains(v)).collect();
            if common.is_empty() {
                continue;
            }
            let face = f.forms.with_dim(common.len() - 1);
            let mut coords = Coordinates::new();
            for (facet, sign, idx) in [(f, Scalar::one(), i), (g, -Scalar::one(), j)] {
                let map = facet.forms.cosimplicial_map(&inclusion(&common, &facet.vertices), &face)?;
                for (c, m) in facet.basis.iter().enumerate() {
                    let img = map.apply(&Element::monomial(facet.forms.table(), m.clone(), Scalar::one()))?;
                    for (mono, v) in img.terms() {
                        let r = rows + coords.slot(mono);
                        *columns[lay.offsets[idx] + c].entry(r).or_insert_with(Scalar::zero) += &sign * v;
                    }
                }
            }
            rows += coords.index.len();
        }
    }
    Ok(dense(&columns, rows))
}

fn cotensor_at(a: &DgAlgebra, k: &FiniteSimplicialSet, w: i64, p: Parity, cap: u32) -> Result<CotensorEntry> {
    let lay = layout(a, k, w, p, cap)?;
    let total = *lay.offsets.last().unwrap();
    let kernel = constraints(&lay)?.nullspace();
    let basis = kernel
        .iter()
        .map(|v| {
            lay.facets
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let coeffs = &v[lay.offsets[i]..lay.offsets[i + 1]];
                    Element::from_terms(f.forms.table(), f.basis.iter().cloned().zip(coeffs.iter().cloned()))
                        .to_string()
                })
                .collect()
        })
        .collect();
    debug_assert!(kernel.iter().all(|v| v.len() == total));
    Ok(CotensorEntry { weight: w, parity: p, dimension: kernel.len(), exact: lay.exact, basis })
}

/// `A^K` per bidegree within the window, truncated at polynomial degree `cap`
/// when a weight space is infinite.
pub fn cotensor(
    a: &CoefficientAlgebra,
    k: &FiniteSimplicialSet,
    window: Window,
    cap: u32,
) -> Result<Vec<CotensorEntry>> {
    let mut out = Vec::new();
    for w in window.min..=window.max {
        for p in [Parity::Even, Parity::Odd] {
            out.push(match a {
                CoefficientAlgebra::Zero => {
                    CotensorEntry { weight: w, parity: p, dimension: 0, exact: true, basis: Vec::new() }
                }
                CoefficientAlgebra::Free(a) => cotensor_at(a, k, w, p, cap)?,
            });
        }
    }
    Ok(out)
}

/// `(rank of A⊗Ω_n → A^K, dim A^K)` in one bidegree.
pub fn restriction_rank(a: &DgAlgebra, k: &FiniteSimplicialSet, w: i64, p: Parity, cap: u32) -> Result<(usize, usize)> {
    let lay = layout(a, k, w, p, cap)?;
    let target = constraints(&lay)?.nullspace().len();
    let whole = SimplexForms::new(k.ambient_dim(), a)?;
    let degree = match weight_space_degree_bound(whole.table(), w) {
        Some(b) if lay.exact => b,
        _ => cap,
    };
    let source = monomial_basis(whole.table(), w, p, degree);
    let total = *lay.offsets.last().unwrap();
    let mut columns: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); source.len()];
    for (i, f) in lay.facets.iter().enumerate() {
        let map: AlgebraMap =
            whole.cosimplicial_map(&inclusion(&f.vertices, &(0..=k.ambient_dim()).collect::<Vec<_>>()), &f.forms)?;
        let index: HashMap<&Monomial, usize> = f.basis.iter().enumerate().map(|(j, m)| (m, j)).collect();
        for (c, m) in source.iter().enumerate() {
            let img = map.apply(&Element::monomial(whole.table(), m.clone(), Scalar::one()))?;
            for (mono, v) in img.terms() {
                let j = index
                    .get(mono)
                    .ok_or_else(|| Error::CapInsufficient("restriction leaves the enumerated face space".into()))?;
                columns[c].insert(lay.offsets[i] + j, v.clone());
            }
        }
    }
    Ok((dense(&columns, total).rank(), target))
}

/// Checks surjectivity of `A⊗Ω_n → A^K` in every bidegree of the window.
pub fn surjectivity_onto(
    a: &CoefficientAlgebra,
    k: &FiniteSimplicialSet,
    window: Window,
    cap: u32,
) -> Result<Vec<SurjectivityEntry>> {
    let mut out = Vec::new();
    for w in window.min..=window.max {
        for p in [Parity::Even, Parity::Odd] {
            let (rank, target) = match a {
                CoefficientAlgebra::Zero => (0, 0),
                CoefficientAlgebra::Free(a) => restriction_rank(a, k, w, p, cap)?,
            };
            out.push(SurjectivityEntry {
                weight: w,
                parity: p,
                rank,
                target_dimension: target,
                surjective: rank == target,
            });
        }
    }
    Ok(out)
}
