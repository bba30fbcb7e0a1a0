use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Bidegree, Parity};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Graded complexes carry a weight; ungraded ones live at weight 0 and the
/// differential only flips parity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    #[default]
    Graded,
    Ungraded,
}

impl Flavor {
    pub fn next(self, b: Bidegree) -> Bidegree {
        match self {
            Flavor::Graded => (b.0 + 1, b.1.flip()),
            Flavor::Ungraded => (0, b.1.flip()),
        }
    }

    pub fn prev(self, b: Bidegree) -> Bidegree {
        match self {
            Flavor::Graded => (b.0 - 1, b.1.flip()),
            Flavor::Ungraded => (0, b.1.flip()),
        }
    }
}

/// Finite-dimensional ℤ×ℤ₂-graded cochain complex over ℚ.
///
/// `d(b)` is the matrix of the differential from component `b` to
/// `flavor.next(b)`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    flavor: Flavor,
    dims: BTreeMap<Bidegree, usize>,
    d: BTreeMap<Bidegree, Matrix>,
}

impl Complex {
    pub fn new(
        flavor: Flavor,
        dims: BTreeMap<Bidegree, usize>,
        differentials: BTreeMap<Bidegree, Matrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<Bidegree, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        if flavor == Flavor::Ungraded {
            if let Some(b) = dims.keys().chain(differentials.keys()).find(|b| b.0 != 0) {
                return Err(Error::InvalidComplex(format!("ungraded complex has a component at weight {}", b.0)));
            }
        }
        let dim = |b: &Bidegree| dims.get(b).copied().unwrap_or(0);
        let mut d = BTreeMap::new();
        for (b, m) in differentials {
            let to = flavor.next(b);
            if m.rows() != dim(&to) || m.cols() != dim(&b) {
                return Err(Error::InvalidComplex(format!(
                    "differential from ({}, {}) is {}x{}, expected {}x{}",
                    b.0,
                    b.1,
                    m.rows(),
                    m.cols(),
                    dim(&to),
                    dim(&b)
                )));
            }
            if !m.is_zero() {
                d.insert(b, m);
            }
        }
        let complex = Complex { flavor, dims, d };
        for &b in complex.dims.keys() {
            let dd = complex.d(flavor.next(b)).mul(&complex.d(b));
            if !dd.is_zero() {
                return Err(Error::NotSquareZero {
                    generator: format!("component ({}, {})", b.0, b.1),
                    residue: format!(
                        "{:?}",
                        dd.to_rows()
                            .iter()
                            .map(|r| r.iter().map(scalar::format).collect::<Vec<_>>())
                            .collect::<Vec<_>>()
                    ),
                });
            }
        }
        Ok(complex)
    }

    pub fn zero(flavor: Flavor) -> Self {
        Complex { flavor, dims: BTreeMap::new(), d: BTreeMap::new() }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Bidegrees with nonzero components, sorted.
    pub fn support(&self) -> Vec<Bidegree> {
        self.dims.keys().copied().collect()
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn d(&self, b: Bidegree) -> Matrix {
        self.d.get(&b).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(self.flavor.next(b)), self.dim(b)))
    }

    pub fn next(&self, b: Bidegree) -> Bidegree {
        self.flavor.next(b)
    }

    pub fn prev(&self, b: Bidegree) -> Bidegree {
        self.flavor.prev(b)
    }

    pub fn cohomology_dim(&self, b: Bidegree) -> usize {
        self.dim(b) - self.d(b).rank() - self.d(self.prev(b)).rank()
    }

    /// Cohomology dimension per bidegree, omitting zeros.
    pub fn cohomology(&self) -> BTreeMap<Bidegree, usize> {
        self.dims.keys().map(|&b| (b, self.cohomology_dim(b))).filter(|&(_, h)| h > 0).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_empty()
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        if self.flavor != other.flavor {
            return Err(Error::InvalidInput("direct sum of complexes of different flavors".into()));
        }
        let keys: BTreeSet<Bidegree> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        let dims = keys.iter().map(|&b| (b, self.dim(b) + other.dim(b))).collect();
        let d = keys.iter().map(|&b| (b, block_diagonal(&self.d(b), &other.d(b)))).collect();
        Complex::new(self.flavor, dims, d)
    }

    /// Same complex with component bases changed by `p[b]` (new = p·old).
    pub fn conjugate(&self, p: &BTreeMap<Bidegree, Matrix>) -> Result<Complex> {
        let mut d = BTreeMap::new();
        for &b in self.dims.keys() {
            let to = self.next(b);
            let inv = match p.get(&b) {
                Some(m) => m
                    .inverse()
                    .ok_or_else(|| Error::InvalidInput(format!("singular change of basis at ({}, {})", b.0, b.1)))?,
                None => Matrix::identity(self.dim(b)),
            };
            let left = p.get(&to).cloned().unwrap_or_else(|| Matrix::identity(self.dim(to)));
            d.insert(b, left.mul(&self.d(b)).mul(&inv));
        }
        Complex::new(self.flavor, self.dims.clone(), d)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            flavor: self.flavor,
            components: self
                .dims
                .iter()
                .map(|(&(weight, parity), &dim)| ComponentDoc { weight, parity, dim })
                .collect(),
            differentials: self
                .d
                .iter()
                .map(|(&(w, p), m)| DifferentialDoc { from: (w, p), matrix: m.to_rows() })
                .collect(),
        }
    }

    pub fn from_document(doc: ComplexDocument) -> Result<Complex> {
        let mut dims = BTreeMap::new();
        for c in doc.components {
            if dims.insert((c.weight, c.parity), c.dim).is_some() {
                return Err(Error::InvalidComplex(format!("component ({}, {}) listed twice", c.weight, c.parity)));
            }
        }
        let mut d = BTreeMap::new();
        for entry in doc.differentials {
            let rows = dims.get(&doc.flavor.next(entry.from)).copied().unwrap_or(0);
            let m = if entry.matrix.is_empty() {
                Matrix::zeros(rows, dims.get(&entry.from).copied().unwrap_or(0))
            } else {
                let width = entry.matrix[0].len();
                if entry.matrix.iter().any(|r| r.len() != width) {
                    return Err(Error::InvalidComplex("ragged differential matrix".into()));
                }
                Matrix::from_rows(entry.matrix)
            };
            if d.insert(entry.from, m).is_some() {
                return Err(Error::InvalidComplex(format!(
                    "differential from ({}, {}) listed twice",
                    entry.from.0, entry.from.1
                )));
            }
        }
        Complex::new(doc.flavor, dims, d)
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDocument::deserialize(d)?;
        Complex::from_document(doc).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDocument {
    #[serde(default)]
    pub flavor: Flavor,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub differentials: Vec<DifferentialDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub weight: i64,
    pub parity: Parity,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DifferentialDoc {
    pub from: (i64, Parity),
    #[serde(with = "scalar::matrix_serde")]
    pub matrix: Vec<Vec<Scalar>>,
}

pub(crate) fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m[(r, c)] = a[(r, c)].clone();
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m[(a.rows() + r, a.cols() + c)] = b[(r, c)].clone();
        }
    }
    m
}

/// A degree-preserving linear map commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    blocks: BTreeMap<Bidegree, Matrix>,
}

impl ChainMap {
    pub fn new(source: &Complex, target: &Complex, blocks: BTreeMap<Bidegree, Matrix>) -> Result<Self> {
        if source.flavor != target.flavor {
            return Err(Error::InvalidInput("chain map between complexes of different flavors".into()));
        }
        let mut kept = BTreeMap::new();
        for (b, m) in blocks {
            if m.rows() != target.dim(b) || m.cols() != source.dim(b) {
                return Err(Error::InvalidInput(format!(
                    "chain map block at ({}, {}) is {}x{}, expected {}x{}",
                    b.0,
                    b.1,
                    m.rows(),
                    m.cols(),
                    target.dim(b),
                    source.dim(b)
                )));
            }
            if !m.is_zero() {
                kept.insert(b, m);
            }
        }
        let f = ChainMap { source: source.clone(), target: target.clone(), blocks: kept };
        for &b in source.dims.keys() {
            let lhs = target.d(b).mul(&f.block(b));
            let rhs = f.block(source.next(b)).mul(&source.d(b));
            if lhs != rhs {
                return Err(Error::NotChainMap {
                    generator: format!("({}, {})", b.0, b.1),
                    detail: "d∘f ≠ f∘d".into(),
                });
            }
        }
        Ok(f)
    }

    pub fn identity(c: &Complex) -> Self {
        let blocks = c.dims.iter().map(|(&b, &n)| (b, Matrix::identity(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), blocks }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), blocks: BTreeMap::new() }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn block(&self, b: Bidegree) -> Matrix {
        self.blocks.get(&b).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(b), self.source.dim(b)))
    }

    /// Bidegrees where either side is nonzero.
    pub fn support(&self) -> Vec<Bidegree> {
        let keys: BTreeSet<Bidegree> = self.source.dims.keys().chain(self.target.dims.keys()).copied().collect();
        keys.into_iter().collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::InvalidInput("composition of non-composable chain maps".into()));
        }
        let blocks = first.source.dims.keys().map(|&b| (b, self.block(b).mul(&first.block(b)))).collect();
        ChainMap::new(&first.source, &self.target, blocks)
    }

    pub fn is_fibration(&self) -> bool {
        self.target.dims.iter().all(|(&b, &n)| self.block(b).rank() == n)
    }

    /// Mapping cone `C_b = V_{next b} ⊕ W_b` with `d(v, w) = (−d v, f v + d w)`.
    pub fn cone(&self) -> Result<Complex> {
        let (v, w) = (&self.source, &self.target);
        let keys: BTreeSet<Bidegree> = v.dims.keys().map(|&b| v.prev(b)).chain(w.dims.keys().copied()).collect();
        let dims = keys.iter().map(|&b| (b, v.dim(v.next(b)) + w.dim(b))).collect();
        let mut d = BTreeMap::new();
        for &b in &keys {
            let nb = v.next(b);
            let top = v.d(nb).scale(&scalar::int(-1)).hstack(&Matrix::zeros(v.dim(v.next(nb)), w.dim(b)));
            let bottom = self.block(nb).hstack(&w.d(b));
            d.insert(b, top.vstack(&bottom));
        }
        Complex::new(v.flavor, dims, d)
    }

    pub fn is_weak_equivalence(&self) -> bool {
        self.cone().map(|c| c.is_acyclic()).unwrap_or(false)
    }

    pub fn to_document(&self) -> ChainMapDocument {
        ChainMapDocument {
            source: self.source.to_document(),
            target: self.target.to_document(),
            blocks: self.blocks.iter().map(|(&b, m)| BlockDoc { at: b, matrix: m.to_rows() }).collect(),
        }
    }

    pub fn from_document(doc: ChainMapDocument) -> Result<ChainMap> {
        let source = Complex::from_document(doc.source)?;
        let target = Complex::from_document(doc.target)?;
        let mut blocks = BTreeMap::new();
        for entry in doc.blocks {
            let m = if entry.matrix.is_empty() {
                Matrix::zeros(target.dim(entry.at), source.dim(entry.at))
            } else {
                Matrix::from_rows(entry.matrix)
            };
            blocks.insert(entry.at, m);
        }
        ChainMap::new(&source, &target, blocks)
    }
}

impl Serialize for ChainMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ChainMapDocument::deserialize(d)?;
        ChainMap::from_document(doc).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMapDocument {
    pub source: ComplexDocument,
    pub target: ComplexDocument,
    #[serde(default)]
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockDoc {
    pub at: (i64, Parity),
    #[serde(with = "scalar::matrix_serde")]
    pub matrix: Vec<Vec<Scalar>>,
}
