//! Polynomial forms on simplices.
//!
//! `Ω_n(B)` is stored in eliminated coordinates: the generators of the
//! coefficient algebra `B`, then `t1…tn` (even, weight 0) and `dt1…dtn`
//! (odd, weight 1), with `t0 = 1 − Σ tᵢ` and `dt0 = −Σ dtᵢ`. The quotient by
//! the barycentric relations thereby becomes a free algebra.

mod dupont;
mod sset;
mod whitney;

use crate::algebra::{AlgebraMap, Element, Generator, GeneratorTable};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::scalar;

pub use dupont::{DupontOperator, DUPONT_SIGN};
pub use sset::{
    cotensor, restriction_rank, surjectivity_onto, CoefficientAlgebra, CotensorEntry, FiniteSimplicialSet,
    SurjectivityEntry,
};
pub use whitney::{increasing_tuples, normalize_tuple, tuple_label, ElementarySubcomplex, IntegralMode};

/// Monotone map `[m] → [n]`, given by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplexMap {
    values: Vec<usize>,
    target: usize,
}

impl SimplexMap {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("a simplex map needs at least one value".into()));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidInput(format!("value out of range [0, {target}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NonMonotone(format!("{values:?}")));
        }
        Ok(SimplexMap { values, target })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap { values: (0..=n).collect(), target: n }
    }

    /// `δⁱ: [n−1] → [n]`, the injection skipping `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::InvalidInput(format!("no coface δ^{i} into [{n}]")));
        }
        Self::new((0..=n).filter(|&j| j != i).collect(), n)
    }

    /// `σⁱ: [n+1] → [n]`, the surjection hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::InvalidInput(format!("no codegeneracy σ^{i} onto [{n}]")));
        }
        Self::new((0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(), n)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplexMap) -> Result<SimplexMap> {
        if first.target != self.source_dim() {
            return Err(Error::InvalidInput("simplex maps are not composable".into()));
        }
        SimplexMap::new(first.values.iter().map(|&j| self.values[j]).collect(), self.target)
    }
}

/// `Ω_n(B) = B ⊗ Ω_n` with total differential `d_B + d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexForms {
    n: usize,
    coefficients: DgAlgebra,
    algebra: DgAlgebra,
}

/// `Ω_n` with rational coefficients.
pub fn omega_n(n: usize) -> SimplexForms {
    SimplexForms::new(n, &DgAlgebra::ground()).expect("the ground field has no generators to collide with")
}

fn simplex_generators(n: usize) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..=n).map(|i| Generator::even(format!("t{i}"), 0)).collect();
    gens.extend((1..=n).map(|i| Generator::odd(format!("dt{i}"), 1)));
    gens
}

impl SimplexForms {
    pub fn new(n: usize, coefficients: &DgAlgebra) -> Result<Self> {
        let bt = coefficients.table();
        let gens = simplex_generators(n);
        for g in &gens {
            if bt.contains(&g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let table = bt.extended(gens)?;
        let b = bt.len();
        let mut images =
            coefficients.differential().images().iter().map(|e| e.embed(&table)).collect::<Result<Vec<_>>>()?;
        images.extend((0..n).map(|i| Element::gen(&table, b + n + i)));
        images.extend((0..n).map(|_| Element::zero(&table)));
        Ok(SimplexForms { n, coefficients: coefficients.clone(), algebra: DgAlgebra::new(&table, images)? })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &DgAlgebra {
        &self.coefficients
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn table(&self) -> &GeneratorTable {
        self.algebra.table()
    }

    pub fn d(&self, a: &Element) -> Result<Element> {
        self.algebra.d(a)
    }

    fn offset(&self) -> usize {
        self.coefficients.table().len()
    }

    /// Barycentric coordinate `tⁱ`, `0 ≤ i ≤ n`.
    pub fn t(&self, i: usize) -> Element {
        let table = self.table();
        if i == 0 {
            let mut e = Element::one(table);
            for j in 1..=self.n {
                e = &e - &Element::gen(table, self.offset() + j - 1);
            }
            e
        } else {
            Element::gen(table, self.offset() + i - 1)
        }
    }

    /// `dtⁱ`, `0 ≤ i ≤ n`.
    pub fn dt(&self, i: usize) -> Element {
        let table = self.table();
        if i == 0 {
            let mut e = Element::zero(table);
            for j in 1..=self.n {
                e = &e - &Element::gen(table, self.offset() + self.n + j - 1);
            }
            e
        } else {
            Element::gen(table, self.offset() + self.n + i - 1)
        }
    }

    /// Number of `dt` factors in each term, if it is the same for all terms.
    pub fn form_degree(&self, e: &Element) -> Option<usize> {
        let start = self.offset() + self.n;
        let mut degrees = e.terms().keys().map(|m| m.exponents()[start..].iter().sum::<u32>() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn form_degree_component(&self, e: &Element, k: usize) -> Element {
        let start = self.offset() + self.n;
        e.filter(|m| m.exponents()[start..].iter().sum::<u32>() as usize == k)
    }

    pub fn include_coefficient(&self, b: &Element) -> Result<Element> {
        b.table().ensure_same(self.coefficients.table())?;
        b.embed(self.table())
    }

    /// Map `Ω_n(B) → Ω_m(B)` induced by any vertex assignment `[m] → [n]`
    /// (monotone or not), via `tᵏ ↦ Σ_{φ(j)=k} tʲ`.
    fn vertex_pullback(&self, values: &[usize], to: &SimplexForms) -> Result<AlgebraMap> {
        let b = self.offset();
        let table = to.table();
        let mut images: Vec<Element> = (0..b).map(|i| Element::gen(table, i)).collect();
        let mut t_images = Vec::new();
        for k in 1..=self.n {
            let mut img = Element::zero(table);
            for (j, &v) in values.iter().enumerate() {
                if v == k {
                    img = &img + &to.t(j);
                }
            }
            t_images.push(img);
        }
        let dt_images = t_images.iter().map(|e| to.d(e)).collect::<Result<Vec<_>>>()?;
        images.extend(t_images);
        images.extend(dt_images);
        AlgebraMap::new(self.table(), table, images)
    }

    /// `φ*: Ω_n(B) → Ω_m(B)` for monotone `φ: [m] → [n]`.
    pub fn cosimplicial_map(&self, phi: &SimplexMap, to: &SimplexForms) -> Result<AlgebraMap> {
        if phi.target_dim() != self.n || phi.source_dim() != to.n {
            return Err(Error::InvalidInput("simplex map does not match the form algebras".into()));
        }
        to.coefficients.table().ensure_same(self.coefficients.table())?;
        self.vertex_pullback(phi.values(), to)
    }

    /// Face algebra `Ω_m(B)` with the same coefficients.
    pub fn with_dim(&self, m: usize) -> SimplexForms {
        SimplexForms::new(m, &self.coefficients).expect("same coefficients as an existing simplex")
    }

    /// Barycentric presentation: `B`, then `t0…tn`, `dt0…dtn`.
    pub fn barycentric_table(&self) -> Result<GeneratorTable> {
        let mut gens: Vec<Generator> = (0..=self.n).map(|i| Generator::even(format!("t{i}"), 0)).collect();
        gens.extend((0..=self.n).map(|i| Generator::odd(format!("dt{i}"), 1)));
        for g in &gens {
            if self.coefficients.table().contains(&g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        self.coefficients.table().extended(gens)
    }

    /// The quotient map from the barycentric presentation.
    pub fn elimination(&self) -> Result<AlgebraMap> {
        let bary = self.barycentric_table()?;
        let b = self.offset();
        let mut images: Vec<Element> = (0..b).map(|i| Element::gen(self.table(), i)).collect();
        images.extend((0..=self.n).map(|i| self.t(i)));
        images.extend((0..=self.n).map(|i| self.dt(i)));
        AlgebraMap::new(&bary, self.table(), images)
    }

    pub fn eliminate(&self, e: &Element) -> Result<Element> {
        self.elimination()?.apply(e)
    }

    /// The same element written over the barycentric generators.
    pub fn to_barycentric(&self, e: &Element) -> Result<Element> {
        e.table().ensure_same(self.table())?;
        e.embed(&self.barycentric_table()?)
    }

    /// `T_n = 1 − Σ tⁱ` in barycentric generators.
    pub fn barycentric_relation(&self) -> Result<Element> {
        let bary = self.barycentric_table()?;
        let mut e = Element::one(&bary);
        for i in 0..=self.n {
            e = &e - &Element::generator(&bary, &format!("t{i}"))?;
        }
        Ok(e)
    }

    /// Evaluation at vertex `i`: `tʲ ↦ δᵢⱼ`, `dtʲ ↦ 0`, onto `B`.
    pub fn vertex_evaluation(&self, i: usize) -> Result<AlgebraMap> {
        let bt = self.coefficients.table();
        let b = self.offset();
        let mut images: Vec<Element> = (0..b).map(|j| Element::gen(bt, j)).collect();
        images.extend((1..=self.n).map(|j| Element::constant(bt, scalar::int((i == j) as i64))));
        images.extend((1..=self.n).map(|_| Element::zero(bt)));
        AlgebraMap::new(self.table(), bt, images)
    }
}
