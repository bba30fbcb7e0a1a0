//! Derivations, differentials and dg algebras.
//!
//! A derivation is determined by its values on generators; on an arbitrary
//! element it is evaluated with the chain rule against left partial
//! derivatives, `D(a) = Σ_g D(g) · ∂a/∂g`, which reproduces the Koszul sign
//! in the Leibniz rule for odd derivations.

pub(crate) mod cohomology;
mod kahler;
mod square_zero;

use std::collections::BTreeMap;

use crate::algebra::{show_bidegree, Bidegree, Element, GeneratorTable, Parity};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub use cohomology::{
    cohomology, cohomology_at, monomial_basis, monomial_count, weight_space_degree_bound, CohomologyEntry, Window,
    MAX_BASIS, MAX_EXACT_DEGREE,
};
pub use kahler::{kahler, KahlerModule, ModuleMap};
pub use square_zero::{derivation_to_section, section_to_derivation, Section, SquareZeroExtension};

/// Derivation of fixed bidegree `(weight shift, parity)` from the algebra on
/// `source` into the algebra (or free module) on `target`. The target table
/// must contain every generator of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    source: GeneratorTable,
    target: GeneratorTable,
    shift: i64,
    parity: Parity,
    images: Vec<Element>,
}

impl Derivation {
    pub fn new(
        source: &GeneratorTable,
        target: &GeneratorTable,
        bidegree: Bidegree,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator images, got {}",
                source.len(),
                images.len()
            )));
        }
        let (shift, parity) = bidegree;
        for (g, img) in source.generators().iter().zip(&images) {
            img.table().ensure_same(target)?;
            if img.is_zero() {
                continue;
            }
            let expected = (g.weight + shift, g.parity + parity);
            match img.bidegree() {
                Some(b) if b == expected => {}
                Some(b) => {
                    return Err(Error::BidegreeViolation {
                        generator: g.name.clone(),
                        expected: show_bidegree(expected),
                        found: show_bidegree(b),
                    })
                }
                None => return Err(Error::Inhomogeneous(g.name.clone())),
            }
        }
        Ok(Derivation { source: source.clone(), target: target.clone(), shift, parity, images })
    }

    /// Endomorphic derivation from `name → image` pairs; missing generators map to zero.
    pub fn from_named<'a>(
        table: &GeneratorTable,
        bidegree: Bidegree,
        named: impl IntoIterator<Item = (&'a str, Element)>,
    ) -> Result<Self> {
        let mut images: Vec<Element> = (0..table.len()).map(|_| Element::zero(table)).collect();
        for (name, img) in named {
            images[table.index_of(name)?] = img;
        }
        Self::new(table, table, bidegree, images)
    }

    pub fn zero(table: &GeneratorTable, bidegree: Bidegree) -> Self {
        Derivation {
            source: table.clone(),
            target: table.clone(),
            shift: bidegree.0,
            parity: bidegree.1,
            images: (0..table.len()).map(|_| Element::zero(table)).collect(),
        }
    }

    /// `∂/∂g` as a derivation of bidegree `(−weight(g), parity(g))`.
    pub fn partial(table: &GeneratorTable, name: &str) -> Result<Self> {
        let i = table.index_of(name)?;
        let g = table.generator(i);
        let mut images: Vec<Element> = (0..table.len()).map(|_| Element::zero(table)).collect();
        images[i] = Element::one(table);
        Self::new(table, table, (-g.weight, g.parity), images)
    }

    /// `ε(g) = weight(g)·g`, bidegree `(0, even)`.
    pub fn euler(table: &GeneratorTable) -> Self {
        let images = table
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| Element::gen(table, i).scale(&scalar::int(g.weight)))
            .collect();
        Derivation { source: table.clone(), target: table.clone(), shift: 0, parity: Parity::Even, images }
    }

    pub fn source(&self) -> &GeneratorTable {
        &self.source
    }

    pub fn target(&self) -> &GeneratorTable {
        &self.target
    }

    pub fn bidegree(&self) -> Bidegree {
        (self.shift, self.parity)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn weight_shift(&self) -> i64 {
        self.shift
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source.same(&self.target)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        a.table().ensure_same(&self.source)?;
        let endo = self.is_endomorphism();
        let mut acc = Element::zero(&self.target);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let p = a.partial(i);
            if p.is_zero() {
                continue;
            }
            let p = if endo { p } else { p.embed(&self.target)? };
            acc = &acc + &(img * &p);
        }
        Ok(acc)
    }

    /// Super commutator `[D, D'] = D∘D' − (−1)^{|D||D'|} D'∘D` of two endomorphic derivations.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if !self.is_endomorphism() || !other.is_endomorphism() {
            return Err(Error::InvalidInput("bracket needs endomorphic derivations".into()));
        }
        self.source.ensure_same(&other.source)?;
        let negative = self.parity.koszul(other.parity);
        let images = (0..self.source.len())
            .map(|i| {
                let a = self.apply(&other.images[i])?;
                let b = other.apply(&self.images[i])?;
                Ok(if negative { &a + &b } else { &a - &b })
            })
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(&self.source, &self.source, (self.shift + other.shift, self.parity + other.parity), images)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        self.source.ensure_same(&other.source)?;
        self.target.ensure_same(&other.target)?;
        if self.bidegree() != other.bidegree() && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidInput("cannot add derivations of different bidegrees".into()));
        }
        let bidegree = if self.is_zero() { other.bidegree() } else { self.bidegree() };
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect();
        Derivation::new(&self.source, &self.target, bidegree, images)
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation { images: self.images.iter().map(|a| a.scale(c)).collect(), ..self.clone() }
    }

    /// Named images, for reports.
    pub fn named_images(&self) -> BTreeMap<String, String> {
        self.source.generators().iter().zip(&self.images).map(|(g, img)| (g.name.clone(), img.to_string())).collect()
    }
}

/// Operator commutator `[X, Y](a) = X(Y(a)) − (−1)^{|X||Y|} Y(X(a))`
/// evaluated directly on an element.
pub fn commutator_on(x: &Derivation, y: &Derivation, a: &Element) -> Result<Element> {
    let xy = x.apply(&y.apply(a)?)?;
    let yx = y.apply(&x.apply(a)?)?;
    Ok(if x.parity().koszul(y.parity()) { &xy + &yx } else { &xy - &yx })
}

/// Free dg superalgebra: a generator table and an odd derivation of weight
/// +1 squaring to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DgAlgebra {
    table: GeneratorTable,
    d: Derivation,
}

impl DgAlgebra {
    /// Validates `images` as a differential. Because `d²` is an even
    /// derivation, checking it on generators suffices.
    pub fn new(table: &GeneratorTable, images: Vec<Element>) -> Result<Self> {
        let d = Derivation::new(table, table, (1, Parity::Odd), images).map_err(|e| match e {
            Error::Inhomogeneous(g) => Error::BidegreeViolation {
                generator: g,
                expected: "homogeneous of (weight + 1, opposite parity)".into(),
                found: "inhomogeneous image".into(),
            },
            other => other,
        })?;
        Self::from_derivation(d)
    }

    pub fn from_derivation(d: Derivation) -> Result<Self> {
        if d.bidegree() != (1, Parity::Odd) || !d.is_endomorphism() {
            return Err(Error::BidegreeViolation {
                generator: "<differential>".into(),
                expected: show_bidegree((1, Parity::Odd)),
                found: show_bidegree(d.bidegree()),
            });
        }
        let table = d.source().clone();
        for (i, g) in table.generators().iter().enumerate() {
            let dd = d.apply(d.image(i))?;
            if !dd.is_zero() {
                return Err(Error::NotSquareZero { generator: g.name.clone(), residue: dd.to_string() });
            }
        }
        Ok(DgAlgebra { table, d })
    }

    pub fn from_named<'a>(table: &GeneratorTable, named: impl IntoIterator<Item = (&'a str, Element)>) -> Result<Self> {
        let mut images: Vec<Element> = (0..table.len()).map(|_| Element::zero(table)).collect();
        for (name, img) in named {
            images[table.index_of(name)?] = img;
        }
        Self::new(table, images)
    }

    /// Zero differential.
    pub fn trivial(table: &GeneratorTable) -> Self {
        DgAlgebra { table: table.clone(), d: Derivation::zero(table, (1, Parity::Odd)) }
    }

    /// The ground field ℚ.
    pub fn ground() -> Self {
        Self::trivial(&GeneratorTable::empty())
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    pub fn d(&self, a: &Element) -> Result<Element> {
        self.d.apply(a)
    }
}

/// Checks a candidate differential given as `name → image`; unnamed
/// generators map to zero.
pub fn validate_differential<'a>(
    table: &GeneratorTable,
    images: impl IntoIterator<Item = (&'a str, Element)>,
) -> Result<DgAlgebra> {
    DgAlgebra::from_named(table, images)
}

pub fn euler_derivation(table: &GeneratorTable) -> Derivation {
    Derivation::euler(table)
}
