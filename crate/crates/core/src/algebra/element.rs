use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Bidegree, GeneratorTable, Monomial, Parity};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A finite ℚ-linear combination of canonical monomials. Zero coefficients
/// are never stored, so structural equality is equality of elements.
#[derive(Clone, Debug)]
pub struct Element {
    table: GeneratorTable,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.table.same(&other.table) && self.terms == other.terms
    }
}

impl Eq for Element {}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Element {
    pub fn zero(table: &GeneratorTable) -> Self {
        Element { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &GeneratorTable) -> Self {
        Self::constant(table, Scalar::one())
    }

    pub fn constant(table: &GeneratorTable, c: Scalar) -> Self {
        Self::monomial(table, Monomial::one(table.len()), c)
    }

    pub fn monomial(table: &GeneratorTable, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, m, c);
        Element { table: table.clone(), terms }
    }

    /// The generator at position `i`.
    pub fn gen(table: &GeneratorTable, i: usize) -> Self {
        Self::monomial(table, Monomial::generator(table.len(), i), Scalar::one())
    }

    pub fn generator(table: &GeneratorTable, name: &str) -> Result<Self> {
        Ok(Self::gen(table, table.index_of(name)?))
    }

    pub fn from_terms(table: &GeneratorTable, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        Element { table: table.clone(), terms: map }
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    /// Number of terms; an empty element is [`is_zero`](Self::is_zero).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.table.len()))
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.table.ensure_same(&other.table)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Element { table: self.table.clone(), terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.table.ensure_same(&other.table)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(Element { table: self.table.clone(), terms })
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.table.ensure_same(&other.table)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.mul(m2, &self.table) {
                    let c = c1 * c2;
                    accumulate(&mut terms, m, if neg { -c } else { c });
                }
            }
        }
        Ok(Element { table: self.table.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.table);
        }
        Element { table: self.table.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.table);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Left partial derivative with respect to the generator at position `i`:
    /// the generator is moved to the front of each monomial (collecting the
    /// Koszul sign) and then struck.
    pub fn partial(&self, i: usize) -> Element {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((neg, mult, rest)) = m.strip_left(&self.table, i) {
                let c = c * Scalar::from_integer(mult.into());
                accumulate(&mut terms, rest, if neg { -c } else { c });
            }
        }
        Element { table: self.table.clone(), terms }
    }

    pub fn partial_by_name(&self, name: &str) -> Result<Element> {
        Ok(self.partial(self.table.index_of(name)?))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn component(&self, weight: i64, parity: Parity) -> Element {
        let t = self.table.clone();
        self.filter(|m| m.weight(&t) == weight && m.parity(&t) == parity)
    }

    pub fn parity_component(&self, parity: Parity) -> Element {
        let t = self.table.clone();
        self.filter(|m| m.parity(&t) == parity)
    }

    /// Common bidegree of all terms, or `None` if inhomogeneous. Zero has no bidegree.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| (m.weight(&self.table), m.parity(&self.table)));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.table));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Re-expresses the element over `target`, matching generators by name.
    /// Factors are re-sorted into the target's order with Koszul signs.
    /// Generators absent from `target` are allowed only if unused.
    pub fn embed(&self, target: &GeneratorTable) -> Result<Element> {
        if self.table.same(target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.table.len());
        for g in self.table.generators() {
            let j = target.index_of(&g.name).ok();
            if let Some(j) = j {
                if target.generator(j).bidegree() != g.bidegree() {
                    return Err(Error::InvalidInput(format!(
                        "generator `{}` has a different bidegree in the target table",
                        g.name
                    )));
                }
            }
            map.push(j);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut cur = Monomial::one(target.len());
            let mut neg = false;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownGenerator(self.table.generator(i).name.clone()))?;
                for _ in 0..e {
                    let (s, next) = cur
                        .mul(&Monomial::generator(target.len(), j), target)
                        .expect("canonical monomial has no repeated odd factor");
                    neg ^= s;
                    cur = next;
                }
            }
            accumulate(&mut terms, cur, if neg { -c.clone() } else { c.clone() });
        }
        Ok(Element { table: target.clone(), terms })
    }
}

fn write_coefficient_term(f: &mut fmt::Formatter<'_>, c: &Scalar, m: &Monomial, table: &GeneratorTable) -> fmt::Result {
    if m.is_one() {
        return f.write_str(&scalar::format(c));
    }
    if !c.is_one() {
        write!(f, "{} * ", scalar::format(c))?;
    }
    write!(f, "{}", m.display(table))
}

/// Monomials in descending canonical order; coefficients other than 1 are
/// written explicitly (`2/3 * x^2 * xi - 1`, `-1 * xi * eta`).
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                write_coefficient_term(f, c, m, &self.table)?;
            } else if c.is_negative() {
                f.write_str(" - ")?;
                write_coefficient_term(f, &c.abs(), m, &self.table)?;
            } else {
                f.write_str(" + ")?;
                write_coefficient_term(f, c, m, &self.table)?;
            }
        }
        Ok(())
    }
}

// Operator sugar panics on mismatched tables; the `try_*` methods report it.

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("mismatched generator tables")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("mismatched generator tables")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("mismatched generator tables")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { table: self.table.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Generator};
    use crate::scalar::int;

    fn table() -> GeneratorTable {
        GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", 0)]).unwrap()
    }

    #[test]
    fn difference_of_squares_with_odd_part() {
        let t = table();
        let a = parse("(x + xi) * (x - xi)", &t).unwrap();
        assert_eq!(a, parse("x^2", &t).unwrap());
    }

    #[test]
    fn unit_and_odd_anticommutation() {
        let t = GeneratorTable::new(vec![Generator::odd("a", 1), Generator::odd("b", 1)]).unwrap();
        let a = Element::generator(&t, "a").unwrap();
        let b = Element::generator(&t, "b").unwrap();
        assert_eq!(&a * &Element::one(&t), a);
        assert!((&a * &b + &b * &a).is_zero());
    }

    #[test]
    fn left_partials() {
        let t = GeneratorTable::new(vec![Generator::odd("xi1", 0), Generator::odd("xi2", 0), Generator::even("x", 0)])
            .unwrap();
        let f = parse("xi1 * xi2", &t).unwrap();
        assert_eq!(f.partial_by_name("xi1").unwrap(), parse("xi2", &t).unwrap());
        assert_eq!(f.partial_by_name("xi2").unwrap(), parse("-xi1", &t).unwrap());
        assert_eq!(parse("x^3", &t).unwrap().partial(2), parse("3*x^2", &t).unwrap());
        assert!(parse("x^2", &t).unwrap().partial(0).is_zero());
    }

    #[test]
    fn mismatched_tables_are_errors() {
        let a = Element::one(&table());
        let b = Element::one(&GeneratorTable::empty());
        assert_eq!(a.try_mul(&b).unwrap_err(), Error::TableMismatch);
    }

    #[test]
    fn embed_reorders_with_sign() {
        let s = GeneratorTable::new(vec![Generator::odd("a", 0), Generator::odd("b", 0)]).unwrap();
        let t =
            GeneratorTable::new(vec![Generator::odd("b", 0), Generator::odd("a", 0), Generator::even("c", 0)]).unwrap();
        let ab = parse("a*b", &s).unwrap();
        assert_eq!(ab.embed(&t).unwrap(), parse("-1 * b * a", &t).unwrap());
        assert_eq!(ab.embed(&t).unwrap().to_string(), "-1 * b * a");
        assert_eq!(parse("2*x", &table()).unwrap().scale(&int(3)).to_string(), "6 * x");
    }

    #[test]
    fn bidegree_detection() {
        let t = table();
        assert_eq!(parse("x*xi + xi", &t).unwrap().bidegree(), Some((0, Parity::Odd)));
        assert_eq!(parse("x + xi", &t).unwrap().bidegree(), None);
    }
}
