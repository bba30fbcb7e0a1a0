//! Free supercommutative polynomial algebras over ℚ.
//!
//! A [`GeneratorTable`] fixes an ordered list of generators, each with an
//! integer weight and a parity. Declaration order is the canonical order:
//! every [`Monomial`] is stored as an exponent vector read in that order, and
//! products are normalized by sorting factors and accumulating the Koszul
//! sign of each transposition of two odd generators.

mod element;
mod map;
mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::Element;
pub use map::AlgebraMap;
pub use monomial::Monomial;
pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// Koszul sign exponent `|a|·|b|` as a boolean "is negative".
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A weight/parity pair.
pub type Bidegree = (i64, Parity);

pub(crate) fn show_bidegree(b: Bidegree) -> String {
    format!("({}, {})", b.0, b.1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: i64, parity: Parity) -> Self {
        Generator { name: name.into(), weight, parity }
    }

    pub fn even(name: impl Into<String>, weight: i64) -> Self {
        Self::new(name, weight, Parity::Even)
    }

    pub fn odd(name: impl Into<String>, weight: i64) -> Self {
        Self::new(name, weight, Parity::Odd)
    }

    pub fn bidegree(&self) -> Bidegree {
        (self.weight, self.parity)
    }
}

#[derive(Debug)]
struct TableInner {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
    even_mode: bool,
}

/// Ordered set of generators shared (cheaply, by reference count) by every
/// element of one algebra.
#[derive(Clone, Debug)]
pub struct GeneratorTable(Arc<TableInner>);

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GeneratorTable {
    /// Builds a user-facing table. Names must be identifiers, unique, and
    /// may not shadow the form generator `d<name>` of another generator.
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        Self::build(gens, false, true)
    }

    pub fn with_even_mode(gens: Vec<Generator>, even_mode: bool) -> Result<Self> {
        Self::build(gens, even_mode, true)
    }

    pub fn empty() -> Self {
        Self::build(Vec::new(), false, true).expect("empty table is valid")
    }

    /// Tables assembled by the crate itself (forms, cylinders, simplices)
    /// legitimately contain both `x` and `dx`.
    pub(crate) fn internal(gens: Vec<Generator>, even_mode: bool) -> Result<Self> {
        Self::build(gens, even_mode, false)
    }

    fn build(gens: Vec<Generator>, even_mode: bool, reserve_d: bool) -> Result<Self> {
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if !valid_identifier(&g.name) {
                return Err(Error::InvalidName(g.name.clone()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
            if even_mode && Parity::of(g.weight) != g.parity {
                return Err(Error::EvenModeViolation(g.name.clone()));
            }
        }
        if reserve_d {
            for g in &gens {
                if let Some(rest) = g.name.strip_prefix('d') {
                    if index.contains_key(rest) {
                        return Err(Error::ReservedName(g.name.clone()));
                    }
                }
            }
        }
        Ok(GeneratorTable(Arc::new(TableInner { gens, index, even_mode })))
    }

    pub fn len(&self) -> usize {
        self.0.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0.gens
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.0.gens[i]
    }

    pub fn even_mode(&self) -> bool {
        self.0.even_mode
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.0.gens[i].parity
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.0.gens[i].weight
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.0.gens[i].parity.is_odd()
    }

    /// Appends generators after the existing ones.
    pub(crate) fn extended(&self, extra: Vec<Generator>) -> Result<Self> {
        let mut gens = self.0.gens.clone();
        gens.extend(extra);
        Self::internal(gens, self.0.even_mode)
    }

    pub fn same(&self, other: &GeneratorTable) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.even_mode == other.0.even_mode && self.0.gens == other.0.gens)
    }

    pub(crate) fn ensure_same(&self, other: &GeneratorTable) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for GeneratorTable {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation() {
        assert!(GeneratorTable::new(vec![Generator::even("x", 0), Generator::even("x", 1)]).is_err());
        assert_eq!(
            GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("dx", 1)]).unwrap_err(),
            Error::ReservedName("dx".into())
        );
        assert!(GeneratorTable::new(vec![Generator::even("1x", 0)]).is_err());
        assert!(GeneratorTable::with_even_mode(vec![Generator::even("x", 1)], true).is_err());
        assert!(GeneratorTable::with_even_mode(vec![Generator::odd("x", 1)], true).is_ok());
        // `d` alone or `delta` without a matching `elta` are fine
        assert!(GeneratorTable::new(vec![Generator::even("d", 0), Generator::even("delta", 0)]).is_ok());
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::of(-3), Parity::Odd);
        assert!(Parity::Odd.koszul(Parity::Odd));
        assert!(!Parity::Odd.koszul(Parity::Even));
    }
}
