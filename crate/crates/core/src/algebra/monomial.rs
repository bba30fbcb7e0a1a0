use std::fmt;

use super::{GeneratorTable, Parity};

/// Exponent vector indexed by generator position. Odd exponents are 0 or 1.
///
/// The derived ordering is lexicographic on the exponent vector, which is the
/// canonical monomial order of the table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total polynomial degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self, table: &GeneratorTable) -> i64 {
        self.0.iter().enumerate().map(|(i, &e)| e as i64 * table.weight(i)).sum()
    }

    pub fn parity(&self, table: &GeneratorTable) -> Parity {
        let odd: u32 = self.0.iter().enumerate().filter(|(i, _)| table.is_odd(*i)).map(|(_, &e)| e).sum();
        Parity::of(odd as i64)
    }

    /// Number of odd generators in `self` with index strictly below `i`.
    pub(crate) fn odd_before(&self, table: &GeneratorTable, i: usize) -> u32 {
        (0..i).filter(|&j| table.is_odd(j)).map(|j| self.0[j]).sum()
    }

    /// Canonical product `self · other`. Returns the sign (true = negative)
    /// and the sorted monomial, or `None` when an odd generator would square.
    pub fn mul(&self, other: &Monomial, table: &GeneratorTable) -> Option<(bool, Monomial)> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut exps = Vec::with_capacity(self.0.len());
        let mut swaps = 0u32;
        // odd factors of `other` with smaller index move left past each odd factor of `self`
        let mut other_odd_prefix = 0u32;
        for i in 0..self.0.len() {
            let (a, b) = (self.0[i], other.0[i]);
            if table.is_odd(i) {
                if a + b > 1 {
                    return None;
                }
                if a == 1 {
                    swaps += other_odd_prefix;
                }
                other_odd_prefix += b;
            }
            exps.push(a + b);
        }
        Some((swaps % 2 == 1, Monomial(exps)))
    }

    /// Removes one factor of generator `i`; returns `(sign, multiplicity, rest)`
    /// for the left partial derivative, or `None` if `i` does not occur.
    pub(crate) fn strip_left(&self, table: &GeneratorTable, i: usize) -> Option<(bool, u32, Monomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut rest = self.0.clone();
        rest[i] -= 1;
        let negative = table.is_odd(i) && self.odd_before(table, i) % 2 == 1;
        Some((negative, e, Monomial(rest)))
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, table }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    table: &'a GeneratorTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            f.write_str(&self.table.generator(i).name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn table() -> GeneratorTable {
        GeneratorTable::new(vec![
            Generator::even("x", 0),
            Generator::odd("xi", 1),
            Generator::even("y", 0),
            Generator::odd("eta", 1),
        ])
        .unwrap()
    }

    #[test]
    fn koszul_sign_of_odd_transposition() {
        let t = table();
        let xi = Monomial::generator(4, 1);
        let eta = Monomial::generator(4, 3);
        let (neg, m) = xi.mul(&eta, &t).unwrap();
        assert!(!neg);
        let (neg2, m2) = eta.mul(&xi, &t).unwrap();
        assert!(neg2);
        assert_eq!(m, m2);
        assert!(xi.mul(&xi, &t).is_none());
    }

    #[test]
    fn even_generators_commute() {
        let t = table();
        let x = Monomial::generator(4, 0);
        let y = Monomial::generator(4, 2);
        assert_eq!(x.mul(&y, &t), y.mul(&x, &t));
        assert!(!x.mul(&y, &t).unwrap().0);
    }

    #[test]
    fn degree_weight_parity() {
        let t = table();
        let m = Monomial::from_exponents(vec![2, 1, 0, 1]);
        assert_eq!(m.degree(), 4);
        assert_eq!(m.weight(&t), 2);
        assert_eq!(m.parity(&t), Parity::Even);
        assert_eq!(m.display(&t).to_string(), "x^2 * xi * eta");
    }
}
