use super::Derivation;
use crate::algebra::{AlgebraMap, Bidegree, Element, Generator, GeneratorTable, Monomial};
use crate::error::{Error, Result};
use crate::scalar;

/// `A ⊕ M` for a free module `M` with a chosen basis, presented as the free
/// algebra on the generators of `A` followed by the basis of `M`, with every
/// product of two module elements truncated to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareZeroExtension {
    base: GeneratorTable,
    basis: Vec<Generator>,
    table: GeneratorTable,
}

impl SquareZeroExtension {
    pub fn new(base: &GeneratorTable, basis: Vec<Generator>) -> Result<Self> {
        let table = base.extended(basis.clone())?;
        Ok(SquareZeroExtension { base: base.clone(), basis, table })
    }

    /// `M = A` itself: one even weight-0 basis element `name`, giving `A[ε]`.
    pub fn dual_numbers(base: &GeneratorTable, name: &str) -> Result<Self> {
        Self::new(base, vec![Generator::even(name, 0)])
    }

    pub fn base(&self) -> &GeneratorTable {
        &self.base
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn module_basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn module_degree(&self, m: &Monomial) -> u32 {
        m.exponents()[self.base.len()..].iter().sum()
    }

    /// Drops every term of module degree ≥ 2.
    pub fn truncate(&self, e: &Element) -> Element {
        e.filter(|m| self.module_degree(m) <= 1)
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Result<Element> {
        u.table().ensure_same(&self.table)?;
        Ok(self.truncate(&u.try_mul(v)?))
    }

    /// `(a, m)` with `a ∈ A` and `m` of module degree exactly one.
    pub fn pair(&self, a: &Element, m: &Element) -> Result<Element> {
        if !self.is_module_element(m)? {
            return Err(Error::InvalidInput(format!("`{m}` is not a module element")));
        }
        Ok(&self.zero_section(a)? + m)
    }

    pub fn is_module_element(&self, m: &Element) -> Result<bool> {
        m.table().ensure_same(&self.table)?;
        Ok(m.terms().keys().all(|k| self.module_degree(k) == 1))
    }

    pub fn zero_section(&self, a: &Element) -> Result<Element> {
        a.table().ensure_same(&self.base)?;
        a.embed(&self.table)
    }

    pub fn projection(&self, u: &Element) -> Result<Element> {
        u.table().ensure_same(&self.table)?;
        u.filter(|m| self.module_degree(m) == 0).embed(&self.base)
    }

    pub fn module_part(&self, u: &Element) -> Element {
        u.filter(|m| self.module_degree(m) == 1)
    }

    /// The extension by the same basis with every bidegree shifted by `by`.
    fn shifted(&self, by: Bidegree) -> Result<Self> {
        let basis =
            self.basis.iter().map(|g| Generator::new(g.name.clone(), g.weight + by.0, g.parity + by.1)).collect();
        Self::new(&self.base, basis)
    }

    /// Moves module terms between `M` and the shifted copy `εM`, using
    /// `ε·c·e = (−1)^{|ε||c|} c·(εe)`.
    fn transport(&self, e: &Element, to: &GeneratorTable, shift: Bidegree) -> Element {
        let n = self.base.len();
        Element::from_terms(
            to,
            e.terms().iter().map(|(m, c)| {
                let base_part = Monomial::from_exponents(
                    m.exponents()[..n].iter().copied().chain(std::iter::repeat_n(0, m.len() - n)).collect(),
                );
                let negative = base_part.parity(&self.table).koszul(shift.1);
                (m.clone(), scalar::sign(negative) * c)
            }),
        )
    }
}

/// Algebra map `σ: A → A ⊕ εM` splitting the projection, where `εM` is
/// `M` shifted by the bidegree of the corresponding derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    module: SquareZeroExtension,
    extension: SquareZeroExtension,
    bidegree: Bidegree,
    map: AlgebraMap,
}

impl Section {
    pub fn module(&self) -> &SquareZeroExtension {
        &self.module
    }

    pub fn extension(&self) -> &SquareZeroExtension {
        &self.extension
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn image(&self, i: usize) -> &Element {
        self.map.image(i)
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        Ok(self.extension.truncate(&self.map.apply(a)?))
    }

    /// Builds a section from its values on a finite list of elements. The
    /// list must contain every generator. Fails with a product witness if
    /// the values are not multiplicative.
    pub fn from_pointwise(
        module: &SquareZeroExtension,
        bidegree: Bidegree,
        entries: &[(Element, Element)],
    ) -> Result<Section> {
        let extension = module.shifted(bidegree)?;
        for (a, s) in entries {
            if extension.projection(s)? != *a {
                return Err(Error::InvalidInput(format!("value at `{a}` does not split the projection")));
            }
        }
        for (a, sa) in entries {
            for (b, sb) in entries {
                let ab = a.try_mul(b)?;
                if let Some((_, sab)) = entries.iter().find(|(k, _)| *k == ab) {
                    if extension.mul(sa, sb)? != *sab {
                        return Err(Error::NotMultiplicative { a: a.to_string(), b: b.to_string() });
                    }
                }
            }
        }
        let base = module.base();
        let images = (0..base.len())
            .map(|i| {
                let g = Element::gen(base, i);
                entries
                    .iter()
                    .find(|(k, _)| *k == g)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::InvalidInput(format!("no value given at generator `{g}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let section = Section {
            module: module.clone(),
            map: AlgebraMap::new(base, extension.table(), images)?,
            extension,
            bidegree,
        };
        for (a, sa) in entries {
            if section.apply(a)? != *sa {
                return Err(product_witness(a, base));
            }
        }
        Ok(section)
    }
}

/// Factorization `a = g · rest` exhibiting a failure at a monomial value.
fn product_witness(a: &Element, base: &GeneratorTable) -> Error {
    let single = (a.len() == 1).then(|| a.terms().keys().next().unwrap().clone());
    match single {
        Some(m) if m.degree() >= 2 => {
            let i = m.exponents().iter().position(|&e| e > 0).unwrap();
            let mut rest = m.exponents().to_vec();
            rest[i] -= 1;
            Error::NotMultiplicative {
                a: base.generator(i).name.clone(),
                b: Monomial::from_exponents(rest).display(base).to_string(),
            }
        }
        _ => Error::InvalidInput(format!("value at `{a}` disagrees with the generator values")),
    }
}

/// `σ(a) = a + ε D(a)`.
pub fn derivation_to_section(d: &Derivation, module: &SquareZeroExtension) -> Result<Section> {
    d.source().ensure_same(module.base())?;
    d.target().ensure_same(module.table())?;
    let extension = module.shifted(d.bidegree())?;
    let base = module.base();
    let images = (0..base.len())
        .map(|i| {
            let img = d.image(i);
            if !module.is_module_element(img)? {
                return Err(Error::InvalidInput(format!(
                    "derivation value at `{}` is not a module element",
                    base.generator(i).name
                )));
            }
            let moved = module.transport(img, extension.table(), d.bidegree());
            Ok(&Element::gen(extension.table(), i) + &moved)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Section {
        module: module.clone(),
        map: AlgebraMap::new(base, extension.table(), images)?,
        extension,
        bidegree: d.bidegree(),
    })
}

/// `D(g) = ε⁻¹(σ(g) − g)`.
pub fn section_to_derivation(s: &Section) -> Result<Derivation> {
    let base = s.module.base();
    let images = (0..base.len())
        .map(|i| {
            let g = Element::gen(s.extension.table(), i);
            let delta = s.image(i) - &g;
            if !s.extension.is_module_element(&delta)? {
                return Err(Error::InvalidInput(format!(
                    "section does not split the projection at `{}`",
                    base.generator(i).name
                )));
            }
            Ok(s.extension.transport(&delta, s.module.table(), s.bidegree))
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(base, s.module.table(), s.bidegree, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Parity};

    fn line() -> (GeneratorTable, SquareZeroExtension) {
        let a = GeneratorTable::new(vec![Generator::even("x", 0)]).unwrap();
        let m = SquareZeroExtension::dual_numbers(&a, "eps").unwrap();
        (a, m)
    }

    #[test]
    fn module_products_vanish() {
        let (_, m) = line();
        let t = m.table();
        let u = parse("x*eps", t).unwrap();
        assert!(m.mul(&u, &u).unwrap().is_zero());
        let a = parse("x + 1", t).unwrap();
        assert_eq!(m.mul(&a, &a).unwrap(), parse("x^2 + 2*x + 1", t).unwrap());
        let z = m.zero_section(&parse("x^2", m.base()).unwrap()).unwrap();
        assert_eq!(m.projection(&z).unwrap(), parse("x^2", m.base()).unwrap());
    }

    #[test]
    fn partial_x_gives_first_order_shift() {
        let (a, m) = line();
        let d = Derivation::new(&a, m.table(), (0, Parity::Even), vec![parse("eps", m.table()).unwrap()]).unwrap();
        let s = derivation_to_section(&d, &m).unwrap();
        let t = s.extension().table();
        assert_eq!(s.image(0), &parse("x + eps", t).unwrap());
        let x = parse("x", &a).unwrap();
        let sx2 = s.apply(&x.pow(2)).unwrap();
        assert_eq!(sx2, parse("x^2 + 2*x*eps", t).unwrap());
        assert_eq!(sx2, s.extension().mul(s.image(0), s.image(0)).unwrap());
        assert_eq!(section_to_derivation(&s).unwrap(), d);
    }

    #[test]
    fn zero_derivation_is_zero_section() {
        let (a, m) = line();
        let d = Derivation::new(&a, m.table(), (0, Parity::Even), vec![Element::zero(m.table())]).unwrap();
        let s = derivation_to_section(&d, &m).unwrap();
        assert_eq!(s.image(0), &parse("x", s.extension().table()).unwrap());
    }

    #[test]
    fn odd_derivation_round_trips_with_signs() {
        let a = GeneratorTable::new(vec![Generator::odd("xi", 1), Generator::even("y", 1)]).unwrap();
        let m = SquareZeroExtension::new(&a, vec![Generator::odd("e", -1)]).unwrap();
        let t = m.table();
        let d = Derivation::new(&a, t, (-1, Parity::Odd), vec![parse("xi*e", t).unwrap(), parse("y*e", t).unwrap()])
            .unwrap();
        let s = derivation_to_section(&d, &m).unwrap();
        // σ(ξ) = ξ + ε·ξ e = ξ − ξ (εe), σ(y) = y + y (εe)
        assert_eq!(s.image(0), &parse("xi - xi*e", s.extension().table()).unwrap());
        assert_eq!(s.image(1), &parse("y + y*e", s.extension().table()).unwrap());
        assert_eq!(section_to_derivation(&s).unwrap(), d);
    }

    #[test]
    fn pointwise_non_leibniz_is_rejected() {
        let (a, m) = line();
        let t = m.table();
        let entries = vec![
            (parse("x", &a).unwrap(), parse("x + eps", t).unwrap()),
            (parse("x^2", &a).unwrap(), parse("x^2", t).unwrap()),
        ];
        let err = Section::from_pointwise(&m, (0, Parity::Even), &entries).unwrap_err();
        assert_eq!(err, Error::NotMultiplicative { a: "x".into(), b: "x".into() });
        let good = vec![
            (parse("x", &a).unwrap(), parse("x + eps", t).unwrap()),
            (parse("x^2", &a).unwrap(), parse("x^2 + 2*x*eps", t).unwrap()),
        ];
        assert!(Section::from_pointwise(&m, (0, Parity::Even), &good).is_ok());
    }
}
