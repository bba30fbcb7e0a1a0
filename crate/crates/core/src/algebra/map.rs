use std::collections::BTreeMap;

use num_traits::One;

use super::{Element, GeneratorTable, Monomial};
use crate::error::{Error, Result};

/// Parity-preserving substitution homomorphism between free algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap {
    source: GeneratorTable,
    target: GeneratorTable,
    images: Vec<Element>,
}

impl AlgebraMap {
    /// `images[i]` is the image of generator `i` of `source`; each must be
    /// zero or parity-homogeneous with the generator's parity.
    pub fn new(source: &GeneratorTable, target: &GeneratorTable, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator images, got {}",
                source.len(),
                images.len()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            img.table().ensure_same(target)?;
            if img.is_zero() {
                continue;
            }
            match img.parity() {
                Some(p) if p == g.parity => {}
                Some(_) => return Err(Error::ParityMismatch(g.name.clone())),
                None => return Err(Error::Inhomogeneous(g.name.clone())),
            }
        }
        Ok(AlgebraMap { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a map from `name → image` pairs; unnamed generators map to
    /// the same-named generator of the target.
    pub fn from_named<'a>(
        source: &GeneratorTable,
        target: &GeneratorTable,
        named: impl IntoIterator<Item = (&'a str, Element)>,
    ) -> Result<Self> {
        let mut given: BTreeMap<usize, Element> = BTreeMap::new();
        for (name, img) in named {
            given.insert(source.index_of(name)?, img);
        }
        let mut images = Vec::with_capacity(source.len());
        for (i, g) in source.generators().iter().enumerate() {
            match given.remove(&i) {
                Some(img) => images.push(img),
                None => images.push(Element::generator(target, &g.name)?),
            }
        }
        Self::new(source, target, images)
    }

    pub fn identity(table: &GeneratorTable) -> Self {
        let images = (0..table.len()).map(|i| Element::gen(table, i)).collect();
        AlgebraMap { source: table.clone(), target: table.clone(), images }
    }

    /// Inclusion of `source` into a table containing all of its generators.
    pub fn inclusion(source: &GeneratorTable, target: &GeneratorTable) -> Result<Self> {
        Self::from_named(source, target, std::iter::empty())
    }

    pub fn source(&self) -> &GeneratorTable {
        &self.source
    }

    pub fn target(&self) -> &GeneratorTable {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut acc = Element::one(&self.target);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                acc = &acc * &self.images[i].pow(e);
                if acc.is_zero() {
                    break;
                }
            }
        }
        acc
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        a.table().ensure_same(&self.source)?;
        let mut acc = Element::zero(&self.target);
        for (m, c) in a.terms() {
            let img = self.apply_monomial(m);
            acc = if c.is_one() { &acc + &img } else { &acc + &img.scale(c) };
        }
        Ok(acc)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        first.target.ensure_same(&self.source)?;
        let images = first.images.iter().map(|img| self.apply(img)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap { source: first.source.clone(), target: self.target.clone(), images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Generator};

    #[test]
    fn shift_map() {
        let t = GeneratorTable::new(vec![Generator::even("x", 0)]).unwrap();
        let f = AlgebraMap::from_named(&t, &t, [("x", parse("x + 1", &t).unwrap())]).unwrap();
        assert_eq!(f.apply(&parse("x^2", &t).unwrap()).unwrap(), parse("x^2 + 2*x + 1", &t).unwrap());
    }

    #[test]
    fn killing_an_odd_generator() {
        let t = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", 0)]).unwrap();
        let f = AlgebraMap::from_named(&t, &t, [("xi", Element::zero(&t))]).unwrap();
        let a = parse("x^2 + 3*x*xi - xi", &t).unwrap();
        assert_eq!(f.apply(&a).unwrap(), parse("x^2", &t).unwrap());
    }

    #[test]
    fn general_endomorphism_of_odd_line() {
        // θ ↦ α + aτ with α odd, a even: the general endomorphism shape
        let src = GeneratorTable::new(vec![Generator::odd("theta", 0)]).unwrap();
        let tgt =
            GeneratorTable::new(vec![Generator::odd("alpha", 0), Generator::even("a", 0), Generator::odd("tau", 0)])
                .unwrap();
        let f = AlgebraMap::from_named(&src, &tgt, [("theta", parse("alpha + a*tau", &tgt).unwrap())]);
        assert!(f.is_ok());
        let bad = AlgebraMap::from_named(&src, &tgt, [("theta", parse("a", &tgt).unwrap())]);
        assert_eq!(bad.unwrap_err(), Error::ParityMismatch("theta".into()));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let t = GeneratorTable::new(vec![Generator::even("x", 0), Generator::even("y", 0)]).unwrap();
        let f = AlgebraMap::from_named(&t, &t, [("x", parse("x + y", &t).unwrap())]).unwrap();
        let g = AlgebraMap::from_named(&t, &t, [("y", parse("2*x", &t).unwrap())]).unwrap();
        let a = parse("x^2*y - y", &t).unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.apply(&a).unwrap(), g.apply(&f.apply(&a).unwrap()).unwrap());
    }
}
