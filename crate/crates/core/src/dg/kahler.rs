use super::{Derivation, SquareZeroExtension};
use crate::algebra::{Element, Generator, GeneratorTable, Monomial, Parity};
use crate::error::{Error, Result};
use crate::scalar;

/// `Ω¹(A)` for free `A`: the free `A`-module on `{dg}`, with `dg` of the
/// same bidegree as `g`, and the universal (even) derivation `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerModule {
    module: SquareZeroExtension,
    universal: Derivation,
}

pub fn kahler(base: &GeneratorTable) -> Result<KahlerModule> {
    let basis = base.generators().iter().map(|g| Generator::new(format!("d{}", g.name), g.weight, g.parity)).collect();
    let module = SquareZeroExtension::new(base, basis)?;
    let n = base.len();
    let images = (0..n).map(|i| Element::gen(module.table(), n + i)).collect();
    let universal = Derivation::new(base, module.table(), (0, Parity::Even), images)?;
    Ok(KahlerModule { module, universal })
}

impl KahlerModule {
    pub fn base(&self) -> &GeneratorTable {
        self.module.base()
    }

    /// Table holding `A` followed by the symbols `dg`.
    pub fn table(&self) -> &GeneratorTable {
        self.module.table()
    }

    pub fn module(&self) -> &SquareZeroExtension {
        &self.module
    }

    pub fn universal(&self) -> &Derivation {
        &self.universal
    }

    pub fn d(&self, a: &Element) -> Result<Element> {
        self.universal.apply(a)
    }

    /// The unique module map `f_X` with `f_X ∘ d = X`.
    pub fn universal_factorization(&self, x: &Derivation) -> Result<ModuleMap> {
        x.source().ensure_same(self.base())?;
        Ok(ModuleMap {
            source: self.module.clone(),
            target: x.target().clone(),
            parity: x.parity(),
            images: x.images().to_vec(),
        })
    }
}

/// Module map out of a free module, of parity `parity`, given by its values
/// on the basis: `f(c·e) = (−1)^{|c||f|} c·f(e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: SquareZeroExtension,
    target: GeneratorTable,
    parity: Parity,
    images: Vec<Element>,
}

impl ModuleMap {
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, m: &Element) -> Result<Element> {
        if !self.source.is_module_element(m)? {
            return Err(Error::InvalidInput(format!("`{m}` is not a module element")));
        }
        let base = self.source.base();
        let n = base.len();
        let mut acc = Element::zero(&self.target);
        for (mono, c) in m.terms() {
            let j = mono.exponents()[n..].iter().position(|&e| e == 1).unwrap();
            let coeff = Monomial::from_exponents(mono.exponents()[..n].to_vec());
            let negative = coeff.parity(base).koszul(self.parity);
            let c = Element::monomial(base, coeff, scalar::sign(negative) * c).embed(&self.target)?;
            acc = &acc + &(&c * &self.images[j]);
        }
        Ok(acc)
    }
}
