use serde::Serialize;

use crate::algebra::{AlgebraMap, Element};
use crate::dg::DgAlgebra;
use crate::error::Result;
use crate::forms::{cylinder, Cylinder, Witness};
use crate::random::{self, SampleRng};
use crate::scalar;

/// `A → A[t, dt] → A × A`, the second map recorded as its two components.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub cylinder: Cylinder,
    pub inclusion: AlgebraMap,
    pub p0: AlgebraMap,
    pub p1: AlgebraMap,
}

pub fn path_object(a: &DgAlgebra) -> Result<PathObject> {
    let cylinder = cylinder(a)?;
    let inclusion = AlgebraMap::inclusion(a.table(), cylinder.table())?;
    let p0 = cylinder.evaluation(&scalar::int(0))?;
    let p1 = cylinder.evaluation(&scalar::int(1))?;
    Ok(PathObject { cylinder, inclusion, p0, p1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathObjectReport {
    pub generators: Vec<String>,
    pub diagonal: bool,
    pub witness_pairs: usize,
    pub witness_passed: usize,
    pub homotopy_samples: usize,
    pub homotopy_passed: usize,
    pub failures: Vec<Witness>,
}

impl PathObjectReport {
    pub fn passed(&self) -> bool {
        self.diagonal && self.witness_passed == self.witness_pairs && self.homotopy_passed == self.homotopy_samples
    }
}

impl PathObject {
    pub fn base(&self) -> &DgAlgebra {
        self.cylinder.base()
    }

    /// `q(w) = (p₀ w, p₁ w)`.
    pub fn q(&self, w: &Element) -> Result<(Element, Element)> {
        Ok((self.p0.apply(w)?, self.p1.apply(w)?))
    }

    /// `a₀(1−t) + a₁t`, a preimage of `(a₀, a₁)` under `q`.
    pub fn witness(&self, a0: &Element, a1: &Element) -> Result<Element> {
        let t = self.cylinder.t();
        let one_minus_t = &Element::one(self.cylinder.table()) - &t;
        let b0 = self.cylinder.include(a0)?;
        let b1 = self.cylinder.include(a1)?;
        Ok(&(&b0 * &one_minus_t) + &(&b1 * &t))
    }

    /// Checks `q∘j = diagonal` on generators, the surjectivity witness on
    /// `pairs` random pairs and the contraction identity on `samples`
    /// random elements of the cylinder.
    pub fn check(&self, rng: &mut SampleRng, pairs: usize, samples: usize) -> Result<PathObjectReport> {
        let base = self.base().table().clone();
        let mut diagonal = true;
        for i in 0..base.len() {
            let g = Element::gen(&base, i);
            let (x, y) = self.q(&self.inclusion.apply(&g)?)?;
            diagonal &= x == g && y == g;
        }
        let mut failures = Vec::new();
        let mut witness_passed = 0;
        for _ in 0..pairs {
            let a0 = random::element(rng, &base, 3, 4);
            let a1 = random::element(rng, &base, 3, 4);
            let w = self.witness(&a0, &a1)?;
            let (x, y) = self.q(&w)?;
            if x == a0 && y == a1 {
                witness_passed += 1;
            } else if failures.len() < 3 {
                failures.push(Witness {
                    element: w.to_string(),
                    lhs: format!("({x}, {y})"),
                    rhs: format!("({a0}, {a1})"),
                });
            }
        }
        let mut homotopy_passed = 0;
        for _ in 0..samples {
            let w = random::element(rng, self.cylinder.table(), 4, 5);
            match self.cylinder.verify_contraction(std::slice::from_ref(&w))? {
                None => homotopy_passed += 1,
                Some(witness) if failures.len() < 3 => failures.push(witness),
                Some(_) => {}
            }
        }
        Ok(PathObjectReport {
            generators: self.cylinder.table().generators().iter().map(|g| g.name.clone()).collect(),
            diagonal,
            witness_pairs: pairs,
            witness_passed,
            homotopy_samples: samples,
            homotopy_passed,
            failures,
        })
    }
}
