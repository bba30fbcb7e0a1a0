//! Differential forms `Ω(A)` on a free algebra and their Cartan calculus,
//! formal and Berezin integration, and cylinder homotopies.

mod homotopy;
mod integral;

use serde::Serialize;

use crate::algebra::{Element, Generator, GeneratorTable, Monomial, Parity};
use crate::dg::{commutator_on, Derivation, DgAlgebra};
use crate::error::{Error, Result};
use crate::scalar;

pub use homotopy::{chain_homotopy, cylinder, cylinder_with_names, ChainHomotopy, Cylinder};
pub use integral::{antiderivative, berezin, integrate};

/// `Ω(A)`: the generators of `A` followed by one form generator `d<name>`
/// of bidegree `(w + 1, p + 1)` per base generator.
#[derive(Clone, Debug, PartialEq)]
pub struct FormsAlgebra {
    base: DgAlgebra,
    table: GeneratorTable,
    de_rham: Derivation,
    internal: Derivation,
}

/// Builds `Ω(A)` and lifts the differential of `A` to `Ω(A)`.
pub fn omega(base: &DgAlgebra) -> Result<FormsAlgebra> {
    let bt = base.table();
    let n = bt.len();
    let forms: Vec<Generator> =
        bt.generators().iter().map(|g| Generator::new(format!("d{}", g.name), g.weight + 1, g.parity.flip())).collect();
    let table = bt.extended(forms).map_err(|e| match e {
        Error::DuplicateGenerator(name) => Error::ReservedName(name),
        other => other,
    })?;
    let mut images: Vec<Element> = (0..n).map(|i| Element::gen(&table, n + i)).collect();
    images.extend((0..n).map(|_| Element::zero(&table)));
    let de_rham = Derivation::new(&table, &table, (1, Parity::Odd), images)?;
    let mut forms = FormsAlgebra {
        base: base.clone(),
        table: table.clone(),
        de_rham,
        internal: Derivation::zero(&table, (1, Parity::Odd)),
    };
    // D_int = −L_{d_A}, so that D_int(g) = d_A(g) and D_int(dg) = −d_dR(d_A g)
    let lie = forms.lie_derivative(base.differential())?;
    forms.internal = lie.scale(&scalar::int(-1));
    Ok(forms)
}

pub fn omega_of_table(table: &GeneratorTable) -> Result<FormsAlgebra> {
    omega(&DgAlgebra::trivial(table))
}

impl FormsAlgebra {
    pub fn base(&self) -> &DgAlgebra {
        &self.base
    }

    pub fn base_table(&self) -> &GeneratorTable {
        self.base.table()
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn de_rham(&self) -> &Derivation {
        &self.de_rham
    }

    /// The lift of the base differential (zero when `A` has none).
    pub fn internal(&self) -> &Derivation {
        &self.internal
    }

    /// `(Ω(A), d_dR)`.
    pub fn de_rham_algebra(&self) -> DgAlgebra {
        DgAlgebra::from_derivation(self.de_rham.clone()).expect("de Rham differential squares to zero")
    }

    /// `(Ω(A), d_dR + D_int)`.
    pub fn total_algebra(&self) -> Result<DgAlgebra> {
        DgAlgebra::from_derivation(self.de_rham.add(&self.internal)?)
    }

    /// Form-degree Euler derivation: `ε(g) = 0`, `ε(dg) = dg`.
    pub fn form_euler(&self) -> Derivation {
        let n = self.base_table().len();
        let images =
            (0..2 * n).map(|i| if i < n { Element::zero(&self.table) } else { Element::gen(&self.table, i) }).collect();
        Derivation::new(&self.table, &self.table, (0, Parity::Even), images).expect("form Euler is homogeneous")
    }

    /// Number of form generators in a monomial.
    pub fn form_degree(&self, m: &Monomial) -> u32 {
        m.exponents()[self.base_table().len()..].iter().sum()
    }

    pub fn include(&self, a: &Element) -> Result<Element> {
        a.table().ensure_same(self.base_table())?;
        a.embed(&self.table)
    }

    /// Generator `d<name>` of `Ω(A)`.
    pub fn d_of(&self, name: &str) -> Result<Element> {
        let i = self.base_table().index_of(name)?;
        Ok(Element::gen(&self.table, self.base_table().len() + i))
    }

    fn base_derivation<'a>(&self, d: &'a Derivation) -> Result<&'a Derivation> {
        if !d.is_endomorphism() {
            return Err(Error::InvalidInput("expected a derivation of the base algebra".into()));
        }
        d.source().ensure_same(self.base_table())?;
        Ok(d)
    }

    /// `ι_D`: `ι_D(g) = 0`, `ι_D(dg) = D(g)`.
    pub fn contraction(&self, d: &Derivation) -> Result<Derivation> {
        let d = self.base_derivation(d)?;
        let n = self.base_table().len();
        let mut images: Vec<Element> = (0..n).map(|_| Element::zero(&self.table)).collect();
        for img in d.images() {
            images.push(img.embed(&self.table)?);
        }
        let (k, p) = d.bidegree();
        Derivation::new(&self.table, &self.table, (k - 1, p.flip()), images)
    }

    /// `L_D = [d_dR, ι_D]`.
    pub fn lie_derivative(&self, d: &Derivation) -> Result<Derivation> {
        self.de_rham.bracket(&self.contraction(d)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanReport {
    pub relations: Vec<RelationCheck>,
}

impl CartanReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

/// Evaluates the six Cartan relations for `D`, `D′` as operator identities
/// on every generator of `Ω(A)` and on each of `samples`.
pub fn cartan_relations_check(
    forms: &FormsAlgebra,
    d1: &Derivation,
    d2: &Derivation,
    samples: &[Element],
) -> Result<CartanReport> {
    let iota1 = forms.contraction(d1)?;
    let iota2 = forms.contraction(d2)?;
    let lie1 = forms.lie_derivative(d1)?;
    let lie2 = forms.lie_derivative(d2)?;
    let br = d1.bracket(d2)?;
    let iota_br = forms.contraction(&br)?;
    let lie_br = forms.lie_derivative(&br)?;
    let eps = forms.form_euler();
    let dd = forms.de_rham();

    let table = forms.table();
    let mut points: Vec<Element> = (0..table.len()).map(|i| Element::gen(table, i)).collect();
    for s in samples {
        s.table().ensure_same(table)?;
        points.push(s.clone());
    }

    type Side<'a> = Box<dyn Fn(&Element) -> Result<Element> + 'a>;
    let relations: Vec<(&str, Side, Side)> = vec![
        ("[d, i_D] = L_D", Box::new(|a| commutator_on(dd, &iota1, a)), Box::new(|a| lie1.apply(a))),
        ("[L_D, i_D'] = i_[D,D']", Box::new(|a| commutator_on(&lie1, &iota2, a)), Box::new(|a| iota_br.apply(a))),
        ("[L_D, L_D'] = L_[D,D']", Box::new(|a| commutator_on(&lie1, &lie2, a)), Box::new(|a| lie_br.apply(a))),
        ("[i_D, i_D'] = 0", Box::new(|a| commutator_on(&iota1, &iota2, a)), Box::new(|_| Ok(Element::zero(table)))),
        ("[eps, i_D] = -i_D", Box::new(|a| commutator_on(&eps, &iota1, a)), Box::new(|a| Ok(-iota1.apply(a)?))),
        ("[eps, L_D] = 0", Box::new(|a| commutator_on(&eps, &lie1, a)), Box::new(|_| Ok(Element::zero(table)))),
    ];

    let mut out = Vec::new();
    for (name, lhs, rhs) in relations {
        let mut witness = None;
        for p in &points {
            let (l, r) = (lhs(p)?, rhs(p)?);
            if l != r {
                witness = Some(Witness { element: p.to_string(), lhs: l.to_string(), rhs: r.to_string() });
                break;
            }
        }
        out.push(RelationCheck {
            relation: name.to_string(),
            passed: witness.is_none(),
            checked: points.len(),
            witness,
        });
    }
    Ok(CartanReport { relations: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::dg::validate_differential;
    use crate::random;

    fn line() -> FormsAlgebra {
        omega_of_table(&GeneratorTable::new(vec![Generator::even("x", 0)]).unwrap()).unwrap()
    }

    #[test]
    fn forms_on_line_and_odd_line() {
        let f = line();
        let t = f.table();
        assert_eq!(t.generator(1).name, "dx");
        assert_eq!(t.generator(1).bidegree(), (1, Parity::Odd));
        assert_eq!(f.de_rham().apply(&parse("x^2", t).unwrap()).unwrap(), parse("2*x*dx", t).unwrap());

        let g = omega_of_table(&GeneratorTable::new(vec![Generator::odd("xi", 0)]).unwrap()).unwrap();
        assert_eq!(g.table().generator(1).bidegree(), (1, Parity::Even));
        let e = parse("dxi^5", g.table()).unwrap();
        assert!(!e.is_zero());

        let q = omega_of_table(&GeneratorTable::empty()).unwrap();
        assert!(q.table().is_empty());
    }

    #[test]
    fn lie_derivative_of_x_dx() {
        let f = line();
        let dx = Derivation::partial(f.base_table(), "x").unwrap();
        let l = f.lie_derivative(&dx).unwrap();
        let t = f.table();
        assert_eq!(l.apply(&parse("x*dx", t).unwrap()).unwrap(), parse("dx", t).unwrap());
        let i = f.contraction(&dx).unwrap();
        assert!(i.apply(&parse("x^4", t).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn form_euler_counts_form_degree() {
        let f = line();
        let m = parse("x^3*dx", f.table()).unwrap();
        assert_eq!(f.form_euler().apply(&m).unwrap(), m);
    }

    #[test]
    fn internal_lift_matches_base_differential() {
        let t = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", -1)]).unwrap();
        let a = validate_differential(&t, [("xi", parse("x", &t).unwrap())]).unwrap();
        let f = omega(&a).unwrap();
        let ft = f.table();
        let d_int = f.internal();
        assert_eq!(d_int.apply(&parse("xi", ft).unwrap()).unwrap(), parse("x", ft).unwrap());
        assert_eq!(d_int.apply(&parse("dxi", ft).unwrap()).unwrap(), parse("-1 * dx", ft).unwrap());
        let total = f.total_algebra().unwrap();
        assert_eq!(total.table(), ft);
    }

    #[test]
    fn cartan_on_line_and_mixed_parity() {
        let f = line();
        let dx = Derivation::partial(f.base_table(), "x").unwrap();
        assert!(cartan_relations_check(&f, &dx, &dx, &[]).unwrap().passed());

        let bt = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", 1)]).unwrap();
        let f = omega_of_table(&bt).unwrap();
        let mut r = random::rng(11);
        let d_even = random::derivation(&mut r, &bt, (0, Parity::Even), 3);
        let d_odd = random::derivation(&mut r, &bt, (1, Parity::Odd), 3);
        let samples: Vec<Element> = (0..10).map(|_| random::element(&mut r, f.table(), 3, 4)).collect();
        let report = cartan_relations_check(&f, &d_even, &d_odd, &samples).unwrap();
        assert!(report.passed(), "{report:?}");
        let zero = Derivation::zero(&bt, (0, Parity::Even));
        assert!(cartan_relations_check(&f, &zero, &zero, &samples).unwrap().passed());
    }

    #[test]
    fn odd_lie_derivative_picks_up_a_sign() {
        // With ι_D(dg) = D(g) and L_D = [d, ι_D], [L_D, ι_D'] = (−1)^{|D|} ι_{[D,D']}.
        let bt = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", 1)]).unwrap();
        let f = omega_of_table(&bt).unwrap();
        let d_odd = Derivation::from_named(&bt, (1, Parity::Odd), [("x", parse("x*xi", &bt).unwrap())]).unwrap();
        let d_even = Derivation::partial(&bt, "x").unwrap();
        let br = d_odd.bracket(&d_even).unwrap();
        assert!(!br.is_zero());
        let lhs =
            commutator_on(&f.lie_derivative(&d_odd).unwrap(), &f.contraction(&d_even).unwrap(), &f.d_of("x").unwrap())
                .unwrap();
        let rhs = f.contraction(&br).unwrap().apply(&f.d_of("x").unwrap()).unwrap();
        assert!(!rhs.is_zero());
        assert_eq!(lhs, -rhs);
        let report = cartan_relations_check(&f, &d_odd, &d_even, &[]).unwrap();
        let failed: Vec<_> = report.relations.iter().filter(|r| !r.passed).map(|r| r.relation.as_str()).collect();
        assert_eq!(failed, ["[L_D, i_D'] = i_[D,D']"]);
    }
}
