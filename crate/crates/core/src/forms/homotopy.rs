use super::integral::antiderivative;
use super::Witness;
use crate::algebra::{AlgebraMap, Element, Generator, GeneratorTable};
use crate::dg::{Derivation, DgAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// `A[t, dt]` with `t` even of weight 0, `dt` odd of weight 1 and total
/// differential `d_A + dt·∂/∂t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cylinder {
    base: DgAlgebra,
    algebra: DgAlgebra,
    t: usize,
    dt: usize,
}

pub fn cylinder(base: &DgAlgebra) -> Result<Cylinder> {
    cylinder_with_names(base, "t", "dt")
}

pub fn cylinder_with_names(base: &DgAlgebra, t: &str, dt: &str) -> Result<Cylinder> {
    let bt = base.table();
    for name in [t, dt] {
        if bt.contains(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
    }
    let n = bt.len();
    let table = bt.extended(vec![Generator::even(t, 0), Generator::odd(dt, 1)])?;
    let mut images = base.differential().images().iter().map(|e| e.embed(&table)).collect::<Result<Vec<_>>>()?;
    images.push(Element::gen(&table, n + 1));
    images.push(Element::zero(&table));
    let algebra = DgAlgebra::new(&table, images)?;
    Ok(Cylinder { base: base.clone(), algebra, t: n, dt: n + 1 })
}

impl Cylinder {
    pub fn base(&self) -> &DgAlgebra {
        &self.base
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn table(&self) -> &GeneratorTable {
        self.algebra.table()
    }

    pub fn t(&self) -> Element {
        Element::gen(self.table(), self.t)
    }

    pub fn dt(&self) -> Element {
        Element::gen(self.table(), self.dt)
    }

    pub fn t_name(&self) -> &str {
        &self.table().generator(self.t).name
    }

    /// `ω = α + dt·β` with `α`, `β` free of `dt`.
    pub fn decompose(&self, w: &Element) -> Result<(Element, Element)> {
        w.table().ensure_same(self.table())?;
        let beta = w.partial(self.dt);
        let alpha = w.filter(|m| m.exponent(self.dt) == 0);
        Ok((alpha, beta))
    }

    pub fn include(&self, a: &Element) -> Result<Element> {
        a.table().ensure_same(self.base.table())?;
        a.embed(self.table())
    }

    /// `t ↦ s`, `dt ↦ 0`, as a map onto `A`.
    pub fn evaluation(&self, s: &Scalar) -> Result<AlgebraMap> {
        let bt = self.base.table();
        let mut images: Vec<Element> = (0..bt.len()).map(|i| Element::gen(bt, i)).collect();
        images.push(Element::constant(bt, s.clone()));
        images.push(Element::zero(bt));
        AlgebraMap::new(self.table(), bt, images)
    }

    pub fn evaluate(&self, w: &Element, s: &Scalar) -> Result<Element> {
        self.evaluation(s)?.apply(w)
    }

    /// `h(α + dt·β) = ∫₀ᵗ β`.
    pub fn contraction(&self, w: &Element) -> Result<Element> {
        let (_, beta) = self.decompose(w)?;
        antiderivative(&beta, self.t_name())
    }

    /// First failure of `D h + h D = id − j p₀` among `samples`, if any.
    pub fn verify_contraction(&self, samples: &[Element]) -> Result<Option<Witness>> {
        let zero = scalar::int(0);
        for w in samples {
            let dh = self.algebra.d(&self.contraction(w)?)?;
            let hd = self.contraction(&self.algebra.d(w)?)?;
            let lhs = &dh + &hd;
            let rhs = w - &self.include(&self.evaluate(w, &zero)?)?;
            if lhs != rhs {
                return Ok(Some(Witness { element: w.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() }));
            }
        }
        Ok(None)
    }

    /// `ι_e = t·∂/∂(dt)` for the Euler field `e = t·∂/∂t` of the interval.
    pub fn interval_contraction(&self) -> Derivation {
        let table = self.table();
        let mut images: Vec<Element> = (0..table.len()).map(|_| Element::zero(table)).collect();
        images[self.dt] = self.t();
        Derivation::new(table, table, (-1, crate::algebra::Parity::Odd), images).expect("t has bidegree (0, even)")
    }
}

/// `h = ∫₀¹ ∘ Φ` for a dg map `Φ: A₁ → A₂[t, dt]`, with its endpoint maps.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    source: DgAlgebra,
    cylinder: Cylinder,
    phi: AlgebraMap,
    phi0: AlgebraMap,
    phi1: AlgebraMap,
}

pub fn chain_homotopy(source: &DgAlgebra, cylinder: &Cylinder, phi: &AlgebraMap) -> Result<ChainHomotopy> {
    phi.source().ensure_same(source.table())?;
    phi.target().ensure_same(cylinder.table())?;
    for (i, g) in source.table().generators().iter().enumerate() {
        let x = Element::gen(source.table(), i);
        let lhs = phi.apply(&source.d(&x)?)?;
        let rhs = cylinder.algebra().d(phi.image(i))?;
        if lhs != rhs {
            return Err(Error::NotChainMap {
                generator: g.name.clone(),
                detail: format!("Φ(d {}) = {lhs} but D Φ({}) = {rhs}", g.name, g.name),
            });
        }
    }
    let phi0 = cylinder.evaluation(&scalar::int(0))?.compose(phi)?;
    let phi1 = cylinder.evaluation(&scalar::int(1))?.compose(phi)?;
    Ok(ChainHomotopy { source: source.clone(), cylinder: cylinder.clone(), phi: phi.clone(), phi0, phi1 })
}

impl ChainHomotopy {
    pub fn phi0(&self) -> &AlgebraMap {
        &self.phi0
    }

    pub fn phi1(&self) -> &AlgebraMap {
        &self.phi1
    }

    pub fn apply(&self, w: &Element) -> Result<Element> {
        let c = &self.cylinder;
        let (_, beta) = c.decompose(&self.phi.apply(w)?)?;
        let prim = antiderivative(&beta, c.t_name())?;
        c.evaluate(&prim, &scalar::int(1))
    }

    /// First failure of `h d₁ + d₂ h = φ₁ − φ₀` on the generators and `samples`.
    pub fn verify(&self, samples: &[Element]) -> Result<Option<Witness>> {
        let st = self.source.table();
        let gens = (0..st.len()).map(|i| Element::gen(st, i));
        for w in gens.chain(samples.iter().cloned()) {
            let lhs = &self.apply(&self.source.d(&w)?)? + &self.cylinder.base().d(&self.apply(&w)?)?;
            let rhs = &self.phi1.apply(&w)? - &self.phi0.apply(&w)?;
            if lhs != rhs {
                return Ok(Some(Witness { element: w.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Parity};
    use crate::dg::commutator_on;
    use crate::forms::omega_of_table;
    use crate::random;

    #[test]
    fn contraction_values() {
        let c = cylinder(&DgAlgebra::ground()).unwrap();
        let t = c.table();
        let p = |s: &str| parse(s, t).unwrap();
        assert_eq!(c.contraction(&p("dt")).unwrap(), p("t"));
        assert!(c.contraction(&p("t^3 + 2")).unwrap().is_zero());
        assert_eq!(c.contraction(&p("t*dt")).unwrap(), p("1/2*t^2"));
        let w = p("t*dt");
        let d = c.algebra();
        let lhs = &d.d(&c.contraction(&w).unwrap()).unwrap() + &c.contraction(&d.d(&w).unwrap()).unwrap();
        assert_eq!(lhs, w);
        assert!(c.evaluate(&w, &scalar::int(0)).unwrap().is_zero());
    }

    #[test]
    fn contraction_identity_over_nontrivial_base() {
        let bt = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", -1)]).unwrap();
        let a = DgAlgebra::from_named(&bt, [("xi", parse("x", &bt).unwrap())]).unwrap();
        let c = cylinder(&a).unwrap();
        let mut r = random::rng(5);
        let samples: Vec<Element> = (0..30).map(|_| random::element(&mut r, c.table(), 4, 5)).collect();
        assert_eq!(c.verify_contraction(&samples).unwrap(), None);
    }

    #[test]
    fn name_collision_is_rejected() {
        let bt = GeneratorTable::new(vec![Generator::even("t", 0)]).unwrap();
        assert!(cylinder(&DgAlgebra::trivial(&bt)).is_err());
        assert!(cylinder_with_names(&DgAlgebra::trivial(&bt), "s", "ds").is_ok());
    }

    #[test]
    fn eigenspace_cross_check() {
        let c = cylinder(&DgAlgebra::ground()).unwrap();
        let t = c.table();
        let iota = c.interval_contraction();
        let d = c.algebra().differential();
        for n in 1..5u32 {
            let w = parse(&format!("t^{n}"), t).unwrap();
            assert_eq!(commutator_on(d, &iota, &w).unwrap(), w.scale(&scalar::int(n as i64)));
            let v = parse(&format!("t^{}*dt", n - 1), t).unwrap();
            assert_eq!(commutator_on(d, &iota, &v).unwrap(), v.scale(&scalar::int(n as i64)));
        }
        assert_eq!(iota.bidegree(), (-1, Parity::Odd));
    }

    #[test]
    fn scaling_homotopy_on_line_forms() {
        let forms = omega_of_table(&GeneratorTable::new(vec![Generator::even("x", 0)]).unwrap()).unwrap();
        let a = forms.de_rham_algebra();
        let c = cylinder(&a).unwrap();
        let ct = c.table();
        let phi = AlgebraMap::from_named(
            a.table(),
            ct,
            [("x", parse("t*x", ct).unwrap()), ("dx", parse("t*dx + x*dt", ct).unwrap())],
        )
        .unwrap();
        let h = chain_homotopy(&a, &c, &phi).unwrap();
        let mut r = random::rng(9);
        let samples: Vec<Element> = (0..20).map(|_| random::element(&mut r, a.table(), 4, 4)).collect();
        assert_eq!(h.verify(&samples).unwrap(), None);
        let at = a.table();
        assert_eq!(h.apply(&parse("dx", at).unwrap()).unwrap(), parse("x", at).unwrap());
        assert_eq!(h.phi0().apply(&parse("x^2 + 3", at).unwrap()).unwrap(), parse("3", at).unwrap());
    }

    #[test]
    fn comultiplication_homotopy() {
        let s = omega_of_table(&GeneratorTable::new(vec![Generator::even("s", 0)]).unwrap()).unwrap();
        let u = omega_of_table(&GeneratorTable::new(vec![Generator::even("u", 0)]).unwrap()).unwrap();
        let (a1, a2) = (u.de_rham_algebra(), s.de_rham_algebra());
        let c = cylinder(&a2).unwrap();
        let ct = c.table();
        let phi = AlgebraMap::new(a1.table(), ct, vec![parse("s*t", ct).unwrap(), parse("t*ds + s*dt", ct).unwrap()])
            .unwrap();
        let h = chain_homotopy(&a1, &c, &phi).unwrap();
        assert_eq!(h.verify(&[parse("u^3*du", a1.table()).unwrap()]).unwrap(), None);
        assert!(h.phi0().image(0).is_zero());
        assert_eq!(h.phi1().image(0), &parse("s", a2.table()).unwrap());
    }

    #[test]
    fn constant_homotopy_is_zero_and_non_chain_maps_are_rejected() {
        let forms = omega_of_table(&GeneratorTable::new(vec![Generator::even("x", 0)]).unwrap()).unwrap();
        let a = forms.de_rham_algebra();
        let c = cylinder(&a).unwrap();
        let j = AlgebraMap::inclusion(a.table(), c.table()).unwrap();
        let h = chain_homotopy(&a, &c, &j).unwrap();
        assert!(h.apply(&parse("x*dx", a.table()).unwrap()).unwrap().is_zero());
        let bad = AlgebraMap::from_named(a.table(), c.table(), [("x", parse("t*x", c.table()).unwrap())]).unwrap();
        assert!(matches!(chain_homotopy(&a, &c, &bad), Err(Error::NotChainMap { .. })));
    }
}
