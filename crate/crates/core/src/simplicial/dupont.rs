use super::SimplexForms;
use crate::algebra::{AlgebraMap, Element};
use crate::error::Result;
use crate::forms::{chain_homotopy, cylinder_with_names, ChainHomotopy};
use crate::scalar;

/// Global sign of the Dupont operator
/// `s = ±Σ_k (−1)^k Σ_{i₀<⋯<i_k} ω_{i₀…i_k} · h^{i_k}∘⋯∘h^{i₀}`.
pub const DUPONT_SIGN: i64 = 1;

/// Dupont's contraction on `Ω_n(B)`, built from the dilation homotopies
/// `hⁱ` towards each vertex.
#[derive(Clone, Debug)]
pub struct DupontOperator {
    forms: SimplexForms,
    dilations: Vec<ChainHomotopy>,
}

impl DupontOperator {
    pub fn new(forms: &SimplexForms) -> Result<Self> {
        let taken = |name: &str| forms.table().contains(name);
        let mut k = 0;
        let (u, du) = loop {
            let (u, du) =
                if k == 0 { ("u".to_string(), "du".to_string()) } else { (format!("u{k}"), format!("du{k}")) };
            if !taken(&u) && !taken(&du) {
                break (u, du);
            }
            k += 1;
        };
        let cyl = cylinder_with_names(forms.algebra(), &u, &du)?;
        let ct = cyl.table().clone();
        let lift = |e: &Element| e.embed(&ct);
        let (uu, duu) = (cyl.t(), cyl.dt());
        let b = forms.coefficients().table().len();
        let n = forms.dim();
        let mut dilations = Vec::with_capacity(n + 1);
        for i in 0..=n {
            // tʲ ↦ u tʲ + (1 − u) δᵢⱼ,  dtʲ ↦ du (tʲ − δᵢⱼ) + u dtʲ
            let mut images: Vec<Element> = (0..b).map(|j| Element::gen(&ct, j)).collect();
            let mut dt_images = Vec::new();
            for j in 1..=n {
                let tj = lift(&forms.t(j))?;
                let dtj = lift(&forms.dt(j))?;
                let delta = Element::constant(&ct, scalar::int((i == j) as i64));
                images.push(&(&uu * &tj) + &(&(&Element::one(&ct) - &uu) * &delta));
                dt_images.push(&(&duu * &(&tj - &delta)) + &(&uu * &dtj));
            }
            images.extend(dt_images);
            let phi = AlgebraMap::new(forms.table(), &ct, images)?;
            dilations.push(chain_homotopy(forms.algebra(), &cyl, &phi)?);
        }
        Ok(DupontOperator { forms: forms.clone(), dilations })
    }

    pub fn forms(&self) -> &SimplexForms {
        &self.forms
    }

    /// `hⁱ`, with `d hⁱ + hⁱ d = id − evᵢ`.
    pub fn dilation(&self, i: usize) -> &ChainHomotopy {
        &self.dilations[i]
    }

    pub fn apply(&self, w: &Element) -> Result<Element> {
        let n = self.forms.dim();
        let mut out = Element::zero(self.forms.table());
        // nested[I] = h^{i_k}(⋯ h^{i₀}(ω)), extended one index at a time
        let mut layer: Vec<(Vec<usize>, Element)> = vec![(Vec::new(), w.clone())];
        for k in 0..n {
            let mut next = Vec::new();
            for (tuple, value) in &layer {
                let start = tuple.last().map_or(0, |&x| x + 1);
                for i in start..=n {
                    let v = self.dilations[i].apply(value)?;
                    if v.is_zero() {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t.push(i);
                    let term = &self.forms.whitney_unchecked(&t) * &v;
                    out = if k % 2 == 1 { &out - &term } else { &out + &term };
                    next.push((t, v));
                }
            }
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        Ok(out.scale(&scalar::int(DUPONT_SIGN)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::simplicial::omega_n;

    #[test]
    fn interval_hand_values() {
        let o = omega_n(1);
        let s = DupontOperator::new(&o).unwrap();
        let t = o.table();
        let p = |x: &str| parse(x, t).unwrap();
        assert!(s.apply(&p("dt1")).unwrap().is_zero());
        assert!(s.apply(&p("t1^3")).unwrap().is_zero());
        let w = p("2*t1*dt1");
        assert_eq!(s.apply(&w).unwrap(), &p("t1^2") - &p("t1"));
    }

    fn all_monomials(o: &SimplexForms, cap: u32) -> Vec<Element> {
        let t = o.table();
        let mut out = Vec::new();
        for w in 0..=o.dim() as i64 {
            for p in [crate::algebra::Parity::Even, crate::algebra::Parity::Odd] {
                for m in crate::dg::monomial_basis(t, w, p, cap) {
                    out.push(Element::monomial(t, m, scalar::int(1)));
                }
            }
        }
        out
    }

    #[test]
    fn homotopy_identities_low_dimension() {
        for n in 1..=2 {
            let o = omega_n(n);
            let s = DupontOperator::new(&o).unwrap();
            for w in all_monomials(&o, 3) {
                let sw = s.apply(&w).unwrap();
                let lhs = &o.d(&sw).unwrap() + &s.apply(&o.d(&w).unwrap()).unwrap();
                let rhs = &w - &o.whitney_projection(&w).unwrap();
                assert_eq!(lhs, rhs, "n={n} w={w}");
                assert!(s.apply(&sw).unwrap().is_zero(), "s² at {w}");
            }
        }
    }
}
