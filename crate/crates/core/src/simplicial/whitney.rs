use num_traits::One;

use super::SimplexForms;
use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Behavior of `I_{i₀…i_k}` on forms that are not of pure form-degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralMode {
    /// Mixed form-degrees are an error.
    Strict,
    /// Only the degree-`k` component is integrated.
    Lenient,
}

/// `w(0,1,2)`.
pub fn tuple_label(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(ToString::to_string).collect();
    format!("w({})", inner.join(","))
}

/// Sorts an index tuple, returning the sign of the sorting permutation, or
/// `None` if an index repeats.
pub fn normalize_tuple(indices: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = indices.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, v))
}

/// Increasing `(k+1)`-tuples in `{0…n}`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n + 1 - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k + 1, &mut Vec::new(), &mut out);
    out
}

impl SimplexForms {
    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.is_empty() || indices.iter().any(|&i| i > self.dim()) || normalize_tuple(indices).is_none() {
            return Err(Error::InvalidIndices(format!("{indices:?} in [0, {}]", self.dim())));
        }
        Ok(())
    }

    /// `ω_{i₀…i_k} = k! Σ_q (−1)^q t^{i_q} dt^{i₀}⋯(omit q)⋯dt^{i_k}`.
    pub fn whitney_form(&self, indices: &[usize]) -> Result<Element> {
        self.check_indices(indices)?;
        Ok(self.whitney_unchecked(indices))
    }

    /// Like [`whitney_form`](Self::whitney_form) but zero on repeated indices.
    pub(crate) fn whitney_unchecked(&self, indices: &[usize]) -> Element {
        let table = self.table();
        if normalize_tuple(indices).is_none() {
            return Element::zero(table);
        }
        let k = indices.len() - 1;
        let mut sum = Element::zero(table);
        for q in 0..=k {
            let mut term = self.t(indices[q]);
            for (r, &i) in indices.iter().enumerate() {
                if r != q {
                    term = &term * &self.dt(i);
                }
            }
            sum = if q % 2 == 0 { &sum + &term } else { &sum - &term };
        }
        sum.scale(&scalar::factorial(k as u32))
    }

    /// `I_{i₀…i_k}(ω) ∈ B`: pull back along the affine simplex spanned by
    /// the listed vertices and integrate over the standard `k`-simplex.
    pub fn simplex_integral(&self, indices: &[usize], w: &Element, mode: IntegralMode) -> Result<Element> {
        if indices.is_empty() || indices.iter().any(|&i| i > self.dim()) {
            return Err(Error::InvalidIndices(format!("{indices:?} in [0, {}]", self.dim())));
        }
        w.table().ensure_same(self.table())?;
        let k = indices.len() - 1;
        if mode == IntegralMode::Strict && !w.is_zero() && self.form_degree(w) != Some(k) {
            return Err(Error::MixedFormWeight(k));
        }
        let face = self.with_dim(k);
        let pulled = self.vertex_pullback(indices, &face)?.apply(&self.form_degree_component(w, k))?;
        let b = self.coefficients().table();
        let nb = b.len();
        let mut out = Element::zero(b);
        for (m, c) in pulled.terms() {
            let exps = m.exponents();
            // every remaining term carries du¹⋯du^k once, already at the right
            let a = &exps[nb..nb + k];
            let total: u32 = a.iter().sum::<u32>() + k as u32;
            let mut value = c.clone();
            for &ai in a {
                value *= scalar::factorial(ai);
            }
            value /= scalar::factorial(total);
            let coeff = Monomial::from_exponents(exps[..nb].to_vec());
            out = &out + &Element::monomial(b, coeff, value);
        }
        Ok(out)
    }

    /// Whitney projection `P ω = Σ_I I_I(ω)·ω_I` over increasing tuples.
    pub fn whitney_projection(&self, w: &Element) -> Result<Element> {
        let mut out = Element::zero(self.table());
        for k in 0..=self.dim() {
            if self.form_degree_component(w, k).is_zero() {
                continue;
            }
            for tuple in increasing_tuples(self.dim(), k) {
                let c = self.simplex_integral(&tuple, w, IntegralMode::Lenient)?;
                if c.is_zero() {
                    continue;
                }
                out = &out + &(&self.include_coefficient(&c)? * &self.whitney_unchecked(&tuple));
            }
        }
        Ok(out)
    }

    /// Contraction of the cochain complex `C_n(B)` onto the cone point 0:
    /// `K(b ω_{0J}) = (−1)^{|b|} b ω_J` and `K(b ω_J) = 0` for `0 ∉ J`.
    /// Satisfies `dK + Kd = id` on positive form-degrees of `C_n(B)`.
    pub fn cone_contraction(&self, c: &Element) -> Result<Element> {
        let mut out = Element::zero(self.table());
        for k in 1..=self.dim() {
            for tuple in increasing_tuples(self.dim(), k) {
                if tuple[0] != 0 {
                    continue;
                }
                let coeff = self.simplex_integral(&tuple, c, IntegralMode::Lenient)?;
                let signed = &coeff.parity_component(crate::algebra::Parity::Even)
                    - &coeff.parity_component(crate::algebra::Parity::Odd);
                if signed.is_zero() {
                    continue;
                }
                out = &out + &(&self.include_coefficient(&signed)? * &self.whitney_unchecked(&tuple[1..]));
            }
        }
        Ok(out)
    }

    pub fn elementary_subcomplex(&self) -> ElementarySubcomplex {
        ElementarySubcomplex::new(self.dim())
    }
}

/// `C_n`: the span of increasing Whitney forms with the coboundary induced
/// by `dω_I = Σ_i ω_{iI}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementarySubcomplex {
    pub n: usize,
    /// `tuples[k]` lists the increasing `(k+1)`-tuples.
    pub tuples: Vec<Vec<Vec<usize>>>,
    /// `boundary[k]`: degree `k` → `k + 1`, rows indexed by `tuples[k+1]`.
    pub boundary: Vec<Matrix>,
}

impl ElementarySubcomplex {
    pub fn new(n: usize) -> Self {
        let tuples: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| increasing_tuples(n, k)).collect();
        let mut boundary = Vec::new();
        for k in 0..n {
            let mut m = Matrix::zeros(tuples[k + 1].len(), tuples[k].len());
            for (col, tuple) in tuples[k].iter().enumerate() {
                for i in 0..=n {
                    let mut ext = vec![i];
                    ext.extend(tuple);
                    if let Some((negative, sorted)) = normalize_tuple(&ext) {
                        let row = tuples[k + 1].iter().position(|t| *t == sorted).unwrap();
                        m[(row, col)] = scalar::sign(negative);
                    }
                }
            }
            boundary.push(m);
        }
        ElementarySubcomplex { n, tuples, boundary }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.tuples.get(k).map_or(0, Vec::len)
    }

    /// Simplicial coboundary of `Δ[n]` on indicator cochains:
    /// `(δc)(j₀…j_{k+1}) = Σ_r (−1)^r c(j₀…ĵ_r…j_{k+1})`.
    pub fn simplicial_coboundary(&self, k: usize) -> Matrix {
        let rows = &self.tuples[k + 1];
        let cols = &self.tuples[k];
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (r, big) in rows.iter().enumerate() {
            for drop in 0..big.len() {
                let face: Vec<usize> = big.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                let c = cols.iter().position(|t| *t == face).unwrap();
                m[(r, c)] = if drop % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            }
        }
        m
    }

    pub fn is_zero_square(&self) -> bool {
        self.boundary.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::simplicial::omega_n;
    use num_traits::Zero;

    /// Independent oracle: iterated exact one-variable integration of
    /// `u^a` over `{u ≥ 0, Σu ≤ 1}`, integrating `u_k` first.
    pub(crate) fn iterated_integral(a: &[u32]) -> Scalar {
        // represent the integrand as a polynomial in s = 1 − u₁ − … − u_j
        // times the remaining monomial; ∫₀^s u^p (s − u)^q du = s^{p+q+1} p! q!/(p+q+1)!
        // is itself checked against term-wise expansion below.
        let mut q = 0u32;
        let mut acc = Scalar::one();
        for &p in a.iter().rev() {
            acc *= beta_by_expansion(p, q);
            q += p + 1;
        }
        acc
    }

    /// `∫₀¹ u^p (1 − u)^q du` by binomial expansion.
    fn beta_by_expansion(p: u32, q: u32) -> Scalar {
        let mut sum = Scalar::zero();
        let mut binom = Scalar::one();
        for j in 0..=q {
            let term = &binom / scalar::int((p + j + 1) as i64);
            sum = if j % 2 == 0 { sum + term } else { sum - term };
            binom = binom * scalar::int((q - j) as i64) / scalar::int((j + 1) as i64);
        }
        sum
    }

    #[test]
    fn oracle_agrees_with_dirichlet() {
        for a in [vec![], vec![0], vec![3], vec![1, 2], vec![2, 0, 1], vec![0, 0, 0]] {
            let k = a.len() as u32;
            let mut dirichlet = Scalar::one();
            for &x in &a {
                dirichlet *= scalar::factorial(x);
            }
            dirichlet /= scalar::factorial(a.iter().sum::<u32>() + k);
            assert_eq!(iterated_integral(&a), dirichlet, "{a:?}");
        }
    }

    #[test]
    fn whitney_basics() {
        let o = omega_n(1);
        let t = o.table();
        assert_eq!(o.whitney_form(&[0, 1]).unwrap(), parse("dt1", t).unwrap());
        assert_eq!(o.whitney_form(&[1]).unwrap(), parse("t1", t).unwrap());
        assert!(matches!(o.whitney_form(&[1, 1]), Err(Error::InvalidIndices(_))));
    }

    #[test]
    fn integrals_and_projection_on_interval() {
        let o = omega_n(1);
        let t = o.table();
        let p = |s: &str| parse(s, t).unwrap();
        assert_eq!(o.simplex_integral(&[0, 1], &p("dt1"), IntegralMode::Strict).unwrap().to_string(), "1");
        assert_eq!(o.whitney_projection(&p("t1^2")).unwrap(), p("t1"));
        assert_eq!(o.whitney_projection(&p("t1*dt1")).unwrap(), p("1/2*dt1"));
        assert!(matches!(
            o.simplex_integral(&[0, 1], &p("dt1 + t1"), IntegralMode::Strict),
            Err(Error::MixedFormWeight(1))
        ));
        assert_eq!(o.simplex_integral(&[0, 1], &p("dt1 + t1"), IntegralMode::Lenient).unwrap().to_string(), "1");
    }

    #[test]
    fn elementary_subcomplex_is_simplicial_cochains() {
        for n in 0..=3 {
            let c = ElementarySubcomplex::new(n);
            for k in 0..n {
                assert_eq!(c.boundary[k], c.simplicial_coboundary(k));
            }
            assert!(c.is_zero_square());
        }
        let c1 = ElementarySubcomplex::new(1);
        assert_eq!(c1.boundary[0].to_rows(), vec![vec![scalar::int(-1), scalar::int(1)]]);
    }
}
