//! Independent oracles: none of these call into the engine's linear algebra,
//! integrals or sign rules.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use superdg::algebra::Monomial;
use superdg::simplicial::SimplexForms;
use superdg::{Element, GeneratorTable, Scalar};

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Polynomial in `u₁…u_k`, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly(pub BTreeMap<Vec<u32>, Scalar>);

impl Poly {
    pub fn constant(k: usize, c: Scalar) -> Poly {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.0.insert(vec![0; k], c);
        }
        p
    }

    pub fn var(k: usize, i: usize) -> Poly {
        let mut e = vec![0; k];
        e[i] = 1;
        Poly(BTreeMap::from([(e, Scalar::one())]))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (e, c) in &other.0 {
            let v = out.entry(e.clone()).or_insert_with(Scalar::zero);
            *v += c;
            if v.is_zero() {
                out.remove(e);
            }
        }
        Poly(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly(self.0.iter().map(|(e, v)| (e.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&Poly(BTreeMap::from([(e, c1 * c2)])));
            }
        }
        out
    }

    pub fn pow(&self, n: u32, k: usize) -> Poly {
        (0..n).fold(Poly::constant(k, Scalar::one()), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// `∫` over `{u ≥ 0, Σu ≤ 1}` by integrating `u_k` from 0 to `1 − u₁ − … − u_{k−1}`,
/// then `u_{k−1}`, and so on.
pub fn integrate_over_simplex(p: &Poly, k: usize) -> Scalar {
    let mut cur = p.clone();
    for j in (0..k).rev() {
        let mut upper = Poly::constant(k, Scalar::one());
        for m in 0..j {
            upper = upper.add(&Poly::var(k, m).scale(&-Scalar::one()));
        }
        let mut next = Poly::default();
        for (e, c) in &cur.0 {
            let a = e[j];
            let mut rest = e.clone();
            rest[j] = 0;
            let coeff = c / Scalar::from_integer((a + 1).into());
            let term = Poly(BTreeMap::from([(rest, coeff)])).mul(&upper.pow(a + 1, k));
            next = next.add(&term);
        }
        cur = next;
    }
    cur.0.get(&vec![0; k]).cloned().unwrap_or_else(Scalar::zero)
}

fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let v = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

/// `I_{j₀…j_k}(ω)` for `ω ∈ Ω_n` over the ground field: pull back along
/// `u ↦ (1−Σu) e_{j₀} + Σ u_m e_{j_m}` and integrate the `du₁⋯du_k`
/// coefficient. Terms of other form-degree contribute nothing.
pub fn face_integral(forms: &SimplexForms, face: &[usize], w: &Element) -> Scalar {
    let n = forms.dim();
    let k = face.len() - 1;
    assert!(forms.coefficients().table().is_empty(), "oracle handles scalar coefficients only");
    // barycentric coordinate i as a polynomial in u, and its differential
    let coord = |i: usize| -> Poly {
        let mut p = Poly::default();
        if face[0] == i {
            p = Poly::constant(k, Scalar::one());
            for m in 0..k {
                p = p.add(&Poly::var(k, m).scale(&-Scalar::one()));
            }
        }
        for m in 1..=k {
            if face[m] == i {
                p = p.add(&Poly::var(k, m - 1));
            }
        }
        p
    };
    let dcoord = |i: usize| -> Vec<Scalar> {
        (1..=k)
            .map(|m| {
                let mut v = Scalar::zero();
                if face[m] == i {
                    v += Scalar::one();
                }
                if face[0] == i {
                    v -= Scalar::one();
                }
                v
            })
            .collect()
    };
    let mut total = Scalar::zero();
    for (mono, c) in w.terms() {
        let e = mono.exponents();
        let odd: Vec<usize> = (0..n).filter(|&i| e[n + i] == 1).map(|i| i + 1).collect();
        if odd.len() != k {
            continue;
        }
        let mut poly = Poly::constant(k, c.clone());
        for i in 1..=n {
            poly = poly.mul(&coord(i).pow(e[i - 1], k));
        }
        let jac: Vec<Vec<Scalar>> = odd.iter().map(|&i| dcoord(i)).collect();
        total += integrate_over_simplex(&poly.scale(&det(&jac)), k);
    }
    total
}

/// Product of two monomials with the sign counted directly: one factor of
/// −1 for every odd generator of `b` passing an odd generator of `a` with
/// larger index. `None` if an odd generator repeats.
pub fn monomial_product(table: &GeneratorTable, a: &Monomial, b: &Monomial) -> Option<(Scalar, Monomial)> {
    let (ea, eb) = (a.exponents(), b.exponents());
    let mut swaps = 0u32;
    for j in 0..table.len() {
        if !table.is_odd(j) || eb[j] == 0 {
            continue;
        }
        if ea[j] > 0 {
            return None;
        }
        swaps += (j + 1..table.len()).filter(|&i| table.is_odd(i) && ea[i] > 0).count() as u32;
    }
    let sign = if swaps.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    Some((sign, Monomial::from_exponents(ea.iter().zip(eb).map(|(x, y)| x + y).collect())))
}

/// Number of monomials of bidegree `(w, odd)` and polynomial degree `≤ max_degree`
/// in free generators of the given bidegrees.
pub fn count_monomials(gens: &[(i64, bool)], w: i64, odd: bool, max_degree: u32) -> usize {
    let mut states: BTreeMap<(i64, bool, u32), usize> = BTreeMap::from([((0, false, 0), 1)]);
    for &(gw, go) in gens {
        let mut next = BTreeMap::new();
        for (&(sw, so, sd), &count) in &states {
            let max_e = if go { 1 } else { max_degree - sd };
            for e in 0..=max_e.min(max_degree - sd) {
                let key = (sw + gw * e as i64, so ^ (go && e == 1), sd + e);
                *next.entry(key).or_insert(0) += count;
            }
        }
        states = next;
    }
    states.iter().filter(|((sw, so, _), _)| *sw == w && *so == odd).map(|(_, c)| c).sum()
}
