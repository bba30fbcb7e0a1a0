use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::DgAlgebra;
use crate::algebra::{Element, GeneratorTable, Monomial, Parity};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::Scalar;

/// Largest polynomial degree enumerated when a weight space is provably finite.
pub const MAX_EXACT_DEGREE: u32 = 48;
/// Largest monomial basis a single matrix may be built over.
pub const MAX_BASIS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub min: i64,
    pub max: i64,
}

impl Window {
    pub fn new(min: i64, max: i64) -> Result<Self> {
        if min > max {
            return Err(Error::InvalidInput(format!("empty window {min}:{max}")));
        }
        Ok(Window { min, max })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyEntry {
    pub weight: i64,
    pub parity: Parity,
    pub dimension: usize,
    pub representatives: Vec<Element>,
    pub exact: bool,
}

impl Serialize for CohomologyEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            weight: i64,
            parity: Parity,
            dimension: usize,
            representatives: Vec<String>,
            exact: bool,
        }
        Doc {
            weight: self.weight,
            parity: self.parity,
            dimension: self.dimension,
            representatives: self.representatives.iter().map(ToString::to_string).collect(),
            exact: self.exact,
        }
        .serialize(s)
    }
}

/// Upper bound on the polynomial degree of monomials of weight `w`, or
/// `None` when the weight space is infinite-dimensional (an even generator
/// of weight 0, or even generators of both signs).
pub fn weight_space_degree_bound(table: &GeneratorTable, w: i64) -> Option<u32> {
    let gens = table.generators();
    let odd_count = gens.iter().filter(|g| g.parity.is_odd()).count() as i64;
    let even: Vec<i64> = gens.iter().filter(|g| !g.parity.is_odd()).map(|g| g.weight).collect();
    if even.contains(&0) {
        return None;
    }
    let positive = even.iter().any(|&x| x > 0);
    let negative = even.iter().any(|&x| x < 0);
    if positive && negative {
        return None;
    }
    if even.is_empty() {
        return Some(odd_count as u32);
    }
    // flip signs so even weights are positive
    let sgn = if positive { 1 } else { -1 };
    let min_even = even.iter().map(|&x| x * sgn).min().unwrap();
    let odd_low: i64 = gens.iter().filter(|g| g.parity.is_odd()).map(|g| (g.weight * sgn).min(0)).sum();
    let budget = w * sgn - odd_low;
    let even_degree = if budget < 0 { 0 } else { budget / min_even };
    Some((odd_count + even_degree) as u32)
}

/// All monomials of bidegree `(w, p)` and polynomial degree `≤ max_degree`, sorted.
pub fn monomial_basis(table: &GeneratorTable, w: i64, p: Parity, max_degree: u32) -> Vec<Monomial> {
    let n = table.len();
    let weights: Vec<i64> = (0..n).map(|i| table.weight(i)).collect();
    let mut suffix_min = vec![0i64; n + 1];
    let mut suffix_max = vec![0i64; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(weights[i]);
        suffix_max[i] = suffix_max[i + 1].max(weights[i]);
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate(table, &weights, (&suffix_min, &suffix_max), 0, max_degree, w, p.is_odd(), &mut exps, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    table: &GeneratorTable,
    weights: &[i64],
    suffix: (&[i64], &[i64]),
    i: usize,
    budget: u32,
    remaining_weight: i64,
    odd: bool,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    let n = weights.len();
    if i == n {
        if remaining_weight == 0 && !odd {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        return;
    }
    let b = budget as i64;
    let lo = b * suffix.0[i].min(0);
    let hi = b * suffix.1[i].max(0);
    if remaining_weight < lo || remaining_weight > hi {
        return;
    }
    let max_e = if table.is_odd(i) { budget.min(1) } else { budget };
    for e in 0..=max_e {
        exps[i] = e;
        let flips = table.is_odd(i) && e == 1;
        enumerate(
            table,
            weights,
            suffix,
            i + 1,
            budget - e,
            remaining_weight - weights[i] * e as i64,
            odd ^ flips,
            exps,
            out,
        );
    }
    exps[i] = 0;
}

/// Number of monomials of bidegree `(w, p)` and degree `≤ max_degree`.
pub fn monomial_count(table: &GeneratorTable, w: i64, p: Parity, max_degree: u32) -> usize {
    monomial_basis(table, w, p, max_degree).len()
}

fn index_of(basis: &[Monomial]) -> HashMap<&Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Cohomology in a single bidegree.
pub fn cohomology_at(a: &DgAlgebra, w: i64, p: Parity, degree_cap: u32) -> Result<CohomologyEntry> {
    if degree_cap == 0 {
        return Err(Error::InvalidInput("degree cap must be at least 1".into()));
    }
    let table = a.table();
    let bounds = [w - 1, w].map(|x| weight_space_degree_bound(table, x));
    let exact = bounds.iter().all(Option::is_some);
    let (src_cap, mid_cap) = if exact {
        let (s, m) = (bounds[0].unwrap(), bounds[1].unwrap());
        if s.max(m) > MAX_EXACT_DEGREE {
            return Err(Error::CapInsufficient(format!(
                "weight {w} needs polynomial degree {} (limit {MAX_EXACT_DEGREE})",
                s.max(m)
            )));
        }
        (s, m)
    } else {
        (degree_cap, degree_cap)
    };
    let mid = monomial_basis(table, w, p, mid_cap);
    let src = monomial_basis(table, w - 1, p.flip(), src_cap);
    if mid.len() > MAX_BASIS || src.len() > MAX_BASIS {
        return Err(Error::CapInsufficient(format!(
            "bidegree ({w}, {}) has more than {MAX_BASIS} basis monomials at this cap",
            p.as_str()
        )));
    }

    // kernel of d on the enumerated space; images are indexed without truncation
    let mut out_index: HashMap<Monomial, usize> = HashMap::new();
    let mut images = Vec::with_capacity(mid.len());
    for m in &mid {
        let img = a.d(&Element::monomial(table, m.clone(), num_traits::One::one()))?;
        for k in img.terms().keys() {
            let next = out_index.len();
            out_index.entry(k.clone()).or_insert(next);
        }
        images.push(img);
    }
    let mut d_out = Matrix::zeros(out_index.len(), mid.len());
    for (j, img) in images.iter().enumerate() {
        for (k, c) in img.terms() {
            d_out[(out_index[k], j)] = c.clone();
        }
    }
    let cycles = d_out.nullspace();

    // boundaries landing inside the enumerated space
    let mid_index = index_of(&mid);
    let mut inside: Vec<Vec<Scalar>> = Vec::new();
    let mut outside: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut escape_index: HashMap<Monomial, usize> = HashMap::new();
    for m in &src {
        let img = a.d(&Element::monomial(table, m.clone(), num_traits::One::one()))?;
        let mut v = vec![Scalar::zero(); mid.len()];
        let mut esc = Vec::new();
        for (k, c) in img.terms() {
            match mid_index.get(k) {
                Some(&i) => v[i] = c.clone(),
                None => {
                    let next = escape_index.len();
                    let i = *escape_index.entry(k.clone()).or_insert(next);
                    esc.push((i, c.clone()));
                }
            }
        }
        inside.push(v);
        outside.push(esc);
    }
    if exact && !escape_index.is_empty() {
        return Err(Error::CapInsufficient(format!("differential leaves the enumerated weight-{w} space")));
    }
    let boundaries: Vec<Vec<Scalar>> = if escape_index.is_empty() {
        inside
    } else {
        let mut esc = Matrix::zeros(escape_index.len(), src.len());
        for (j, col) in outside.iter().enumerate() {
            for (i, c) in col {
                esc[(*i, j)] = c.clone();
            }
        }
        let inner = Matrix::from_columns(mid.len(), &inside);
        esc.nullspace().iter().map(|n| inner.apply(n)).collect()
    };

    let mut span = SpanBuilder::new(mid.len());
    for b in &boundaries {
        span.insert(b);
    }
    let mut representatives = Vec::new();
    for z in &cycles {
        if span.insert(z) {
            representatives.push(Element::from_terms(table, mid.iter().cloned().zip(z.iter().cloned())));
        }
    }
    Ok(CohomologyEntry { weight: w, parity: p, dimension: representatives.len(), representatives, exact })
}

/// Cohomology for every weight in the window and both parities.
pub fn cohomology(a: &DgAlgebra, window: Window, degree_cap: u32) -> Result<Vec<CohomologyEntry>> {
    let mut out = Vec::new();
    for w in window.min..=window.max {
        for p in [Parity::Even, Parity::Odd] {
            out.push(cohomology_at(a, w, p, degree_cap)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Generator};
    use crate::dg::validate_differential;

    fn dims(entries: &[CohomologyEntry]) -> Vec<(i64, Parity, usize)> {
        entries.iter().filter(|e| e.dimension > 0).map(|e| (e.weight, e.parity, e.dimension)).collect()
    }

    #[test]
    fn even_disk_is_acyclic() {
        let t = GeneratorTable::new(vec![Generator::even("t", 0), Generator::odd("theta", 1)]).unwrap();
        let a = validate_differential(&t, [("t", parse("theta", &t).unwrap())]).unwrap();
        let h = cohomology(&a, Window::new(-2, 3).unwrap(), 5).unwrap();
        assert_eq!(dims(&h), vec![(0, Parity::Even, 1)]);
        assert!(h.iter().all(|e| !e.exact));
        let rep = &h.iter().find(|e| e.dimension == 1).unwrap().representatives[0];
        assert_eq!(rep.to_string(), "1");
    }

    #[test]
    fn odd_disk_is_exactly_acyclic() {
        let t = GeneratorTable::new(vec![Generator::odd("theta", 0), Generator::even("t", 1)]).unwrap();
        let a = validate_differential(&t, [("theta", parse("t", &t).unwrap())]).unwrap();
        let h = cohomology(&a, Window::new(-1, 6).unwrap(), 2).unwrap();
        assert_eq!(dims(&h), vec![(0, Parity::Even, 1)]);
        assert!(h.iter().all(|e| e.exact));
    }

    #[test]
    fn koszul_complex_of_regular_element() {
        let t = GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", -1)]).unwrap();
        let a = validate_differential(&t, [("xi", parse("x", &t).unwrap())]).unwrap();
        let h = cohomology(&a, Window::new(-1, 0).unwrap(), 6).unwrap();
        assert_eq!(dims(&h), vec![(0, Parity::Even, 1)]);
    }

    #[test]
    fn zero_differential_counts_monomials() {
        let t = GeneratorTable::new(vec![Generator::even("x", 1), Generator::even("y", 2), Generator::odd("z", 1)])
            .unwrap();
        let a = DgAlgebra::trivial(&t);
        for w in 0..6 {
            for p in [Parity::Even, Parity::Odd] {
                let e = cohomology_at(&a, w, p, 3).unwrap();
                assert!(e.exact);
                let cap = weight_space_degree_bound(&t, w).unwrap();
                assert_eq!(e.dimension, monomial_basis(&t, w, p, cap).len());
            }
        }
    }

    #[test]
    fn degree_bound_is_complete() {
        let t = GeneratorTable::new(vec![Generator::even("x", 2), Generator::odd("a", -1), Generator::odd("b", 3)])
            .unwrap();
        for w in -2..8 {
            let cap = weight_space_degree_bound(&t, w).unwrap();
            for p in [Parity::Even, Parity::Odd] {
                assert_eq!(monomial_basis(&t, w, p, cap), monomial_basis(&t, w, p, cap + 6));
            }
        }
        let inf = GeneratorTable::new(vec![Generator::even("x", 1), Generator::even("y", -1)]).unwrap();
        assert_eq!(weight_space_degree_bound(&inf, 0), None);
    }

    #[test]
    fn rejects_zero_cap() {
        let a = DgAlgebra::ground();
        assert!(cohomology_at(&a, 0, Parity::Even, 0).is_err());
    }
}
