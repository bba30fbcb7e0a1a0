use serde::Serialize;

use super::complex::{Complex, Flavor};
use crate::algebra::{Element, Generator, GeneratorTable, Parity};
use crate::dg::{cohomology, monomial_count, weight_space_degree_bound, DgAlgebra, Window};
use crate::error::{Error, Result};

/// Free dg algebra on a basis of `V`: generator `v{k}` for the `k`-th basis
/// vector in sorted bidegree order, with `d` the linear extension of `V`'s.
pub fn sym(v: &Complex) -> Result<DgAlgebra> {
    if v.flavor() != Flavor::Graded {
        return Err(Error::InvalidInput("Sym requires a graded complex".into()));
    }
    let mut gens = Vec::new();
    let mut offsets = std::collections::BTreeMap::new();
    for b in v.support() {
        offsets.insert(b, gens.len());
        for _ in 0..v.dim(b) {
            gens.push(Generator::new(format!("v{}", gens.len() + 1), b.0, b.1));
        }
    }
    let table = GeneratorTable::new(gens)?;
    let mut images = Vec::with_capacity(table.len());
    for b in v.support() {
        let nb = v.next(b);
        let d = v.d(b);
        for k in 0..v.dim(b) {
            let terms = (0..d.rows()).map(|r| {
                let m = Element::gen(&table, offsets[&nb] + r);
                m.scale(&d[(r, k)])
            });
            images.push(terms.fold(Element::zero(&table), |acc, t| &acc + &t));
        }
    }
    DgAlgebra::new(&table, images)
}

/// Free algebra with zero differential on generators matching `H(V)`.
pub fn free_on_cohomology(v: &Complex) -> Result<GeneratorTable> {
    let mut gens = Vec::new();
    for (b, h) in v.cohomology() {
        for _ in 0..h {
            gens.push(Generator::new(format!("h{}", gens.len() + 1), b.0, b.1));
        }
    }
    GeneratorTable::new(gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethRow {
    pub weight: i64,
    pub parity: Parity,
    pub sym_cohomology: usize,
    pub free_on_cohomology: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub rows: Vec<KunnethRow>,
    pub equal: bool,
}

/// Compares `dim H(Sym V)` with the dimension of the free algebra on
/// `H(V)` per bidegree in the window. `d` preserves polynomial degree on
/// `Sym V`, so a truncated computation is compared with a truncated count.
pub fn kunneth(v: &Complex, window: Window, degree_cap: u32) -> Result<KunnethReport> {
    let algebra = sym(v)?;
    let free = free_on_cohomology(v)?;
    let h = cohomology(&algebra, window, degree_cap)?;
    let mut rows = Vec::with_capacity(h.len());
    for e in h {
        let bound = if e.exact { weight_space_degree_bound(&free, e.weight).unwrap_or(degree_cap) } else { degree_cap };
        rows.push(KunnethRow {
            weight: e.weight,
            parity: e.parity,
            sym_cohomology: e.dimension,
            free_on_cohomology: monomial_count(&free, e.weight, e.parity, bound),
            exact: e.exact,
        });
    }
    let equal = rows.iter().all(|r| r.sym_cohomology == r.free_on_cohomology);
    Ok(KunnethReport { rows, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::cells::{disk, sphere};
    use crate::model::generate::random_complex;
    use crate::random::rng;

    #[test]
    fn sym_of_disk_is_the_algebra_cell() {
        let a = sym(&disk(Flavor::Graded, (2, Parity::Even))).unwrap();
        let v1 = Element::gen(a.table(), 0);
        assert_eq!(a.d(&v1).unwrap().to_string(), "v2");
        let h = cohomology(&a, Window::new(-3, 8).unwrap(), 5).unwrap();
        let nonzero: Vec<_> = h.iter().filter(|e| e.dimension > 0).map(|e| (e.weight, e.parity)).collect();
        assert_eq!(nonzero, vec![(0, Parity::Even)]);
    }

    #[test]
    fn sym_of_sphere_has_zero_differential() {
        let a = sym(&sphere(Flavor::Graded, (1, Parity::Odd))).unwrap();
        assert!(a.differential().is_zero());
    }

    #[test]
    fn kunneth_on_mixed_cohomology() {
        let v = sphere(Flavor::Graded, (0, Parity::Even))
            .direct_sum(&sphere(Flavor::Graded, (1, Parity::Odd)))
            .unwrap()
            .direct_sum(&disk(Flavor::Graded, (1, Parity::Even)))
            .unwrap();
        let report = kunneth(&v, Window::new(-3, 3).unwrap(), 5).unwrap();
        assert!(report.equal, "{report:?}");
    }

    #[test]
    fn kunneth_on_random_complexes() {
        let mut r = rng(5);
        for _ in 0..6 {
            let v = random_complex(&mut r, Flavor::Graded, 4, (-2, 1), false);
            let report = kunneth(&v, Window::new(-3, 3).unwrap(), 5).unwrap();
            assert!(report.equal, "{v:?} {report:?}");
        }
    }
}
