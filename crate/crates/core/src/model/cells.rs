use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{ChainMap, Complex, Flavor};
use crate::algebra::{AlgebraMap, Bidegree, Element, Generator, GeneratorTable, Parity};
use crate::dg::{cohomology, DgAlgebra, Window};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar;

/// Which generating cell of the projective structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "flavor", rename_all = "lowercase")]
pub enum CellKind {
    /// `D_even` / `D_odd` (the parity is that of the bottom generator).
    Ungraded { parity: Parity },
    /// `D^n_ε`.
    Graded { n: i64, parity: Parity },
}

impl CellKind {
    pub fn flavor(self) -> Flavor {
        match self {
            CellKind::Ungraded { .. } => Flavor::Ungraded,
            CellKind::Graded { .. } => Flavor::Graded,
        }
    }

    /// Bidegree of the disk's bottom generator.
    pub fn bottom(self) -> Bidegree {
        match self {
            CellKind::Ungraded { parity } => (0, parity),
            CellKind::Graded { n, parity } => (n, parity),
        }
    }

    /// Bidegree of the disk's top generator, which is also the sphere's.
    pub fn top(self) -> Bidegree {
        self.flavor().next(self.bottom())
    }

    pub fn label(self) -> String {
        match self {
            CellKind::Ungraded { parity } => format!("D_{parity}"),
            CellKind::Graded { n, parity } => format!("D^{n}_{parity}"),
        }
    }
}

/// One generating cell with its two generating maps.
#[derive(Clone, Debug)]
pub struct Cell {
    pub kind: CellKind,
    pub disk: Complex,
    pub sphere: Complex,
    /// Boundary inclusion `i: S → D`.
    pub boundary_inclusion: ChainMap,
    /// Initial inclusion `j: 0 → D`.
    pub initial_inclusion: ChainMap,
}

/// Sphere on one generator in bidegree `b`.
pub fn sphere(flavor: Flavor, b: Bidegree) -> Complex {
    Complex::new(flavor, [(b, 1)].into(), BTreeMap::new()).expect("sphere is a complex")
}

/// Disk whose bottom generator sits in bidegree `b`.
pub fn disk(flavor: Flavor, b: Bidegree) -> Complex {
    let top = flavor.next(b);
    Complex::new(flavor, [(b, 1), (top, 1)].into(), [(b, Matrix::from_rows(vec![vec![scalar::int(1)]]))].into())
        .expect("disk is a complex")
}

pub fn cell(kind: CellKind) -> Cell {
    let flavor = kind.flavor();
    let disk = disk(flavor, kind.bottom());
    let sphere = sphere(flavor, kind.top());
    let boundary_inclusion = ChainMap::new(&sphere, &disk, [(kind.top(), Matrix::identity(1))].into())
        .expect("boundary inclusion is a chain map");
    let initial_inclusion = ChainMap::zero(&Complex::zero(flavor), &disk);
    Cell { kind, disk, sphere, boundary_inclusion, initial_inclusion }
}

pub fn ungraded_cells() -> Vec<Cell> {
    [Parity::Even, Parity::Odd].into_iter().map(|parity| cell(CellKind::Ungraded { parity })).collect()
}

/// Graded cells `D^n_ε` for `n` in `lo..=hi`.
pub fn graded_cells(lo: i64, hi: i64) -> Vec<Cell> {
    (lo..=hi).flat_map(|n| [Parity::Even, Parity::Odd].map(|parity| cell(CellKind::Graded { n, parity }))).collect()
}

/// Free-algebra image of a generating cell: `𝕂 → 𝔇` and `𝕊 → 𝔇`.
#[derive(Clone, Debug)]
pub struct AlgebraCell {
    pub kind: CellKind,
    pub disk: DgAlgebra,
    pub sphere: DgAlgebra,
    pub ground: DgAlgebra,
    pub boundary_inclusion: AlgebraMap,
    pub initial_inclusion: AlgebraMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraCellReport {
    pub cell: String,
    pub disk_generators: Vec<Generator>,
    pub sphere_generators: Vec<Generator>,
    pub boundary_image: String,
    pub disk_cohomology: Vec<(i64, Parity, usize)>,
    pub disk_acyclic: bool,
    pub inclusion_injective: bool,
    pub exact: bool,
}

fn generator_name(b: Bidegree, flavor: Flavor) -> String {
    match flavor {
        Flavor::Ungraded => match b.1 {
            Parity::Even => "t".into(),
            Parity::Odd => "theta".into(),
        },
        Flavor::Graded => {
            let n = if b.0 < 0 { format!("m{}", -b.0) } else { b.0.to_string() };
            format!("t{n}_{}", b.1)
        }
    }
}

/// Builds the algebra cell. Ungraded generators get auxiliary weights 0 and
/// 1 so that the differential has the engine's bidegree `(1, odd)`.
pub fn algebra_cell(kind: CellKind) -> Result<AlgebraCell> {
    let flavor = kind.flavor();
    let (bottom, top) = (kind.bottom(), kind.top());
    let top_weight = bottom.0 + 1;
    let bottom_gen = Generator::new(generator_name(bottom, flavor), bottom.0, bottom.1);
    let top_gen = Generator::new(generator_name(top, flavor), top_weight, top.1);
    let disk_table = GeneratorTable::new(vec![bottom_gen.clone(), top_gen.clone()])?;
    let disk = DgAlgebra::new(&disk_table, vec![Element::gen(&disk_table, 1), Element::zero(&disk_table)])?;
    let sphere_table = GeneratorTable::new(vec![top_gen])?;
    let sphere = DgAlgebra::trivial(&sphere_table);
    let ground = DgAlgebra::ground();
    let boundary_inclusion = AlgebraMap::inclusion(&sphere_table, &disk_table)?;
    let initial_inclusion = AlgebraMap::inclusion(ground.table(), &disk_table)?;
    Ok(AlgebraCell { kind, disk, sphere, ground, boundary_inclusion, initial_inclusion })
}

impl AlgebraCell {
    /// Checks that the disk has the cohomology of the ground field in the
    /// window and that the boundary inclusion is injective on generators.
    pub fn report(&self, window: Window, degree_cap: u32) -> Result<AlgebraCellReport> {
        let h = cohomology(&self.disk, window, degree_cap)?;
        let exact = h.iter().all(|e| e.exact);
        let nonzero: Vec<_> = h.iter().filter(|e| e.dimension > 0).map(|e| (e.weight, e.parity, e.dimension)).collect();
        let ground_in_window = window.min <= 0 && 0 <= window.max;
        let expected: Vec<_> = if ground_in_window { vec![(0, Parity::Even, 1)] } else { vec![] };
        let images = self.boundary_inclusion.images();
        let injective = images.iter().all(|e| e.len() == 1 && e.max_degree() == 1) && {
            let mut seen: Vec<_> = images.iter().map(|e| e.terms().keys().next().cloned()).collect();
            seen.sort();
            seen.dedup();
            seen.len() == images.len()
        };
        Ok(AlgebraCellReport {
            cell: self.kind.label(),
            disk_generators: self.disk.table().generators().to_vec(),
            sphere_generators: self.sphere.table().generators().to_vec(),
            boundary_image: images.first().map(ToString::to_string).unwrap_or_default(),
            disk_acyclic: nonzero == expected,
            disk_cohomology: nonzero,
            inclusion_injective: injective,
            exact,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disks_are_acyclic_spheres_are_themselves() {
        let mut cells = ungraded_cells();
        cells.extend(graded_cells(-3, 3));
        for c in &cells {
            assert!(c.disk.is_acyclic(), "{}", c.kind.label());
            assert_eq!(c.sphere.cohomology(), c.sphere.dims().clone());
            assert!(!c.boundary_inclusion.is_fibration());
            assert!(!c.boundary_inclusion.is_weak_equivalence());
            assert!(c.initial_inclusion.is_weak_equivalence());
        }
    }

    #[test]
    fn ungraded_boundary_of_even_disk_is_odd_sphere() {
        let c = cell(CellKind::Ungraded { parity: Parity::Even });
        assert_eq!(c.sphere.support(), vec![(0, Parity::Odd)]);
    }

    #[test]
    fn algebra_cells_verify() {
        let window = Window::new(-3, 3).unwrap();
        for kind in [
            CellKind::Ungraded { parity: Parity::Even },
            CellKind::Ungraded { parity: Parity::Odd },
            CellKind::Graded { n: -1, parity: Parity::Odd },
            CellKind::Graded { n: 0, parity: Parity::Even },
            CellKind::Graded { n: 2, parity: Parity::Odd },
        ] {
            let cell = algebra_cell(kind).unwrap();
            let r = cell.report(window, 6).unwrap();
            assert!(r.disk_acyclic, "{:?}", r);
            assert!(r.inclusion_injective);
            let top = cell.disk.table().generator(1).name.clone();
            assert_eq!(r.boundary_image, top);
        }
    }
}
