//! Finite cochain complexes with the projective model structure, the
//! generating cells, lifting and factorization, and the free-algebra side:
//! algebra cells, `Sym` with its Künneth comparison, and path objects.

mod cells;
mod complex;
mod factorize;
pub mod generate;
mod lifting;
mod path;
mod sym;

pub use cells::{
    algebra_cell, cell, disk, graded_cells, sphere, ungraded_cells, AlgebraCell, AlgebraCellReport, Cell, CellKind,
};
pub use complex::{ChainMap, ChainMapDocument, Complex, ComplexDocument, Flavor};
pub use factorize::{factorize, Factorization, FactorizationCheck, FactorizationMode};
pub use lifting::{chain_map_basis, linear_combination, solve_lift, Infeasible, Lift};
pub use path::{path_object, PathObject, PathObjectReport};
pub use sym::{free_on_cohomology, kunneth, sym, KunnethReport, KunnethRow};
