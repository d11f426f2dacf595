//! Mixed cells, mixed volumes, binomial systems and the polyhedral homotopy.

mod binomial;
mod cells;
mod solve;

pub use binomial::solve_binomial;
pub use cells::{
    mixed_cells, mixed_cells_random, mixed_volume, random_lifting, Lifting, MixedCell, SupportSet,
    MAX_LIFTING_ATTEMPTS,
};
pub use solve::{
    cell_homotopy, group_supports, polyhedral_solve, start_solutions, supports_of, GroupedSupports,
    PolyhedralStart,
};
