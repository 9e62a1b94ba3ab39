//! Unit groups and lattices: fundamental units via continued fractions,
//! the logarithmic embedding, Minkowski-reduced bases, and fundamental
//! domain cell partitions.

mod cells;
mod embed;
mod lattice;
mod unit;

pub use cells::{cell_partition, cell_partition_general, Cell, CellPartition};
pub use embed::{log_embedding, log_embedding_sum};
pub use lattice::{minkowski_basis, second_theorem_ratio, Lattice};
pub use unit::{fundamental_unit, regulator_and_norm, FundamentalUnit};
