mod boxes;
mod half_int;
mod moves;
mod pairs;
mod partition;

pub use boxes::*;
pub use half_int::HalfInt;
pub use moves::*;
pub use pairs::*;
pub use partition::{partition_from_phi, Partition, PhiProfile};
