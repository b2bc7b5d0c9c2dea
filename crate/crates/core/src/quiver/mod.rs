mod algebra;
mod graph;
mod paths;
mod qmatrix;
mod relations;
mod rep;

pub use algebra::*;
pub use graph::*;
pub use paths::*;
pub use qmatrix::*;
pub use relations::*;
pub use rep::*;
