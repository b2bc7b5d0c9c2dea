//! Lambda-pairs, the conormal orbit posets they index, and the quiver algebras
//! presented on top of them.

pub mod combinatorics;
pub mod error;
pub mod orbit;
pub mod quiver;

pub use error::{Error, Result};
