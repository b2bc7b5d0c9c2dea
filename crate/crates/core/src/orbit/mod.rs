mod codim2;
mod dual;
mod matrix;
mod perm;
mod pi1;
mod strata;

pub use codim2::*;
pub use dual::*;
pub use matrix::*;
pub use perm::*;
pub use pi1::*;
pub use strata::*;
