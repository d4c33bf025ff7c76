pub mod factor;
pub mod felem;
pub mod fp;
pub mod matrix;
pub mod rpoly;
pub mod snf;
pub mod sparse;

pub use felem::FElem;
pub use fp::FpElem;
pub use matrix::{fp_nullspace, FpMatrix};
pub use rpoly::RPoly;
pub use snf::{smith_normal_form, Hermite, RMatrix, Smith};
