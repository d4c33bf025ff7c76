pub mod bipoly;
pub mod coords;
pub mod coprime;
pub mod factor;
pub mod fpoly;
pub mod kelem;
pub mod parse;

pub use bipoly::BiPoly;
pub use coords::{coordinates, coordinates_vec, Coordinates, Monomial};
pub use fpoly::FPoly;
pub use kelem::{HeightProfile, KElem};
pub use parse::{parse_f, parse_k, parse_r, parse_value, ParseValue};
