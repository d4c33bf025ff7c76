//! Exact arithmetic for Drinfeld F_p[t]-modules over K = F_p(t)(θ).

pub mod base;
pub mod error;
pub mod field;
pub mod places;
pub mod twisted;
pub mod drinfeld;
pub mod local;
pub mod module;
pub mod adelic;
pub mod experiments;

pub use error::{Error, Result};
pub mod cli;

/// Order-preserving parallel map over independent items such as places.
pub(crate) fn par_map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    xs.par_iter().map(f).collect()
}
