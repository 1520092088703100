//! Root numbers of fibers of isotrivial rational elliptic surfaces with
//! j-invariant 0 or 1728, constancy decisions for the two CM families, and
//! the geometric utilities around them.

pub mod arith;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod local_root;
pub mod poly;
pub mod scan;
pub mod weierstrass;
pub mod constancy;

pub use error::{Error, Result};
pub use local_root::{Family, RootMode, Sign};
