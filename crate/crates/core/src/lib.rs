//! Exact constructive homological algebra for finitely presented modules.

pub mod error;
pub mod format;
pub mod fpmod;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod random;
pub mod ring;
pub mod snf;
pub mod subdirect;

pub use error::{Error, Result};
