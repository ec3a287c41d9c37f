//! Exact homological algebra for modules over the injective simplex and
//! cube categories and their differential comparison algebras.

pub mod error;
pub mod chainkit;
pub mod diagmod;
pub mod exactlin;
pub mod oracle;
pub mod simplexcat;
pub mod transport;

pub use error::{Error, Result};
