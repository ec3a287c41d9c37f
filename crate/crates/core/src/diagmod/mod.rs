//! Right modules over truncated indexing algebras and their morphisms.

pub mod json;
mod map;
mod module;

pub use map::ModuleMap;
pub use module::{DiagramModule, Violation};
