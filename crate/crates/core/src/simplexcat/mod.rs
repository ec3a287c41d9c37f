//! Morphisms of the injective simplex and cube categories and of the
//! differential algebras, with composition, factorization, comparison
//! functors and hom bases.

pub mod basis;
pub mod factor;
pub mod functor;
mod kind;
mod lincomb;
mod morphism;

pub use basis::{hom_basis, hom_count, d_lower, strictly_decreasing_basis, DMonomial, SignFamily};
pub use factor::{coface_factorization, cube_coface_factorization, monochromatic_factorization};
pub use functor::ComparisonFunctor;
pub use kind::{GeneratorId, Kind};
pub use lincomb::LinComb;
pub use morphism::{CubeMap, Face, InjMap, Morphism, OmegaMap};
