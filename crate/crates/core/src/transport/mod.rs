//! Restriction and induction along the comparison functors, their units and
//! counits, and Tor against the fixed coefficient modules.

mod coend;
mod induce;
mod restrict;
mod tor;

pub use coend::{Coend, LeftModuleData};
pub use induce::{counit_map, induce, induce_map, unit_map, InductionResult, PresentationLabel};
pub use restrict::{
    augmented_chain, augmented_chain_map, chain_functor, restrict, restrict_map, restrict_v, restrict_v_map,
    restricted_truncation, underlying_complex, underlying_complex_map,
};
pub use tor::{
    low_degree_sequence, resolution_at, tor, tor_coyoneda_complex, tor_map, tor_zero_direct, CoefficientId,
    LowDegreeSequence, TorComplex,
};
