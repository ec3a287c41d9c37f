//! Bounded-below chain complexes, homology with bases, induced maps,
//! truncations and degree shifts.

mod complex;
mod homology;
mod truncation;

pub use complex::{ChainComplex, ChainMap};
pub use homology::{
    cone_criterion, degree_homology, homology, homology_map, homology_map_with, is_quasi_iso, mapping_cone,
    DegreeHomology, HomologyReport, HomologySummary, QuasiIsoVerdict,
};
pub use truncation::{
    brutal_truncation, brutal_truncation_map, disk_sphere_complex, good_truncation, good_truncation_map, reindex_shift, reindex_shift_map, Cell,
};
