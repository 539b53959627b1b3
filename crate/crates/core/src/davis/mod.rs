//! The Davis complex toolbox: chamber and nerve, basic construction,
//! truncated coset cellulation with weighted boundary maps, ruins, and
//! finite Hecke shadows.

pub mod cellulation;
pub mod chamber;
pub mod hecke;
pub mod ruins;

pub use cellulation::{coxeter_cellulation, CoxCell, WeightedChainComplex};
pub use chamber::{basic_construction, davis_chamber, nerve, word_label, MirroredChamber};
pub use hecke::{hecke_shadow, HeckeShadow};
pub use ruins::{
    euler_identity_check, expected_relative_types, lk_of, ruin, ruin_additivity_check,
    ruin_dimension_series, ruin_dimension_series_in, st_of, weighted_euler, RuinPair,
};
