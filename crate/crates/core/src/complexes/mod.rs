//! Simplicial and regular CW complexes with exact rational homology.

pub mod cw;
pub mod homology;
pub mod iso;
pub mod posetview;
pub mod simplicial;

pub use cw::{CwCell, RegularCWComplex};
pub use homology::{
    cw_betti, cw_chain_complex, relative_betti, simplicial_betti, simplicial_chain_complex,
    BettiVector, ChainComplexQ, SparseMatQ,
};
pub use iso::{
    affecting_links_stability, graded_simplicial_iso, link_join_decomposition_check,
    link_join_decomposition_check_in,
};
pub use posetview::Poset;
pub use simplicial::{
    boundary_simplex, flag_poset_complement, full_simplex, simplex_skeleton, SimplicialComplex,
};
