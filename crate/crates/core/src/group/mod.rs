//! Fundamental groups of simplicial complexes: edge-path presentations,
//! coset enumeration, covers and local coefficient systems.

mod coset;
mod cover;
mod presentation;
mod system;
mod tietze;

pub use coset::{
    compose_perm, enumerate_cosets, identity_perm, invert_perm, low_index_subgroups, low_index_tables, todd_coxeter,
    todd_coxeter_simplified, CosetTable, LowIndexResult, DEFAULT_MAX_COSETS,
};
pub use cover::{build_cover, build_cover_with, projection_chain, transfer_chain, CoverPair};
pub use presentation::{
    cyclic_reduce, evaluate_word, free_reduce, generator_of, invert_word, letter, presentation, GroupPresentation, Word,
};
pub use system::{orientation_systems, permutation_system, unimodular_inverse, EdgeSystem, LocalSystem};
pub use tietze::{simplify, SimplifiedPresentation};
