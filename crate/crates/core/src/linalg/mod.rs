//! Exact integer linear algebra: sparse matrices, Smith normal form, chain complexes.

mod chain;
mod int;
mod snf;
mod sparse;

pub use chain::{
    chain_map_padded, is_quasi_iso, mapping_cone, ChainComplexZ, ChainMap, HomologyBasis, HomologyCoordinates,
    HomologyGroup, QuasiIsoCertificate,
};
pub use int::Int;
pub use snf::{
    invariant_factors, invariant_factors_with, rank, smith_form, smith_form_with, smith_normal_form, Engine, SmithForm,
    SnfResult, DENSE_CUTOFF,
};
pub use sparse::SparseIntMatrix;
