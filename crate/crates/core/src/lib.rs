//! Decides whether finite simplicial pairs satisfy Poincaré duality with
//! arbitrary local coefficients.
//!
//! The crate is layered: [`linalg`] provides exact integer linear algebra,
//! [`complex`] builds simplicial complexes, [`group`] handles fundamental
//! groups, covers and local systems, and [`duality`] assembles twisted
//! (co)chains, products and the verdict procedures. [`scenario`] packages the
//! standard examples.

pub mod complex;
pub mod duality;
pub mod error;
pub mod group;
pub mod linalg;
pub mod scenario;

pub use error::{ComplexError, DualityError, GroupError, LinalgError};
