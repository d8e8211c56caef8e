//! Exact-arithmetic toolkit for codes on grid-like storage topologies.
//!
//! The crate builds product, grid and tensor-product codes over finite
//! fields, decides erasure correctability by rank computations, classifies
//! erasure patterns of `T_{m x n}(a, b, h)` topologies and adds global parity
//! constraints to maximally recoverable codes via a Gabidulin inner code.

pub mod codes;
pub mod combinatorics;
pub mod fmatrix;
pub mod gf;
pub mod par;
pub mod topology;

pub use codes::{CodeError, GridCode, LinearCode};
pub use fmatrix::FMatrix;
pub use gf::{make_field, Field, FieldElement, FieldSpec};
pub use par::Execution;
pub use topology::{ErasurePattern, GridTopology};
