//! Grid topologies, erasure patterns and the correctability pipeline.

use thiserror::Error;

use crate::codes::CodeError;

mod classify;
mod counterexample;
mod enumerate;
mod global;
mod grid;
mod lift;
mod regular;
mod tp;

pub use classify::{
    classify_all, classify_pattern, find_mr_code, is_mr, random_mds_pair, CertificateSearch,
    Certificate, Verdict, VerdictStatus, VerdictSummary,
};
pub use counterexample::{
    counterexample_orbit, counterexample_pattern, find_counterexample_perms, kernel_codeword,
    kernel_codeword_traced, verify_kernel_array, KernelCheck, KernelStep, COUNTEREXAMPLE_CELLS,
};
pub use enumerate::{
    enumerate_regular_max, enumerate_regular_max_capped, smaller_maximal_regular_exists,
    ENUMERATION_CAP,
};
pub use global::{
    add_global_redundancy, emax_global, emax_global_raw, global_parity_rows, pmds_block_code,
};
pub use grid::{ErasurePattern, GridTopology, PatternJson};
pub use lift::{lift_extend, lift_puncture, Lifted};
pub use regular::{is_regular, is_regular_masks, max_pattern_size};
pub use tp::{dual_correctable, tp_correctable_check, TpReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("cell ({row}, {col}) outside a {m}x{n} grid")]
    CellOutOfRange {
        row: usize,
        col: usize,
        m: usize,
        n: usize,
    },
    #[error("pattern shape {got:?} does not match topology shape {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("{count} candidate patterns exceed the enumeration cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("field of order {order} too small for MDS codes of length {needed}")]
    FieldTooSmallForMDS { order: u64, needed: usize },
    #[error("component codes must be [5,3] MDS codes")]
    NotMds,
    #[error("the normalizing element must be nonzero")]
    ZeroGamma,
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("certificate failed verification: {0}")]
    UnsoundCertificate(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl From<crate::fmatrix::MatrixError> for TopologyError {
    fn from(e: crate::fmatrix::MatrixError) -> Self {
        TopologyError::Code(e.into())
    }
}

impl From<crate::gf::GfError> for TopologyError {
    fn from(e: crate::gf::GfError) -> Self {
        TopologyError::Code(e.into())
    }
}

pub type Result<T> = std::result::Result<T, TopologyError>;
