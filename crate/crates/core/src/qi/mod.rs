//! The quantized interval `{1, 1/2, 1/4, ...} ∪ {0}`: its closed subsets, the
//! Hausdorff distance between them, and the correspondence with ideal descriptors.
//!
//! Point `x_k = 2^(1-k)` carries index `k >= 1`, so `2^-m` has index `m + 1`.
//! Summand `k < p` of level `p` is spanned by the indicator of `x_k`; summand `p`
//! is the indicator of `[0, x_p]`.

mod closed_set;
mod correspondence;
mod hausdorff;

pub use closed_set::{ClosedSubsetQI, QIPoint};
pub use correspondence::{
    closed_set_of_ideal, ideal_of_closed_set, paper_table_descriptor, support_level_oracle, PaperSet,
};
pub use hausdorff::{directed_hausdorff, hausdorff, hausdorff_cutoff, point_distance};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QiError {
    #[error("distance to the empty set is undefined")]
    EmptySet,
    #[error("descriptor is not the ideal of a closed set: {0}")]
    NotDerivedForm(String),
    #[error("cannot parse \"{token}\": {reason}")]
    Parse { token: String, reason: String },
    #[error("{0} is not of the form {{2^-m}} or {{2^-n, 2^-(n+k)}} with m, n, k >= 1")]
    NotPaperShape(String),
}
