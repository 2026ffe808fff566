//! Exact metrics on the ideal space of AF algebras.
//!
//! Ideals are described level by level as sets of simple summands of the
//! inductive sequence ([`bratteli`]). On top of that sit the first-disagreement
//! metric, the summand-weighted symmetric-difference metric, and, for the
//! quantized interval ([`qi`]), the Hausdorff distance between zero sets
//! ([`metrics`]). All values are exact rationals ([`exact`]).

pub mod bratteli;
pub mod check;
pub mod cli;
pub mod exact;
pub mod metrics;
pub mod qi;
pub mod sample;
