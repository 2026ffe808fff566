//! Bratteli diagrams and ideals as levelwise index sets.
//!
//! An ideal of an AF algebra meets each level in a direct sum of whole simple
//! summands, so it is recorded as one set of summand indices per level. Those
//! sets are forward-closed along the diagram's edges and saturated backwards.

mod descriptor;
mod diagram;
mod index_set;

pub use descriptor::{
    ideal_closure, is_ideal, symdiff_level, EventualDescriptor, FiniteDescriptor, LevelSets,
};
pub use diagram::{qi_diagram, validate_diagram, BratteliDiagram, EdgeMap, ValidationReport, Violation};
pub use index_set::IndexSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BratteliError {
    #[error("level {level} uses index {index} but has width {width}")]
    WidthMismatch {
        level: usize,
        index: usize,
        width: usize,
    },
    #[error("descriptor depth {depth} exceeds diagram depth {available}")]
    DepthExceeded { depth: usize, available: usize },
    #[error("malformed diagram: {0}")]
    DiagramShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}
