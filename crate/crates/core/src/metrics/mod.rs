//! Metrics on ideal descriptors: the first-disagreement metric `d_phi`, the
//! summand-weighted symmetric-difference metric `d_beta`, and the Hausdorff
//! distance between the zero sets of two ideals of the quantized interval.

mod certified;
mod closed_form;
mod compare;

pub use certified::CertifiedValue;
pub use closed_form::{
    closed_form_dbeta, closed_form_dhausdorff, closed_form_dphi, dbeta_fell_bound, table_sum_dbeta,
};
pub use compare::{compare, descriptor_for, ComparisonReport, Convention};

use thiserror::Error;

use crate::bratteli::{symdiff_level, EventualDescriptor, FiniteDescriptor, IndexSet, LevelSets};
use crate::exact::{geom_block, geom_block_scaled, pow2, word_weight, BinaryWord, ExactRational, Upper};
use crate::qi::{closed_set_of_ideal, hausdorff, QiError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("symmetric difference is not eventually constant; use d_beta_truncated")]
    NotEventuallyConstant,
    #[error("descriptor depths differ: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("descriptor has depth {available}, {needed} levels requested")]
    TooShallow { needed: usize, available: usize },
    #[error("empty spectrum: the full algebra has no zero set, so its Hausdorff distance is undefined")]
    EmptySpectrum,
    #[error("closed form needs m < n, got m = {m}, n = {n}")]
    OutOfHypothesis { m: usize, n: usize },
    #[error(transparent)]
    Qi(#[from] QiError),
}

/// Sum of `2^-(p+k)` over `k` in `set`.
fn level_weight(p: usize, set: &IndexSet) -> ExactRational {
    set.iter().map(|k| pow2(-((p + k) as i64))).sum()
}

/// Least level at which the two descriptors differ, or `None` if they agree everywhere.
pub fn first_disagreement(i: &EventualDescriptor, j: &EventualDescriptor) -> Option<usize> {
    let boundary = i.p0().max(j.p0());
    if let Some(p) = (1..boundary).find(|&p| i.level_set(p) != j.level_set(p)) {
        return Some(p);
    }
    // from `boundary` on, level p compares bits 1..p-1 and the tail flags
    let by_tail = (i.include_tail() != j.include_tail()).then_some(boundary);
    let by_word = i
        .excluded()
        .first_difference(j.excluded())
        .map(|k| boundary.max(k + 1));
    by_tail.into_iter().chain(by_word).min()
}

/// `2^-m*` for the first level `m*` of disagreement, `0` for equal ideals.
pub fn d_phi(i: &EventualDescriptor, j: &EventualDescriptor) -> ExactRational {
    match first_disagreement(i, j) {
        Some(p) => pow2(-(p as i64)),
        None => ExactRational::zero(),
    }
}

/// `d_phi` on depth-truncated descriptors. When they agree on every available
/// level the value is only known to lie in `[0, 2^-(D+1)]`.
pub fn d_phi_truncated(
    i: &FiniteDescriptor,
    j: &FiniteDescriptor,
) -> Result<CertifiedValue, MetricError> {
    if i.depth() != j.depth() {
        return Err(MetricError::DepthMismatch {
            left: i.depth(),
            right: j.depth(),
        });
    }
    let depth = i.depth();
    Ok(match (1..=depth).find(|&p| i.set(p) != j.set(p)) {
        Some(p) => CertifiedValue::Exact(pow2(-(p as i64))),
        None => CertifiedValue::interval(ExactRational::zero(), pow2(-(depth as i64 + 1))),
    })
}

/// Exact `d_beta` when the difference of the excluded words is finite.
///
/// Beyond the last explicit level and the last differing excluded index, every
/// level's symmetric difference is a fixed finite set `F`, plus the level's own
/// tail index when the tail flags differ. That stretch then contributes
/// `2^(1-p*) * sum_{k in F} 2^-k`, plus `sum_{p >= p*} 4^-p` for differing flags.
pub fn d_beta(i: &EventualDescriptor, j: &EventualDescriptor) -> Result<ExactRational, MetricError> {
    let diff: BinaryWord = i.excluded().xor(j.excluded());
    if !diff.is_finite() {
        return Err(MetricError::NotEventuallyConstant);
    }
    let boundary = i
        .p0()
        .max(j.p0())
        .max(diff.last_one().map_or(1, |k| k + 1));
    let head: ExactRational = (1..boundary)
        .map(|p| level_weight(p, &symdiff_level(i, j, p)))
        .sum();
    let start = boundary as u64;
    let mut tail = geom_block(start, Upper::Infinity).expect("infinite range") * word_weight(&diff, 1);
    if i.include_tail() != j.include_tail() {
        tail = tail + geom_block_scaled(2, start, Upper::Infinity).expect("infinite range");
    }
    Ok(head + tail)
}

/// `[S_N, S_N + 2^-N]`, where `S_N` sums levels `1..=N`. The levels past `N`
/// add at most `sum_{p > N} 2^-p = 2^-N`.
pub fn d_beta_truncated<A, B>(i: &A, j: &B, depth: usize) -> Result<CertifiedValue, MetricError>
where
    A: LevelSets + ?Sized,
    B: LevelSets + ?Sized,
{
    assert!(depth >= 1, "truncation depth must be positive");
    for available in [i.available_depth(), j.available_depth()].into_iter().flatten() {
        if available < depth {
            return Err(MetricError::TooShallow {
                needed: depth,
                available,
            });
        }
    }
    let partial: ExactRational = (1..=depth)
        .map(|p| level_weight(p, &symdiff_level(i, j, p)))
        .sum();
    let hi = &partial + &pow2(-(depth as i64));
    Ok(CertifiedValue::interval(partial, hi))
}

/// Hausdorff distance between the zero sets of two ideals of the quantized interval.
pub fn d_hausdorff_ideal(
    i: &EventualDescriptor,
    j: &EventualDescriptor,
) -> Result<ExactRational, MetricError> {
    let s = closed_set_of_ideal(i)?;
    let t = closed_set_of_ideal(j)?;
    if s.is_empty() || t.is_empty() {
        return Err(MetricError::EmptySpectrum);
    }
    Ok(hausdorff(&s, &t)?)
}
