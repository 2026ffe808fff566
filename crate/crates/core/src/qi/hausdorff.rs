use crate::exact::ExactRational;

use super::{ClosedSubsetQI, QIPoint, QiError};

/// `inf_{y in s} |x - y|`.
pub fn point_distance(x: QIPoint, s: &ClosedSubsetQI) -> Result<ExactRational, QiError> {
    if s.is_empty() {
        return Err(QiError::EmptySet);
    }
    if s.contains(x) {
        return Ok(ExactRational::zero());
    }
    let w = s.word();
    let k = match x {
        QIPoint::Zero => {
            // 0 is not a member, so s is finite and its smallest point is nearest
            let last = w.last_one().expect("nonempty set without 0 has a last point");
            return Ok(QIPoint::Index(last).value());
        }
        QIPoint::Index(k) => k,
    };
    let xv = x.value();
    let mut best: Option<ExactRational> = None;
    if let Some(j) = (1..k).rev().find(|&j| w.bit(j)) {
        best = Some(QIPoint::Index(j).value() - &xv);
    }
    let horizon = k.max(w.head_len()) + w.period_len();
    let below = match (k + 1..=horizon).find(|&j| w.bit(j)) {
        Some(j) => Some(&xv - &QIPoint::Index(j).value()),
        None if s.contains_zero() => Some(xv.clone()),
        None => None,
    };
    Ok(match (best.take(), below) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("nonempty set has a nearest point"),
    })
}

/// Index beyond which no member of `s` realizes the directed sup towards `t`
/// (other than `0`, which is always considered).
///
/// Past both heads the gap pattern repeats with the joint period `L`, and every
/// candidate distance shrinks by `2^-L` per period, or, when `t` is finite,
/// increases towards `d(0, t)`.
pub fn hausdorff_cutoff(s: &ClosedSubsetQI, t: &ClosedSubsetQI) -> usize {
    let (h, l) = s.word().joint_shape(t.word());
    h + 2 * l + 2
}

/// `sup_{x in s} d(x, t)`.
pub fn directed_hausdorff(
    s: &ClosedSubsetQI,
    t: &ClosedSubsetQI,
) -> Result<ExactRational, QiError> {
    if s.is_empty() || t.is_empty() {
        return Err(QiError::EmptySet);
    }
    let cutoff = hausdorff_cutoff(s, t);
    let mut sup = ExactRational::zero();
    for x in s.points_up_to(cutoff) {
        sup = sup.max(point_distance(x, t)?);
    }
    Ok(sup)
}

/// Hausdorff distance under the absolute-value metric.
pub fn hausdorff(s: &ClosedSubsetQI, t: &ClosedSubsetQI) -> Result<ExactRational, QiError> {
    Ok(directed_hausdorff(s, t)?.max(directed_hausdorff(t, s)?))
}
