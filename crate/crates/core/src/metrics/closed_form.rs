//! Closed forms for the worked example `A = {2^-m}`, `B = {2^-n, 2^-(n+k)}`.

use crate::exact::{pow2, ExactRational};

use super::MetricError;

fn p(e: usize) -> ExactRational {
    pow2(-(e as i64))
}

/// `2^-(min(m, n) + 1)`, valid for `m != n`. When `m = n` the two shared points
/// agree and the first disagreement moves to level `n + k + 1`.
pub fn closed_form_dphi(m: usize, n: usize, _k: usize) -> ExactRational {
    p(m.min(n) + 1)
}

/// The published closed form `(2^-2(n+k) + 2^-m + 4^-n) / 2`, for `m < n`.
///
/// Summing the printed level-set table gives [`table_sum_dbeta`] instead; the
/// two differ by `(2^-m - 4^-m) / 2`.
pub fn closed_form_dbeta(m: usize, n: usize, k: usize) -> Result<ExactRational, MetricError> {
    if m >= n {
        return Err(MetricError::OutOfHypothesis { m, n });
    }
    Ok((p(2 * (n + k)) + p(m) + p(2 * n)) / ExactRational::from_integer(2))
}

/// `(4^-m + 4^-n + 4^-(n+k)) / 2`: the sum of `2^-(p+r)` over the table's
/// symmetric differences `{m+1}`, `{m+1, n+1}`, `{m+1, n+1, n+k+1}`, for `m < n`.
pub fn table_sum_dbeta(m: usize, n: usize, k: usize) -> Result<ExactRational, MetricError> {
    if m >= n {
        return Err(MetricError::OutOfHypothesis { m, n });
    }
    Ok((p(2 * m) + p(2 * n) + p(2 * (n + k))) / ExactRational::from_integer(2))
}

/// `|2^-m - 2^-(n+k)|` when `m <= n`, else `|2^-m - 2^-n|`.
pub fn closed_form_dhausdorff(m: usize, n: usize, k: usize) -> ExactRational {
    if m <= n {
        (p(m) - p(n + k)).abs()
    } else {
        (p(m) - p(n)).abs()
    }
}

/// Largest possible `d_beta` between ideals whose first disagreement is at level
/// `N`, as a function of `x = d_phi = 2^-N`: `sum_{p >= N} (2^-p - 4^-p) = 2x - 4x^2/3`.
pub fn dbeta_fell_bound(dphi: &ExactRational) -> ExactRational {
    let two = ExactRational::from_integer(2);
    let four_thirds = ExactRational::new(4, 3);
    &(&two * dphi) - &(&four_thirds * &(dphi * dphi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dphi_instances() {
        assert_eq!(closed_form_dphi(1, 2, 1), ExactRational::new(1, 4));
        assert_eq!(closed_form_dphi(1, 2, 2), ExactRational::new(1, 4));
        assert_eq!(closed_form_dphi(5, 3, 7), pow2(-4));
    }

    #[test]
    fn dbeta_instances() {
        assert_eq!(closed_form_dbeta(1, 2, 1).unwrap(), ExactRational::new(37, 128));
        assert_eq!(closed_form_dbeta(1, 2, 2).unwrap(), ExactRational::new(145, 512));
        let half = ExactRational::new(1, 2);
        assert_eq!(
            closed_form_dbeta(2, 5, 3).unwrap(),
            half * (pow2(-16) + pow2(-2) + pow2(-10))
        );
        assert_eq!(
            closed_form_dbeta(3, 3, 1),
            Err(MetricError::OutOfHypothesis { m: 3, n: 3 })
        );
        assert_eq!(table_sum_dbeta(1, 2, 1).unwrap(), ExactRational::new(21, 128));
    }

    #[test]
    fn published_and_summed_forms_differ_by_head_term() {
        for m in 1..6 {
            for n in m + 1..8 {
                for k in 1..5 {
                    let gap = closed_form_dbeta(m, n, k).unwrap() - table_sum_dbeta(m, n, k).unwrap();
                    assert_eq!(gap, (p(m) - p(2 * m)) / ExactRational::from_integer(2));
                }
            }
        }
    }

    #[test]
    fn hausdorff_instances() {
        assert_eq!(closed_form_dhausdorff(1, 2, 1), ExactRational::new(3, 8));
        assert_eq!(closed_form_dhausdorff(1, 2, 2), ExactRational::new(7, 16));
        assert_eq!(closed_form_dhausdorff(3, 2, 1), ExactRational::new(1, 8));
    }

    #[test]
    fn fell_bound_at_level_one_is_two_thirds() {
        assert_eq!(dbeta_fell_bound(&ExactRational::new(1, 2)), ExactRational::new(2, 3));
        assert_eq!(dbeta_fell_bound(&ExactRational::zero()), ExactRational::zero());
    }
}
