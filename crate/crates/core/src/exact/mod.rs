//! Exact rational arithmetic, eventually periodic bit words, and the dyadic
//! geometric sums every metric in this crate reduces to.

mod rational;
mod word;

pub use rational::{pow2, ExactRational};
pub use word::{word_weight, BinaryWord};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("empty summation range: {from} > {to}")]
    EmptyRange { from: u64, to: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Upper end of a summation range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upper {
    Finite(u64),
    Infinity,
}

/// `sum_{p=a}^{b} 2^-p`.
pub fn geom_block(a: u64, b: Upper) -> Result<ExactRational, ExactError> {
    geom_block_scaled(1, a, b)
}

/// `sum_{p=a}^{b} 2^-(s*p)` for a step `s >= 1`; `s = 2` gives powers of 1/4.
pub fn geom_block_scaled(s: u64, a: u64, b: Upper) -> Result<ExactRational, ExactError> {
    assert!(s >= 1, "step must be positive");
    let s = s as i64;
    let ratio_tail = ExactRational::one() - pow2(-s);
    let first = pow2(-s * a as i64);
    match b {
        Upper::Infinity => Ok(first / ratio_tail),
        Upper::Finite(b) if b < a => Err(ExactError::EmptyRange { from: a, to: b }),
        Upper::Finite(b) => {
            let past = pow2(-s * (b as i64 + 1));
            Ok((first - past) / ratio_tail)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_sum(a: u64, b: u64) -> ExactRational {
        (a..=b).map(|p| pow2(-(p as i64))).sum()
    }

    #[test]
    fn geom_block_examples() {
        assert_eq!(geom_block(1, Upper::Infinity).unwrap(), ExactRational::one());
        assert_eq!(
            geom_block(1, Upper::Finite(2)).unwrap(),
            ExactRational::new(3, 4)
        );
        assert_eq!(geom_block(3, Upper::Infinity).unwrap(), pow2(-2));
        assert_eq!(
            geom_block(3, Upper::Finite(2)),
            Err(ExactError::EmptyRange { from: 3, to: 2 })
        );
    }

    #[test]
    fn double_series_is_two_thirds() {
        // sum_n 2^-n * sum_{k=1}^n 2^-k = sum_n 2^-n - sum_n 4^-n
        let total = geom_block(1, Upper::Infinity).unwrap()
            - geom_block_scaled(2, 1, Upper::Infinity).unwrap();
        assert_eq!(total, ExactRational::new(2, 3));
        let partial: ExactRational = (1..=30u64)
            .map(|n| pow2(-(n as i64)) * geom_block(1, Upper::Finite(n)).unwrap())
            .sum();
        assert!(partial < total);
        assert!(total - partial < pow2(-29));
    }

    #[test]
    fn geom_block_matches_loop() {
        for a in 1..=20 {
            for b in a..=40 {
                assert_eq!(geom_block(a, Upper::Finite(b)).unwrap(), loop_sum(a, b));
            }
        }
    }

    #[test]
    fn quarter_series() {
        assert_eq!(
            geom_block_scaled(2, 1, Upper::Infinity).unwrap(),
            ExactRational::new(1, 3)
        );
        let direct: ExactRational = (2..=5).map(|p| pow2(-2 * p)).sum();
        assert_eq!(geom_block_scaled(2, 2, Upper::Finite(5)).unwrap(), direct);
    }
}
