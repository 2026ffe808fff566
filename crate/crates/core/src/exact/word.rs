use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::rational::{pow2, ExactRational};
use super::ExactError;

/// An eventually periodic bit sequence `bit(1), bit(2), ...`, stored as a finite head
/// followed by a repeating period.
///
/// Construction always canonicalizes: the period is primitive and the head is as
/// short as possible, so derived equality coincides with equality of the infinite
/// sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    head: Vec<bool>,
    period: Vec<bool>,
}

impl BinaryWord {
    pub fn new(head: Vec<bool>, period: Vec<bool>) -> Self {
        let mut w = Self { head, period };
        w.canonicalize();
        w
    }

    /// The all-zero word.
    pub fn zero() -> Self {
        Self::new(Vec::new(), vec![false])
    }

    /// A word with finitely many ones.
    pub fn finite(head: Vec<bool>) -> Self {
        Self::new(head, vec![false])
    }

    /// Finite word with ones exactly at the given 1-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut head = Vec::new();
        for k in indices {
            assert!(k >= 1, "word indices start at 1");
            if head.len() < k {
                head.resize(k, false);
            }
            head[k - 1] = true;
        }
        Self::finite(head)
    }

    fn canonicalize(&mut self) {
        if self.period.is_empty() {
            self.period.push(false);
        }
        let len = self.period.len();
        if let Some(d) = (1..len)
            .filter(|&d| len.is_multiple_of(d))
            .find(|&d| (d..len).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        while let Some(&last) = self.head.last() {
            if last != *self.period.last().expect("period is nonempty") {
                break;
            }
            self.head.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn head(&self) -> &[bool] {
        &self.head
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// `bit(k)` for `k >= 1`.
    pub fn bit(&self, k: usize) -> bool {
        assert!(k >= 1, "word indices start at 1");
        if k <= self.head.len() {
            self.head[k - 1]
        } else {
            self.period[(k - self.head.len() - 1) % self.period.len()]
        }
    }

    /// True when only finitely many bits are set.
    pub fn is_finite(&self) -> bool {
        self.period == [false]
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.head.is_empty()
    }

    /// Indices of set bits, when there are finitely many.
    pub fn ones(&self) -> Option<Vec<usize>> {
        self.is_finite().then(|| self.ones_up_to(self.head.len()))
    }

    pub fn ones_up_to(&self, limit: usize) -> Vec<usize> {
        (1..=limit).filter(|&k| self.bit(k)).collect()
    }

    /// Largest set index of a finite word.
    pub fn last_one(&self) -> Option<usize> {
        if self.is_finite() {
            // canonical finite words end in a one
            (!self.head.is_empty()).then_some(self.head.len())
        } else {
            None
        }
    }

    /// Length after which both words are jointly periodic, and the joint period.
    pub fn joint_shape(&self, other: &Self) -> (usize, usize) {
        (
            self.head.len().max(other.head.len()),
            self.period.len().lcm(&other.period.len()),
        )
    }

    /// Bitwise exclusive or.
    pub fn xor(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let (h, l) = self.joint_shape(other);
        let bits = |r: std::ops::RangeInclusive<usize>| -> Vec<bool> {
            r.map(|k| f(self.bit(k), other.bit(k))).collect()
        };
        Self::new(bits(1..=h), bits(h + 1..=h + l))
    }

    /// Smallest index at which the two words differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let (h, l) = self.joint_shape(other);
        (1..=h + l).find(|&k| self.bit(k) != other.bit(k))
    }

    /// Every bit set in `self` is set in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        let (h, l) = self.joint_shape(other);
        (1..=h + l).all(|k| !self.bit(k) || other.bit(k))
    }

    pub fn bits_string(bits: &[bool]) -> String {
        bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// `sum over k >= from_index with bit(k) = 1 of 2^-k`, exactly.
pub fn word_weight(w: &BinaryWord, from_index: usize) -> ExactRational {
    let from = from_index.max(1);
    let h = w.head_len();
    let mut total: ExactRational = (from..=h)
        .filter(|&k| w.bit(k))
        .map(|k| pow2(-(k as i64)))
        .sum();
    let start = from.max(h + 1);
    let len = w.period_len();
    let block: ExactRational = (0..len)
        .map(|i| start + i)
        .filter(|&k| w.bit(k))
        .map(|k| pow2(-(k as i64)))
        .sum();
    if !block.is_zero() {
        let ratio = ExactRational::one() - pow2(-(len as i64));
        total = total + block / ratio;
    }
    total
}

fn parse_bits(s: &str) -> Result<Vec<bool>, ExactError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(ExactError::Parse(format!("bad bit '{c}' in \"{s}\""))),
        })
        .collect()
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "head={};period={}",
            Self::bits_string(&self.head),
            Self::bits_string(&self.period)
        )
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryWord {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (head, period) = t
            .split_once(';')
            .ok_or_else(|| ExactError::Parse(format!("expected head=BITS;period=BITS, got \"{t}\"")))?;
        let head = head
            .trim()
            .strip_prefix("head=")
            .ok_or_else(|| ExactError::Parse(format!("missing head= in \"{t}\"")))?;
        let period = period
            .trim()
            .strip_prefix("period=")
            .ok_or_else(|| ExactError::Parse(format!("missing period= in \"{t}\"")))?;
        Ok(Self::new(parse_bits(head)?, parse_bits(period)?))
    }
}
