use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{pow2, BinaryWord, ExactRational};

use super::QiError;

/// A point of the quantized interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QIPoint {
    /// `2^(1 - index)`, `index >= 1`.
    Index(usize),
    Zero,
}

impl QIPoint {
    pub fn value(&self) -> ExactRational {
        match *self {
            Self::Index(k) => pow2(1 - k as i64),
            Self::Zero => ExactRational::zero(),
        }
    }
}

impl fmt::Display for QIPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl FromStr for QIPoint {
    type Err = QiError;

    /// Accepts `0`, `1`, or `1/N` with `N` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tok = s.trim();
        let bad = |reason: &str| QiError::Parse {
            token: tok.to_string(),
            reason: reason.to_string(),
        };
        let r: ExactRational = tok.parse().map_err(|_| bad("not a rational number"))?;
        if r.is_zero() {
            return Ok(Self::Zero);
        }
        if !r.numer().is_one() {
            return Err(bad("points of the quantized interval are 0, 1, 1/2, 1/4, ..."));
        }
        let d = r.denom();
        let bits = d.bits();
        if *d != BigInt::one() << (bits - 1) {
            return Err(bad("denominator must be a power of two"));
        }
        Ok(Self::Index(bits as usize))
    }
}

/// Closed subset of the quantized interval.
///
/// `word.bit(k)` records whether `x_k` is a member. A set with infinitely many
/// points always contains `0`; a finite set may or may not.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedSubsetQI {
    word: BinaryWord,
    zero: bool,
}

impl ClosedSubsetQI {
    /// Membership of `0` is forced when the word has infinitely many ones.
    pub fn new(word: BinaryWord, zero: bool) -> Self {
        let zero = zero || !word.is_finite();
        Self { word, zero }
    }

    /// Set given by its word alone; contains `0` exactly when it is infinite.
    pub fn from_word(word: BinaryWord) -> Self {
        Self::new(word, false)
    }

    pub fn empty() -> Self {
        Self::new(BinaryWord::zero(), false)
    }

    pub fn from_points<I: IntoIterator<Item = QIPoint>>(points: I) -> Self {
        let mut zero = false;
        let mut indices = Vec::new();
        for p in points {
            match p {
                QIPoint::Index(k) => indices.push(k),
                QIPoint::Zero => zero = true,
            }
        }
        Self::new(BinaryWord::from_indices(indices), zero)
    }

    /// `{2^-m}` for `m >= 0`.
    pub fn dyadic<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        Self::from_points(exponents.into_iter().map(|m| QIPoint::Index(m + 1)))
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn contains_zero(&self) -> bool {
        self.zero
    }

    pub fn is_empty(&self) -> bool {
        !self.zero && self.word.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.word.is_finite()
    }

    pub fn contains(&self, x: QIPoint) -> bool {
        match x {
            QIPoint::Index(k) => self.word.bit(k),
            QIPoint::Zero => self.zero,
        }
    }

    /// Members with index at most `limit`, plus `0` when present.
    pub fn points_up_to(&self, limit: usize) -> Vec<QIPoint> {
        let mut pts: Vec<QIPoint> = self
            .word
            .ones_up_to(limit)
            .into_iter()
            .map(QIPoint::Index)
            .collect();
        if self.zero {
            pts.push(QIPoint::Zero);
        }
        pts
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.word.is_subset_of(&other.word) && (!self.zero || other.zero)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.word.or(&other.word), self.zero || other.zero)
    }
}

impl fmt::Display for ClosedSubsetQI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word.ones() {
            None => write!(f, "{}", self.word),
            Some(_) if self.is_empty() => f.write_str("{}"),
            Some(ones) => {
                let mut parts: Vec<String> = ones
                    .into_iter()
                    .map(|k| QIPoint::Index(k).to_string())
                    .collect();
                if self.zero {
                    parts.push("0".into());
                }
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl fmt::Debug for ClosedSubsetQI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ClosedSubsetQI {
    type Err = QiError;

    /// Either a comma list of points (`1,1/2,1/8,0`), or `head=BITS;period=BITS`.
    /// `{}` and the empty string denote the empty set.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "{}" {
            return Ok(Self::empty());
        }
        if t.starts_with("head=") {
            let word: BinaryWord = t.parse().map_err(|e| QiError::Parse {
                token: t.to_string(),
                reason: format!("{e}"),
            })?;
            return Ok(Self::from_word(word));
        }
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let points = inner
            .split(',')
            .map(str::parse::<QIPoint>)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_points(points))
    }
}
