use std::fmt;

use crate::exact::ExactRational;

/// A metric value that is either known exactly or bracketed by a rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifiedValue {
    Exact(ExactRational),
    Interval { lo: ExactRational, hi: ExactRational },
}

impl CertifiedValue {
    pub fn interval(lo: ExactRational, hi: ExactRational) -> Self {
        assert!(lo <= hi, "interval bounds out of order: {lo} > {hi}");
        Self::Interval { lo, hi }
    }

    pub fn lo(&self) -> &ExactRational {
        match self {
            Self::Exact(v) => v,
            Self::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &ExactRational {
        match self {
            Self::Exact(v) => v,
            Self::Interval { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> ExactRational {
        self.hi() - self.lo()
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.lo() <= other.lo() && other.hi() <= self.hi()
    }

    pub fn exact(&self) -> Option<&ExactRational> {
        match self {
            Self::Exact(v) => Some(v),
            Self::Interval { .. } => None,
        }
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(v) => write!(f, "{v}"),
            Self::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}
