use std::fmt;

use crate::bratteli::{EventualDescriptor, IndexSet, LevelSets};

use super::{ClosedSubsetQI, QIPoint, QiError};

/// Whether `s` meets the tail support `[0, x_p]`.
fn meets_tail(s: &ClosedSubsetQI, p: usize) -> bool {
    if s.contains_zero() {
        return true;
    }
    // finite without 0: meets iff some member has index >= p
    s.word().last_one().is_some_and(|last| last >= p)
}

/// Level `p` of the ideal of functions vanishing on `s`: summand `k` belongs to
/// it exactly when the support of its spanning indicator misses `s`.
fn support_level(s: &ClosedSubsetQI, p: usize) -> IndexSet {
    let mut set: IndexSet = (1..p).filter(|&k| !s.word().bit(k)).collect();
    if !meets_tail(s, p) {
        set.insert(p);
    }
    set
}

/// The ideal `I(s)` of functions vanishing on `s`.
pub fn ideal_of_closed_set(s: &ClosedSubsetQI) -> EventualDescriptor {
    if s.contains_zero() {
        return EventualDescriptor::periodic(s.word().clone(), false);
    }
    let last = s.word().last_one().unwrap_or(0);
    let head = (1..=last).map(|p| support_level(s, p)).collect();
    EventualDescriptor::new(head, s.word().clone(), true).expect("support levels fit their widths")
}

/// Inverse of [`ideal_of_closed_set`]: the common zero set of the ideal.
pub fn closed_set_of_ideal(e: &EventualDescriptor) -> Result<ClosedSubsetQI, QiError> {
    if e.include_tail() && !e.excluded().is_finite() {
        return Err(QiError::NotDerivedForm(format!(
            "{e}: infinitely many excluded points but the tail summand is included"
        )));
    }
    let s = ClosedSubsetQI::new(e.excluded().clone(), !e.include_tail());
    let back = ideal_of_closed_set(&s);
    if &back != e {
        let p = (1..=e.p0().max(back.p0()))
            .find(|&p| e.level_set(p) != back.level_set(p))
            .unwrap_or(1);
        return Err(QiError::NotDerivedForm(format!(
            "{e}: level {p} is {} but the ideal of {s} has {}",
            e.level_set(p),
            back.level_set(p)
        )));
    }
    Ok(s)
}

/// The two closed-set shapes compared in the worked example:
/// `{2^-m}` and `{2^-n, 2^-(n+k)}`, all parameters at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaperSet {
    Singleton { m: usize },
    Pair { n: usize, k: usize },
}

impl PaperSet {
    pub fn closed_set(&self) -> ClosedSubsetQI {
        match *self {
            Self::Singleton { m } => ClosedSubsetQI::dyadic([m]),
            Self::Pair { n, k } => ClosedSubsetQI::dyadic([n, n + k]),
        }
    }

    /// Indices of the member points.
    fn indices(&self) -> Vec<usize> {
        match *self {
            Self::Singleton { m } => vec![m + 1],
            Self::Pair { n, k } => vec![n + 1, n + k + 1],
        }
    }

    pub fn from_closed_set(s: &ClosedSubsetQI) -> Result<Self, QiError> {
        let shape_err = || QiError::NotPaperShape(s.to_string());
        if s.contains_zero() {
            return Err(shape_err());
        }
        match s.word().ones().as_deref() {
            Some(&[i]) if i >= 2 => Ok(Self::Singleton { m: i - 1 }),
            Some(&[i, j]) if i >= 2 => Ok(Self::Pair { n: i - 1, k: j - i }),
            _ => Err(shape_err()),
        }
    }
}

impl fmt::Display for PaperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Singleton { m } => write!(f, "{{2^-{m}}}"),
            Self::Pair { n, k } => write!(f, "{{2^-{n}, 2^-{}}}", n + k),
        }
    }
}

/// Descriptor reproducing the printed level-set table for [`PaperSet`] shapes.
///
/// The table treats the tail summand `p` as if it were the single point `x_p`:
/// summand `k <= p` is kept iff `x_k` is not in the set. For `p <= m` this keeps
/// the tail even though its support contains `2^-m`, so these descriptors are not
/// ideals in general; see [`ideal_of_closed_set`] for the support rule.
pub fn paper_table_descriptor(shape: PaperSet) -> EventualDescriptor {
    let indices = shape.indices();
    let last = *indices.last().expect("shape has a point");
    let head = (1..=last)
        .map(|p| (1..=p).filter(|k| !indices.contains(k)).collect())
        .collect();
    let s = shape.closed_set();
    EventualDescriptor::new(head, s.word().clone(), true).expect("table levels fit their widths")
}

/// Brute-force level set by direct support test, point by point. Used as an oracle.
pub fn support_level_oracle(s: &ClosedSubsetQI, p: usize) -> IndexSet {
    let horizon = s.word().head_len() + s.word().period_len() + p + 1;
    (1..=p)
        .filter(|&k| {
            let support: Vec<QIPoint> = if k < p {
                vec![QIPoint::Index(k)]
            } else {
                (p..=horizon).map(QIPoint::Index).chain([QIPoint::Zero]).collect()
            };
            support.iter().all(|&x| !s.contains(x))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> ClosedSubsetQI {
        s.parse().unwrap()
    }

    #[test]
    fn ideal_of_half() {
        let e = ideal_of_closed_set(&set("1/2"));
        assert_eq!(e.level_set(1), IndexSet::new());
        assert_eq!(e.level_set(2), [1].into());
        assert_eq!(e.level_set(3), [1, 3].into());
        assert_eq!(e.level_set(3), support_level_oracle(&set("1/2"), 3));
    }

    #[test]
    fn ideal_of_empty_and_zero() {
        assert_eq!(ideal_of_closed_set(&set("{}")), EventualDescriptor::full());
        let z = ideal_of_closed_set(&set("0"));
        for p in 1..20 {
            assert_eq!(z.level_set(p), (1..p).collect());
        }
    }

    #[test]
    fn round_trips() {
        for text in ["1,1/4", "0", "{}", "1/2,0", "head=;period=10", "head=01;period=110"] {
            let s = set(text);
            assert_eq!(closed_set_of_ideal(&ideal_of_closed_set(&s)).unwrap(), s);
        }
        assert_eq!(closed_set_of_ideal(&EventualDescriptor::full()).unwrap(), set("{}"));
    }

    #[test]
    fn paper_table_is_not_derived_form() {
        let e = paper_table_descriptor(PaperSet::Singleton { m: 1 });
        assert!(matches!(closed_set_of_ideal(&e), Err(QiError::NotDerivedForm(_))));
        let bad = EventualDescriptor::periodic("head=;period=1".parse().unwrap(), true);
        assert!(closed_set_of_ideal(&bad).is_err());
    }

    #[test]
    fn paper_table_examples() {
        let a = paper_table_descriptor(PaperSet::Singleton { m: 1 });
        assert_eq!(a.level_set(1), [1].into());
        assert_eq!(a.level_set(2), [1].into());
        assert_eq!(a.level_set(3), [1, 3].into());
        let b = paper_table_descriptor(PaperSet::Pair { n: 2, k: 1 });
        assert_eq!(b.level_set(4), [1, 2].into());
        assert_eq!(b.level_set(5), [1, 2, 5].into());
    }

    #[test]
    fn paper_shapes() {
        assert_eq!(
            PaperSet::from_closed_set(&set("1/4,1/16")).unwrap(),
            PaperSet::Pair { n: 2, k: 2 }
        );
        assert_eq!(
            PaperSet::from_closed_set(&set("1/2")).unwrap(),
            PaperSet::Singleton { m: 1 }
        );
        assert!(PaperSet::from_closed_set(&set("1")).is_err());
        assert!(PaperSet::from_closed_set(&set("1/2,0")).is_err());
        assert!(PaperSet::from_closed_set(&set("1/2,1/4,1/8")).is_err());
    }
}
