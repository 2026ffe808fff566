use std::fmt;
use std::str::FromStr;

use crate::exact::BinaryWord;

use super::{qi_diagram, BratteliDiagram, BratteliError, IndexSet};

/// Anything that yields an index set per level `p >= 1`.
pub trait LevelSets {
    fn level_set(&self, p: usize) -> IndexSet;

    /// Deepest level available, `None` when every level is defined.
    fn available_depth(&self) -> Option<usize>;
}

/// `level_set(i, p) △ level_set(j, p)`.
pub fn symdiff_level<A: LevelSets + ?Sized, B: LevelSets + ?Sized>(
    i: &A,
    j: &B,
    p: usize,
) -> IndexSet {
    i.level_set(p).symmetric_difference(&j.level_set(p))
}

/// Depth-truncated ideal: one index set per level `1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDescriptor {
    sets: Vec<IndexSet>,
}

impl FiniteDescriptor {
    pub fn new(sets: Vec<IndexSet>) -> Result<Self, BratteliError> {
        if sets.is_empty() {
            return Err(BratteliError::DiagramShape("descriptor depth must be positive".into()));
        }
        Ok(Self { sets })
    }

    pub fn empty(depth: usize) -> Self {
        Self {
            sets: vec![IndexSet::new(); depth.max(1)],
        }
    }

    /// Every summand of every level of `d`.
    pub fn full(d: &BratteliDiagram) -> Self {
        Self {
            sets: (1..=d.depth()).map(|n| IndexSet::full(d.width(n))).collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, level: usize) -> &IndexSet {
        &self.sets[level - 1]
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    /// Levelwise containment.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.depth() == other.depth()
            && self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(b))
    }

    fn check_over(&self, d: &BratteliDiagram) -> Result<(), BratteliError> {
        if self.depth() > d.depth() {
            return Err(BratteliError::DepthExceeded {
                depth: self.depth(),
                available: d.depth(),
            });
        }
        for (n, set) in self.sets.iter().enumerate() {
            if let Some(k) = set.max().filter(|&k| k > d.width(n + 1)) {
                return Err(BratteliError::WidthMismatch {
                    level: n + 1,
                    index: k,
                    width: d.width(n + 1),
                });
            }
        }
        Ok(())
    }
}

impl LevelSets for FiniteDescriptor {
    fn level_set(&self, p: usize) -> IndexSet {
        assert!(
            (1..=self.depth()).contains(&p),
            "level {p} outside descriptor depth {}",
            self.depth()
        );
        self.sets[p - 1].clone()
    }

    fn available_depth(&self) -> Option<usize> {
        Some(self.depth())
    }
}

fn saturates(d: &BratteliDiagram, level: usize, k: usize, next: &IndexSet) -> bool {
    let mut succ = d.successors(level, k).peekable();
    succ.peek().is_some() && succ.all(|j| next.contains(j))
}

/// Whether `f` is forward-closed and saturated at every level below its depth.
///
/// Saturation at the last level is not checked, since it depends on levels the
/// descriptor does not carry.
pub fn is_ideal(d: &BratteliDiagram, f: &FiniteDescriptor) -> Result<bool, BratteliError> {
    f.check_over(d)?;
    for level in 1..f.depth() {
        let (cur, next) = (f.set(level), f.set(level + 1));
        for k in 1..=d.width(level) {
            let inside = cur.contains(k);
            if inside && d.successors(level, k).any(|j| !next.contains(j)) {
                return Ok(false);
            }
            if !inside && saturates(d, level, k, next) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest ideal descriptor containing `seed`, by alternating forward propagation
/// and saturation until nothing changes.
pub fn ideal_closure(
    d: &BratteliDiagram,
    seed: &FiniteDescriptor,
) -> Result<FiniteDescriptor, BratteliError> {
    seed.check_over(d)?;
    let mut sets = seed.sets.clone();
    let depth = sets.len();
    loop {
        let mut changed = false;
        for level in 1..depth {
            let targets: Vec<usize> = sets[level - 1]
                .iter()
                .flat_map(|k| d.successors(level, k).collect::<Vec<_>>())
                .collect();
            for j in targets {
                changed |= sets[level].insert(j);
            }
        }
        for level in (1..depth).rev() {
            for k in 1..=d.width(level) {
                if !sets[level - 1].contains(k) && saturates(d, level, k, &sets[level]) {
                    sets[level - 1].insert(k);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(FiniteDescriptor { sets });
        }
    }
}

/// Finitely presented ideal over a diagram with `width(p) = p`.
///
/// Levels `p < p0` are listed explicitly. From `p0` on, level `p` is
/// `{k <= p-1 : excluded.bit(k) = 0}`, together with `p` itself when
/// `include_tail` is set.
///
/// The constructor lowers `p0` as far as the head allows, so derived equality is
/// levelwise equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventualDescriptor {
    p0: usize,
    head: Vec<IndexSet>,
    excluded: BinaryWord,
    include_tail: bool,
}

impl EventualDescriptor {
    pub fn new(
        head: Vec<IndexSet>,
        excluded: BinaryWord,
        include_tail: bool,
    ) -> Result<Self, BratteliError> {
        for (n, set) in head.iter().enumerate() {
            if let Some(k) = set.max().filter(|&k| k > n + 1) {
                return Err(BratteliError::WidthMismatch {
                    level: n + 1,
                    index: k,
                    width: n + 1,
                });
            }
        }
        let mut e = Self {
            p0: head.len() + 1,
            head,
            excluded,
            include_tail,
        };
        while e.p0 > 1 && e.head.last() == Some(&e.eventual_level(e.p0 - 1)) {
            e.head.pop();
            e.p0 -= 1;
        }
        Ok(e)
    }

    /// Descriptor with no explicit head.
    pub fn periodic(excluded: BinaryWord, include_tail: bool) -> Self {
        Self {
            p0: 1,
            head: Vec::new(),
            excluded,
            include_tail,
        }
    }

    /// The whole algebra: every summand at every level.
    pub fn full() -> Self {
        Self::periodic(BinaryWord::zero(), true)
    }

    /// The zero ideal.
    pub fn zero() -> Self {
        Self::periodic(BinaryWord::new(Vec::new(), vec![true]), false)
    }

    pub fn p0(&self) -> usize {
        self.p0
    }

    pub fn head(&self) -> &[IndexSet] {
        &self.head
    }

    pub fn excluded(&self) -> &BinaryWord {
        &self.excluded
    }

    pub fn include_tail(&self) -> bool {
        self.include_tail
    }

    /// The level set given by the periodic description, ignoring the head.
    pub fn eventual_level(&self, p: usize) -> IndexSet {
        let mut set: IndexSet = (1..p).filter(|&k| !self.excluded.bit(k)).collect();
        if self.include_tail {
            set.insert(p);
        }
        set
    }

    /// First `depth` levels as a finite descriptor.
    pub fn truncate(&self, depth: usize) -> FiniteDescriptor {
        FiniteDescriptor {
            sets: (1..=depth.max(1)).map(|p| self.level_set(p)).collect(),
        }
    }

    /// `is_ideal` on the first `depth` levels of the quantized-interval diagram.
    pub fn is_ideal_prefix(&self, depth: usize) -> bool {
        is_ideal(&qi_diagram(depth), &self.truncate(depth)).expect("widths match by construction")
    }
}

impl LevelSets for EventualDescriptor {
    fn level_set(&self, p: usize) -> IndexSet {
        assert!(p >= 1, "levels start at 1");
        if p < self.p0 {
            self.head[p - 1].clone()
        } else {
            self.eventual_level(p)
        }
    }

    fn available_depth(&self) -> Option<usize> {
        None
    }
}

impl fmt::Display for EventualDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(IndexSet::to_string).collect();
        write!(
            f,
            "p0={}; exclude={}; tail={}; head_levels=[{}]",
            self.p0,
            self.excluded,
            u8::from(self.include_tail),
            head.join(",")
        )
    }
}

impl fmt::Debug for EventualDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn split_field<'a>(s: &'a str, key: &str, next: Option<&str>) -> Result<(&'a str, &'a str), BratteliError> {
    let rest = s
        .strip_prefix(key)
        .ok_or_else(|| BratteliError::Parse(format!("expected \"{key}\" at \"{s}\"")))?;
    match next {
        Some(sep) => rest
            .split_once(sep)
            .ok_or_else(|| BratteliError::Parse(format!("expected \"{sep}\" after {key}"))),
        None => Ok((rest, "")),
    }
}

fn split_sets(list: &str) -> Result<Vec<IndexSet>, BratteliError> {
    let inner = list
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| BratteliError::Parse(format!("expected [...], got \"{list}\"")))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let end = rest
            .find('}')
            .ok_or_else(|| BratteliError::Parse(format!("unterminated set in \"{inner}\"")))?;
        out.push(rest[..=end].parse()?);
        rest = rest[end + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

impl FromStr for EventualDescriptor {
    type Err = BratteliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (p0, rest) = split_field(s, "p0=", Some("; "))?;
        let (word, rest) = split_field(rest, "exclude=", Some("; tail="))?;
        let (tail, rest) = rest
            .split_once("; ")
            .ok_or_else(|| BratteliError::Parse("expected \"; head_levels=\"".into()))?;
        let (levels, _) = split_field(rest, "head_levels=", None)?;
        let p0: usize = p0
            .trim()
            .parse()
            .map_err(|_| BratteliError::Parse(format!("bad p0 \"{p0}\"")))?;
        let excluded: BinaryWord = word.parse().map_err(|e| BratteliError::Parse(format!("{e}")))?;
        let include_tail = match tail.trim() {
            "0" => false,
            "1" => true,
            other => return Err(BratteliError::Parse(format!("bad tail flag \"{other}\""))),
        };
        let head = split_sets(levels)?;
        if p0 == 0 || head.len() + 1 != p0 {
            return Err(BratteliError::Parse(format!(
                "p0={p0} needs {} head levels, got {}",
                p0.saturating_sub(1),
                head.len()
            )));
        }
        Self::new(head, excluded, include_tail)
    }
}
