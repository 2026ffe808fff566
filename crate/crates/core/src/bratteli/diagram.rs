use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::BratteliError;

/// Edge multiplicities from level `n` to level `n + 1`, keyed by `(k, j)`.
pub type EdgeMap = BTreeMap<(usize, usize), u64>;

/// A finite truncation of a Bratteli diagram: per-level summand dimensions and
/// the multiplicities of the embeddings between consecutive levels.
///
/// Levels and summand indices are 1-based throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    dims: Vec<Vec<u64>>,
    edges: Vec<EdgeMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `dims(level)(index) != sum_k edges(level-1)(k, index) * dims(level-1)(k)`.
    Unitality {
        level: usize,
        index: usize,
        expected: u64,
        actual: u64,
    },
    /// A summand at `level > 1` with no incoming positive-multiplicity edge.
    Orphan { level: usize, index: usize },
    /// A summand below the last level with no outgoing edge (the embedding is not injective).
    DeadEnd { level: usize, index: usize },
    /// An edge endpoint outside the widths of its two levels.
    EdgeOutOfRange { level: usize, from: usize, to: usize },
    ZeroDimension { level: usize, index: usize },
    EmptyLevel { level: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unitality {
                level,
                index,
                expected,
                actual,
            } => write!(
                f,
                "unitality: level {level} summand {index} has dim {actual}, embedding gives {expected}"
            ),
            Self::Orphan { level, index } => {
                write!(f, "orphan: level {level} summand {index} has no incoming edge")
            }
            Self::DeadEnd { level, index } => {
                write!(f, "dead end: level {level} summand {index} has no outgoing edge")
            }
            Self::EdgeOutOfRange { level, from, to } => {
                write!(f, "edge {from}>{to} out of range between levels {level} and {}", level + 1)
            }
            Self::ZeroDimension { level, index } => {
                write!(f, "zero dimension at level {level} summand {index}")
            }
            Self::EmptyLevel { level } => write!(f, "level {level} has no summands"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl BratteliDiagram {
    /// Builds a diagram; only the shape (one edge map per gap) is checked here.
    /// Use [`validate_diagram`] for the structural invariants.
    pub fn new(dims: Vec<Vec<u64>>, edges: Vec<EdgeMap>) -> Result<Self, BratteliError> {
        if dims.is_empty() {
            return Err(BratteliError::DiagramShape("diagram has no levels".into()));
        }
        if edges.len() + 1 != dims.len() {
            return Err(BratteliError::DiagramShape(format!(
                "{} levels need {} edge maps, got {}",
                dims.len(),
                dims.len() - 1,
                edges.len()
            )));
        }
        Ok(Self { dims, edges })
    }

    pub fn depth(&self) -> usize {
        self.dims.len()
    }

    pub fn width(&self, level: usize) -> usize {
        self.dims[level - 1].len()
    }

    pub fn dims(&self, level: usize) -> &[u64] {
        &self.dims[level - 1]
    }

    /// Edges from `level` to `level + 1`.
    pub fn edges(&self, level: usize) -> &EdgeMap {
        &self.edges[level - 1]
    }

    pub fn multiplicity(&self, level: usize, k: usize, j: usize) -> u64 {
        self.edges(level).get(&(k, j)).copied().unwrap_or(0)
    }

    /// Summands at `level + 1` reached from summand `k` at `level`.
    pub fn successors(&self, level: usize, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges(level)
            .range((k, 0)..(k + 1, 0))
            .filter(|(_, &m)| m > 0)
            .map(|(&(_, j), _)| j)
    }

    /// DOT rendering; vertices are labelled by dimension, edges by multiplicity when above one.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (n, row) in self.dims.iter().enumerate() {
            out.push_str("  { rank=same;");
            for k in 1..=row.len() {
                out.push_str(&format!(" v{}_{};", n + 1, k));
            }
            out.push_str(" }\n");
            for (k, d) in row.iter().enumerate() {
                out.push_str(&format!("  v{}_{} [label=\"{}\"];\n", n + 1, k + 1, d));
            }
        }
        for (n, map) in self.edges.iter().enumerate() {
            for (&(k, j), &m) in map.iter().filter(|(_, &m)| m > 0) {
                if m == 1 {
                    out.push_str(&format!("  v{}_{} -> v{}_{};\n", n + 1, k, n + 2, j));
                } else {
                    out.push_str(&format!(
                        "  v{}_{} -> v{}_{} [label=\"{}\"];\n",
                        n + 1,
                        k,
                        n + 2,
                        j,
                        m
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Reports every violated structural invariant; an empty report means valid.
pub fn validate_diagram(d: &BratteliDiagram) -> ValidationReport {
    let mut violations = Vec::new();
    for level in 1..=d.depth() {
        if d.width(level) == 0 {
            violations.push(Violation::EmptyLevel { level });
        }
        for (i, &dim) in d.dims(level).iter().enumerate() {
            if dim == 0 {
                violations.push(Violation::ZeroDimension { level, index: i + 1 });
            }
        }
    }
    for level in 1..d.depth() {
        let (lo, hi) = (d.width(level), d.width(level + 1));
        let mut in_range = true;
        for &(k, j) in d.edges(level).keys() {
            if k == 0 || k > lo || j == 0 || j > hi {
                violations.push(Violation::EdgeOutOfRange { level, from: k, to: j });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        for k in 1..=lo {
            if d.successors(level, k).next().is_none() {
                violations.push(Violation::DeadEnd { level, index: k });
            }
        }
        for j in 1..=hi {
            let mut incoming = false;
            let mut expected = 0u64;
            for k in 1..=lo {
                let m = d.multiplicity(level, k, j);
                incoming |= m > 0;
                expected += m * d.dims(level)[k - 1];
            }
            if !incoming {
                violations.push(Violation::Orphan { level: level + 1, index: j });
            }
            let actual = d.dims(level + 1)[j - 1];
            if actual != expected {
                violations.push(Violation::Unitality {
                    level: level + 1,
                    index: j,
                    expected,
                    actual,
                });
            }
        }
    }
    ValidationReport { violations }
}

/// The diagram of the continuous functions on the quantized interval: level `n`
/// has `n` one-dimensional summands, summands `k < n` are points and summand `n`
/// is the tail, which splits into the new point `n` and the new tail `n + 1`.
pub fn qi_diagram(depth: usize) -> BratteliDiagram {
    assert!(depth >= 1, "depth must be at least 1");
    let dims = (1..=depth).map(|n| vec![1; n]).collect();
    let edges = (1..depth)
        .map(|n| {
            let mut map: EdgeMap = (1..n).map(|k| ((k, k), 1)).collect();
            map.insert((n, n), 1);
            map.insert((n, n + 1), 1);
            map
        })
        .collect();
    BratteliDiagram { dims, edges }
}

impl fmt::Display for BratteliDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, row) in self.dims.iter().enumerate() {
            let dims: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "dims: {}", dims.join(" "))?;
            if let Some(map) = self.edges.get(n) {
                let edges: Vec<String> = map
                    .iter()
                    .filter(|(_, &m)| m > 0)
                    .map(|(&(k, j), m)| format!("{k}>{j}:{m}"))
                    .collect();
                writeln!(f, "edges: {}", edges.join(" "))?;
            }
        }
        Ok(())
    }
}

fn parse_edge(tok: &str) -> Result<((usize, usize), u64), BratteliError> {
    let bad = || BratteliError::Parse(format!("bad edge \"{tok}\", expected k>j:m"));
    let (kj, m) = tok.split_once(':').ok_or_else(bad)?;
    let (k, j) = kj.split_once('>').ok_or_else(bad)?;
    Ok((
        (k.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?),
        m.parse().map_err(|_| bad())?,
    ))
}

impl FromStr for BratteliDiagram {
    type Err = BratteliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut dims = Vec::new();
        let mut edges = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("dims:") {
                if dims.len() != edges.len() {
                    return Err(BratteliError::Parse(format!(
                        "line {}: dims line must follow an edges line",
                        lineno + 1
                    )));
                }
                let row = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u64>()
                            .map_err(|_| BratteliError::Parse(format!("bad dimension \"{t}\"")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                dims.push(row);
            } else if let Some(rest) = line.strip_prefix("edges:") {
                if dims.len() != edges.len() + 1 {
                    return Err(BratteliError::Parse(format!(
                        "line {}: edges line must follow a dims line",
                        lineno + 1
                    )));
                }
                let map = rest
                    .split_whitespace()
                    .map(parse_edge)
                    .collect::<Result<EdgeMap, _>>()?;
                edges.push(map);
            } else {
                return Err(BratteliError::Parse(format!(
                    "line {}: expected \"dims:\" or \"edges:\"",
                    lineno + 1
                )));
            }
        }
        Self::new(dims, edges)
    }
}
