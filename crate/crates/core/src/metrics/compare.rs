use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bratteli::EventualDescriptor;
use crate::exact::ExactRational;
use crate::qi::{hausdorff, ideal_of_closed_set, paper_table_descriptor, ClosedSubsetQI, PaperSet, QiError};

use super::{closed_form_dbeta, closed_form_dhausdorff, closed_form_dphi, d_beta, d_phi, MetricError};

/// Which level-set rule turns a closed set into a descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// The printed table; defined for `{2^-m}` and `{2^-n, 2^-(n+k)}` only.
    #[serde(rename = "paper-table")]
    PaperTable,
    /// Support disjointness: the actual ideal of functions vanishing on the set.
    #[serde(rename = "derived")]
    Derived,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PaperTable => "paper-table",
            Self::Derived => "derived",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" | "paper-table" => Ok(Self::PaperTable),
            "derived" => Ok(Self::Derived),
            other => Err(format!("unknown convention \"{other}\" (expected paper or derived)")),
        }
    }
}

pub fn descriptor_for(s: &ClosedSubsetQI, convention: Convention) -> Result<EventualDescriptor, QiError> {
    match convention {
        Convention::PaperTable => Ok(paper_table_descriptor(PaperSet::from_closed_set(s)?)),
        Convention::Derived => Ok(ideal_of_closed_set(s)),
    }
}

/// All three distances between `{2^-m}` and `{2^-n, 2^-(n+k)}`, alongside the
/// closed forms. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub convention: Convention,
    pub set_a: String,
    pub set_b: String,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d_hausdorff: ExactRational,
    pub d_phi: ExactRational,
    pub d_beta: ExactRational,
    pub closed_form_d_hausdorff: ExactRational,
    pub closed_form_d_phi: ExactRational,
    /// Only stated for `m < n`.
    pub closed_form_d_beta: Option<ExactRational>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let cf_beta = self
            .closed_form_d_beta
            .as_ref()
            .map_or_else(|| "n/a".to_string(), ExactRational::to_string);
        format!(
            "convention: {}\nset_a: {}\nset_b: {}\nm: {}\nn: {}\nk: {}\nd_hausdorff: {}\nd_phi: {}\nd_beta: {}\nclosed_form_d_hausdorff: {}\nclosed_form_d_phi: {}\nclosed_form_d_beta: {}\n",
            self.convention,
            self.set_a,
            self.set_b,
            self.m,
            self.n,
            self.k,
            self.d_hausdorff,
            self.d_phi,
            self.d_beta,
            self.closed_form_d_hausdorff,
            self.closed_form_d_phi,
            cf_beta
        )
    }
}

/// Compares a singleton `a = {2^-m}` with a pair `b = {2^-n, 2^-(n+k)}`.
pub fn compare(
    a: &ClosedSubsetQI,
    b: &ClosedSubsetQI,
    convention: Convention,
) -> Result<ComparisonReport, MetricError> {
    let m = match PaperSet::from_closed_set(a)? {
        PaperSet::Singleton { m } => m,
        PaperSet::Pair { .. } => return Err(QiError::NotPaperShape(format!("{a} (expected a singleton)")).into()),
    };
    let (n, k) = match PaperSet::from_closed_set(b)? {
        PaperSet::Pair { n, k } => (n, k),
        PaperSet::Singleton { .. } => return Err(QiError::NotPaperShape(format!("{b} (expected a pair)")).into()),
    };
    let (da, db) = (descriptor_for(a, convention)?, descriptor_for(b, convention)?);
    Ok(ComparisonReport {
        convention,
        set_a: a.to_string(),
        set_b: b.to_string(),
        m,
        n,
        k,
        d_hausdorff: hausdorff(a, b)?,
        d_phi: d_phi(&da, &db),
        d_beta: d_beta(&da, &db)?,
        closed_form_d_hausdorff: closed_form_dhausdorff(m, n, k),
        closed_form_d_phi: closed_form_dphi(m, n, k),
        closed_form_d_beta: closed_form_dbeta(m, n, k).ok(),
    })
}
