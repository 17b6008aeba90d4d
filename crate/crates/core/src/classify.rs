//! Dimension test for special families and the resulting verdicts.
//!
//! For a family with no repeating factors, the closure of its Torelli image
//! is totally geodesic iff it is special iff `dim M_{g',r} = dim S(G)`, where
//! `S(G)` is the PEL special subvariety cut out by the group action. With
//! repeating factors nothing is concluded.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{family_dimension, total_genus, MonodromyDatum};
use crate::eigenspaces::chevalley_weil;
use crate::error::{Error, Result};
use crate::factors::{
    decompose, dim_special, dim_special_via_sym2, no_repeating, render_product, FactorList,
    GroupFactor,
};

/// Genus from which no special family with distinct factors exists.
pub const SPECIAL_GENUS_LIMIT: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub dim_family: u64,
    pub dim_sg: u64,
    pub dim_sg_crosscheck: u64,
    pub holds: bool,
    /// `dim_sg - dim_family`, when nonnegative.
    pub deficiency: Option<u64>,
    /// `dim_family > dim_sg`; never expected.
    pub anomaly: bool,
}

fn star_from(datum: &MonodromyDatum, factors: &FactorList, sym2: u64) -> Result<StarReport> {
    let dim_family = family_dimension(datum);
    let dim_sg = dim_special(factors);
    if dim_sg != sym2 {
        return Err(Error::Internal(format!(
            "dim S(G) for {datum}: {dim_sg} from factors, {sym2} from S^2 characters"
        )));
    }
    Ok(StarReport {
        dim_family,
        dim_sg,
        dim_sg_crosscheck: sym2,
        holds: dim_family == dim_sg,
        deficiency: dim_sg.checked_sub(dim_family),
        anomaly: dim_family > dim_sg,
    })
}

pub fn star_condition(datum: &MonodromyDatum) -> Result<StarReport> {
    let profile = chevalley_weil(datum)?;
    let factors = decompose(&profile, datum.genus_base());
    star_from(datum, &factors, dim_special_via_sym2(&profile))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    TotallyGeodesicAndSpecial,
    NotTotallyGeodesic,
    OutsideHypotheses,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::TotallyGeodesicAndSpecial => "TotallyGeodesicAndSpecial",
            Status::NotTotallyGeodesic => "NotTotallyGeodesic",
            Status::OutsideHypotheses => "OutsideHypotheses",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Qualifier {
    Exact,
    LowerAndUpperBound,
    UpperBoundOnly,
}

/// Identity component of the monodromy group, as factor labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub qualifier: Qualifier,
    /// Known to be contained in the monodromy group.
    pub lower: Option<Vec<GroupFactor>>,
    /// Known to contain the monodromy group.
    pub upper: Vec<GroupFactor>,
}

struct Product<'a>(&'a [GroupFactor]);

impl fmt::Display for Product<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_product(f, self.0.iter())
    }
}

impl fmt::Display for MonodromyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.qualifier, &self.lower) {
            (Qualifier::Exact, _) => write!(f, "Exact: {}", Product(&self.upper)),
            (Qualifier::LowerAndUpperBound, Some(lower)) => write!(
                f,
                "LowerAndUpperBound: lower {}, upper {}",
                Product(lower),
                Product(&self.upper)
            ),
            _ => write!(f, "UpperBoundOnly: upper {}", Product(&self.upper)),
        }
    }
}

fn monodromy_from(datum: &MonodromyDatum, factors: &FactorList, distinct: bool) -> MonodromyReport {
    let derived: Vec<GroupFactor> = factors.nonempty().cloned().collect();
    if !distinct {
        return MonodromyReport { qualifier: Qualifier::UpperBoundOnly, lower: None, upper: derived };
    }
    if datum.genus_base() >= 1 {
        return MonodromyReport {
            qualifier: Qualifier::Exact,
            lower: Some(derived.clone()),
            upper: derived,
        };
    }
    let positive: Vec<GroupFactor> = factors.positive().cloned().collect();
    MonodromyReport { qualifier: Qualifier::LowerAndUpperBound, lower: Some(positive), upper: derived }
}

pub fn monodromy_report(datum: &MonodromyDatum) -> Result<MonodromyReport> {
    let profile = chevalley_weil(datum)?;
    let factors = decompose(&profile, datum.genus_base());
    let distinct = no_repeating(&factors);
    Ok(monodromy_from(datum, &factors, distinct))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub no_repeating: bool,
    pub isogeny_advisory: bool,
    pub star: StarReport,
    pub status: Status,
    pub monodromy: MonodromyReport,
    /// Distinct factors, dimension test passes, and `g >= 8`.
    pub theorem_violation: bool,
    #[serde(rename = "dim_Z_assumed_generic")]
    pub dim_z_assumed_generic: bool,
}

pub fn verdict(datum: &MonodromyDatum) -> Result<Verdict> {
    if family_dimension(datum) == 0 {
        return Err(Error::ZeroDimensionalFamily);
    }
    let profile = chevalley_weil(datum)?;
    let factors = decompose(&profile, datum.genus_base());
    let distinct = no_repeating(&factors);
    let star = star_from(datum, &factors, dim_special_via_sym2(&profile))?;
    let status = match (distinct, star.holds) {
        (true, true) => Status::TotallyGeodesicAndSpecial,
        (true, false) => Status::NotTotallyGeodesic,
        (false, _) => Status::OutsideHypotheses,
    };
    let theorem_violation =
        status == Status::TotallyGeodesicAndSpecial && total_genus(datum) >= SPECIAL_GENUS_LIMIT;
    Ok(Verdict {
        no_repeating: distinct,
        isogeny_advisory: factors.isogeny_advisory(),
        monodromy: monodromy_from(datum, &factors, distinct),
        star,
        status,
        theorem_violation,
        dim_z_assumed_generic: true,
    })
}
