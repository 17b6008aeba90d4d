//! Chevalley–Weil multiplicities of the `Z/d`-action on holomorphic one-forms.
//!
//! Character `chi_i` sends the fixed generator of `Z/d` to `xi^i` for a
//! primitive `d`-th root of unity `xi`; its conjugate is `chi_{d-i}`. For a
//! datum `(d, g', theta)`,
//!
//! ```text
//! m_i = (g' - 1) + sum_j [i * theta_j]_d / d + (1 if i == 0)
//! ```
//!
//! where `[a]_d` is the residue in `0..d`. The sum is evaluated as a single
//! integer numerator over `d`, so nothing is ever rounded.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{total_genus, MonodromyDatum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenspaceProfile {
    pub d: u32,
    pub multiplicities: Vec<u64>,
}

impl EigenspaceProfile {
    /// Multiplicity of `chi_i`; the index is taken mod `d`.
    pub fn m(&self, i: u32) -> u64 {
        self.multiplicities[(i % self.d) as usize]
    }

    pub fn total(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// `(m_1, ..., m_{d-1})`.
    pub fn nontrivial(&self) -> &[u64] {
        &self.multiplicities[1..]
    }
}

impl fmt::Display for EigenspaceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("m = [")?;
        for (i, m) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

pub fn chevalley_weil(datum: &MonodromyDatum) -> Result<EigenspaceProfile> {
    let d = datum.d();
    let dd = d as i64;
    let base = (datum.genus_base() as i64 - 1) * dd;
    let mut multiplicities = Vec::with_capacity(d as usize);
    for i in 0..d {
        let mut numerator = base;
        for &t in datum.theta() {
            numerator += ((i as u64 * t as u64) % d as u64) as i64;
        }
        if i == 0 {
            numerator += dd;
        }
        if numerator < 0 || numerator % dd != 0 {
            return Err(Error::NonIntegralMultiplicity { index: i, numerator, d });
        }
        multiplicities.push((numerator / dd) as u64);
    }
    Ok(EigenspaceProfile { d, multiplicities })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub rule: String,
    pub applies: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    fn push(&mut self, rule: &str, applies: bool, passed: bool, detail: String) {
        self.entries.push(CheckEntry {
            rule: rule.to_string(),
            applies,
            passed: !applies || passed,
            detail,
        });
    }
}

/// Structural rules every profile must satisfy. Failures are reported, not
/// raised: a failing entry means the profile was computed wrongly.
pub fn profile_checks(profile: &EigenspaceProfile, datum: &MonodromyDatum) -> CheckReport {
    let mut report = CheckReport::default();
    let d = datum.d();
    let g_base = datum.genus_base() as u64;

    let shape_ok = profile.d == d && profile.multiplicities.len() == d as usize;
    report.push(
        "shape",
        true,
        shape_ok,
        format!("{} entries for d = {d}", profile.multiplicities.len()),
    );
    if !shape_ok {
        return report;
    }

    report.push(
        "trivial_character",
        true,
        profile.m(0) == g_base,
        format!("m_0 = {}, g' = {g_base}", profile.m(0)),
    );

    let genus = total_genus(datum);
    report.push(
        "sum_rule",
        true,
        profile.total() == genus,
        format!("sum m_i = {}, g = {genus}", profile.total()),
    );

    let zeros: Vec<u32> = (1..d).filter(|&i| profile.m(i) == 0).collect();
    report.push(
        "positivity",
        g_base >= 2,
        zeros.is_empty(),
        format!("zero eigenspaces at {zeros:?}"),
    );

    let unpaired: Vec<u32> = zeros
        .iter()
        .copied()
        .filter(|&i| profile.m(d - i) != 0)
        .collect();
    report.push(
        "pairing",
        g_base == 1,
        unpaired.is_empty(),
        format!("m_i = 0 but m_(d-i) > 0 at {unpaired:?}"),
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile_of(d: u32, g: u32, theta: &[u32]) -> Vec<u64> {
        let x = MonodromyDatum::new(d, g, theta.to_vec()).unwrap();
        chevalley_weil(&x).unwrap().multiplicities
    }

    #[test]
    fn worked_profiles() {
        assert_eq!(profile_of(4, 0, &[1, 1, 1, 1]), vec![0, 0, 1, 2]);
        assert_eq!(profile_of(3, 1, &[1, 1, 1]), vec![1, 1, 2]);
        assert_eq!(profile_of(3, 0, &[1, 2, 1, 2]), vec![0, 1, 1]);
        assert_eq!(profile_of(5, 2, &[]), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn double_cover_profile_is_h_and_g_minus_h() {
        for h in 0..5u32 {
            for r in (0..14usize).step_by(2) {
                let Ok(x) = MonodromyDatum::new(2, h, vec![1; r]) else { continue };
                let g = total_genus(&x);
                let p = chevalley_weil(&x).unwrap();
                assert_eq!(p.multiplicities, vec![h as u64, g - h as u64]);
            }
        }
    }

    #[test]
    fn triple_cover_profile_matches_d1_d2() {
        // m canceling pairs (1,2) and n = r - 2m ones
        for h in 0..4i64 {
            for m in 0..5usize {
                for n in (0..10usize).step_by(3) {
                    let mut theta = vec![1u32; n];
                    for _ in 0..m {
                        theta.extend([1, 2]);
                    }
                    let Ok(x) = MonodromyDatum::new(3, h as u32, theta) else { continue };
                    let r = (2 * m + n) as i64;
                    let p = chevalley_weil(&x).unwrap();
                    let d1 = h - 1 + (2 * r - m as i64) / 3;
                    let d2 = h - 1 + (r + m as i64) / 3;
                    assert_eq!(p.m(2) as i64, d1);
                    assert_eq!(p.m(1) as i64, d2);
                }
            }
        }
    }

    #[test]
    fn checks_pass_and_catch_tampering() {
        let x = MonodromyDatum::new(4, 0, vec![1, 1, 1, 1]).unwrap();
        let p = chevalley_weil(&x).unwrap();
        let report = profile_checks(&p, &x);
        assert!(report.passed(), "{report:?}");
        assert_eq!(p.total(), 3);

        let mut tampered = p.clone();
        tampered.multiplicities[3] += 1;
        let report = profile_checks(&tampered, &x);
        let failed: Vec<_> = report.failures().map(|e| e.rule.as_str()).collect();
        assert_eq!(failed, vec!["sum_rule"]);
    }

    #[test]
    fn positivity_rule_applies_over_genus_two() {
        let x = MonodromyDatum::new(6, 2, vec![1, 5]).unwrap();
        let p = chevalley_weil(&x).unwrap();
        let report = profile_checks(&p, &x);
        let pos = report.entries.iter().find(|e| e.rule == "positivity").unwrap();
        assert!(pos.applies && pos.passed);
        assert!(report.passed());

        let mut broken = p.clone();
        broken.multiplicities[1] = 0;
        broken.multiplicities[2] += p.m(1);
        let failed: Vec<_> = profile_checks(&broken, &x)
            .failures()
            .map(|e| e.rule.clone())
            .collect();
        assert_eq!(failed, vec!["positivity".to_string()]);
    }

    #[test]
    fn display_form() {
        let p = EigenspaceProfile { d: 3, multiplicities: vec![1, 1, 2] };
        assert_eq!(p.to_string(), "m = [1, 1, 2]");
    }
}
