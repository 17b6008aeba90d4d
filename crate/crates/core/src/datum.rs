//! Monodromy data of cyclic covers.
//!
//! A datum `(d, g', theta)` describes the topological type of a Galois cover
//! `C -> C'` with group `Z/d` over a base curve of genus `g'`, branched at
//! `r = theta.len()` points with local monodromy `theta_i` (a generator of
//! the stabilizer, written as an element of `Z/d`).
//!
//! Two data describe the same topological type when they differ by an
//! automorphism of `Z/d` (multiplication by a unit) and a reordering of the
//! branch points. [`canonicalize`] picks the lexicographically least sorted
//! representative of that orbit.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct MonodromyDatum {
    d: u32,
    genus_base: u32,
    theta: Vec<u32>,
}

#[derive(Deserialize)]
struct RawDatum {
    d: i64,
    genus_base: i64,
    theta: Vec<i64>,
}

impl TryFrom<RawDatum> for MonodromyDatum {
    type Error = Error;

    fn try_from(raw: RawDatum) -> Result<Self> {
        validate(raw.d, raw.genus_base, &raw.theta)
    }
}

/// Checks the datum invariants and builds a [`MonodromyDatum`].
///
/// Exponents must already lie in `1..d`; use [`MonodromyDatum::from_residues`]
/// to accept arbitrary representatives.
pub fn validate(d: i64, genus_base: i64, theta: &[i64]) -> Result<MonodromyDatum> {
    if d < 2 || d > u32::MAX as i64 {
        return Err(Error::InvalidOrder(d));
    }
    let d = d as u32;
    if genus_base < 0 || genus_base > u32::MAX as i64 {
        return Err(Error::Parse(format!("base genus {genus_base} out of range")));
    }
    let genus_base = genus_base as u32;

    let mut exps = Vec::with_capacity(theta.len());
    for (index, &value) in theta.iter().enumerate() {
        if value < 1 || value >= d as i64 {
            return Err(Error::InvalidExponent { index, value, max: d - 1 });
        }
        exps.push(value as u32);
    }

    let sum: u64 = exps.iter().map(|&t| t as u64).sum();
    if !sum.is_multiple_of(d as u64) {
        return Err(Error::NonzeroSum { sum, d });
    }

    let r = exps.len();
    match genus_base {
        0 if r < 3 => return Err(Error::TooFewBranchPoints { genus_base, r }),
        1 if r < 1 => return Err(Error::TooFewBranchPoints { genus_base, r }),
        _ => {}
    }
    if genus_base == 0 {
        let g = exps.iter().fold(d, |acc, &t| acc.gcd(&t));
        if g != 1 {
            return Err(Error::NotGenerating { gcd: g });
        }
    }

    Ok(MonodromyDatum { d, genus_base, theta: exps })
}

impl MonodromyDatum {
    /// Strict constructor over exponents already in `1..d`.
    pub fn new(d: u32, genus_base: u32, theta: Vec<u32>) -> Result<Self> {
        let raw: Vec<i64> = theta.iter().map(|&t| t as i64).collect();
        validate(d as i64, genus_base as i64, &raw)
    }

    /// Reduces every exponent modulo `d` first, so `-1` means `d - 1`.
    pub fn from_residues(d: i64, genus_base: i64, theta: &[i64]) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidOrder(d));
        }
        let reduced: Vec<i64> = theta.iter().map(|t| t.rem_euclid(d)).collect();
        validate(d, genus_base, &reduced)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn genus_base(&self) -> u32 {
        self.genus_base
    }

    pub fn theta(&self) -> &[u32] {
        &self.theta
    }

    pub fn branch_points(&self) -> usize {
        self.theta.len()
    }

    /// Orders `d / gcd(theta_i, d)` of the local monodromies.
    pub fn local_orders(&self) -> Vec<u32> {
        self.theta.iter().map(|&t| self.d / t.gcd(&self.d)).collect()
    }

    /// The same datum with theta sorted ascending.
    pub fn sorted(&self) -> MonodromyDatum {
        let mut theta = self.theta.clone();
        theta.sort_unstable();
        MonodromyDatum { d: self.d, genus_base: self.genus_base, theta }
    }

    pub(crate) fn from_parts_unchecked(d: u32, genus_base: u32, theta: Vec<u32>) -> Self {
        MonodromyDatum { d, genus_base, theta }
    }
}

impl fmt::Display for MonodromyDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} g={} theta=", self.d, self.genus_base)?;
        for (i, t) in self.theta.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for MonodromyDatum {
    type Err = Error;

    /// Parses `d=<int> g=<int> theta=<ints>`; negative exponents are reduced mod `d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("cannot parse datum {s:?}: {msg}"));
        let (mut d, mut g, mut theta) = (None, None, None);
        for tok in s.split_whitespace() {
            let (key, value) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key {
                "d" => d = Some(value.parse::<i64>().map_err(|_| bad("d"))?),
                "g" => g = Some(value.parse::<i64>().map_err(|_| bad("g"))?),
                "theta" => theta = Some(parse_theta(value).ok_or_else(|| bad("theta"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        let d = d.ok_or_else(|| bad("missing d"))?;
        let g = g.ok_or_else(|| bad("missing g"))?;
        MonodromyDatum::from_residues(d, g, &theta.unwrap_or_default())
    }
}

/// Parses a comma-separated exponent list; the empty string is the empty list.
pub fn parse_theta(s: &str) -> Option<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<i64>().ok()).collect()
}

/// A datum in orbit-minimal form under `Aut(Z/d) x S_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MonodromyDatum", into = "MonodromyDatum")]
pub struct CanonicalDatum(MonodromyDatum);

impl CanonicalDatum {
    pub fn datum(&self) -> &MonodromyDatum {
        &self.0
    }

    pub fn into_datum(self) -> MonodromyDatum {
        self.0
    }

    pub(crate) fn new_unchecked(datum: MonodromyDatum) -> Self {
        CanonicalDatum(datum)
    }
}

impl std::ops::Deref for CanonicalDatum {
    type Target = MonodromyDatum;

    fn deref(&self) -> &MonodromyDatum {
        &self.0
    }
}

impl From<CanonicalDatum> for MonodromyDatum {
    fn from(c: CanonicalDatum) -> Self {
        c.0
    }
}

impl TryFrom<MonodromyDatum> for CanonicalDatum {
    type Error = Error;

    fn try_from(datum: MonodromyDatum) -> Result<Self> {
        if is_canonical(datum.d, &datum.theta) {
            Ok(CanonicalDatum(datum))
        } else {
            Err(Error::NotCanonical(datum.to_string()))
        }
    }
}

impl fmt::Display for CanonicalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Units of `Z/d`, ascending.
pub fn units(d: u32) -> Vec<u32> {
    (1..d.max(2)).filter(|u| u.gcd(&d) == 1).collect()
}

fn scaled_sorted(d: u32, theta: &[u32], unit: u32, out: &mut Vec<u32>) {
    out.clear();
    out.extend(
        theta
            .iter()
            .map(|&t| ((t as u64 * unit as u64) % d as u64) as u32),
    );
    out.sort_unstable();
}

pub fn canonicalize(datum: &MonodromyDatum) -> CanonicalDatum {
    let mut best = datum.theta.clone();
    best.sort_unstable();
    let mut scratch = Vec::with_capacity(best.len());
    for u in units(datum.d).into_iter().skip(1) {
        scaled_sorted(datum.d, &datum.theta, u, &mut scratch);
        if scratch < best {
            std::mem::swap(&mut best, &mut scratch);
        }
    }
    CanonicalDatum(MonodromyDatum::from_parts_unchecked(datum.d, datum.genus_base, best))
}

/// True when `theta` is sorted and no unit multiple sorts to something smaller.
pub fn is_canonical(d: u32, theta: &[u32]) -> bool {
    if theta.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let mut scratch = Vec::with_capacity(theta.len());
    units(d)
        .into_iter()
        .skip(1)
        .all(|u| {
            scaled_sorted(d, theta, u, &mut scratch);
            scratch.as_slice() >= theta
        })
}

/// Genus of the covering curve, from `2g - 2 = d(2g' - 2) + sum(d - d/m_i)`.
pub fn total_genus(datum: &MonodromyDatum) -> u64 {
    let d = datum.d as i64;
    let ramification: i64 = datum
        .theta
        .iter()
        .map(|&t| d - t.gcd(&datum.d) as i64)
        .sum();
    let euler = d * (2 * datum.genus_base as i64 - 2) + ramification;
    debug_assert!(euler % 2 == 0 && euler >= -2, "Riemann-Hurwitz gave {euler} for {datum}");
    (euler / 2 + 1) as u64
}

/// Dimension of `M_{g', r}`.
pub fn family_dimension(datum: &MonodromyDatum) -> u64 {
    let r = datum.theta.len() as u64;
    match datum.genus_base {
        0 => r.saturating_sub(3),
        1 => r,
        g => 3 * g as u64 - 3 + r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(d: u32, g: u32, theta: &[u32]) -> MonodromyDatum {
        MonodromyDatum::new(d, g, theta.to_vec()).unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(validate(2, 1, &[1, 1]).is_ok());
        assert!(validate(3, 0, &[1, 2, 1, 2]).is_ok());
        assert_eq!(validate(3, 0, &[1, 1]).unwrap_err().code(), "NonzeroSum");
        assert_eq!(validate(4, 0, &[2, 2, 2, 2]).unwrap_err().code(), "NotGenerating");
        assert_eq!(validate(4, 0, &[1, 0, 3]).unwrap_err().code(), "InvalidExponent");
        assert_eq!(validate(4, 0, &[1, 4, 3]).unwrap_err().code(), "InvalidExponent");
        assert_eq!(validate(4, 0, &[1, 3]).unwrap_err().code(), "TooFewBranchPoints");
        assert_eq!(validate(4, 1, &[]).unwrap_err().code(), "TooFewBranchPoints");
        assert_eq!(validate(1, 2, &[]).unwrap_err().code(), "InvalidOrder");
        // unramified over genus >= 2 is allowed
        assert!(validate(5, 2, &[]).is_ok());
        // genus one base does not need generating exponents
        assert!(validate(4, 1, &[2, 2]).is_ok());
    }

    #[test]
    fn residues_are_reduced() {
        let x = MonodromyDatum::from_residues(5, 1, &[1, -1, 6, -6]).unwrap();
        assert_eq!(x.theta(), &[1, 4, 1, 4]);
        assert_eq!(
            MonodromyDatum::from_residues(3, 1, &[3]).unwrap_err().code(),
            "InvalidExponent"
        );
    }

    #[test]
    fn text_form_round_trips() {
        let x: MonodromyDatum = "d=3 g=0 theta=1,2,1,2".parse().unwrap();
        assert_eq!(x, datum(3, 0, &[1, 2, 1, 2]));
        assert_eq!(x.to_string(), "d=3 g=0 theta=1,2,1,2");
        let y: MonodromyDatum = "d=5 g=2 theta=".parse().unwrap();
        assert_eq!(y.branch_points(), 0);
        assert!("d=3 theta=1,2".parse::<MonodromyDatum>().is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&datum(3, 1, &[2, 2, 2])).theta(), &[1, 1, 1]);
        // orbit {(1,1,3),(1,2,2),(3,3,4),(2,4,4)}
        assert_eq!(canonicalize(&datum(5, 0, &[1, 1, 3])).theta(), &[1, 1, 3]);
        assert_eq!(canonicalize(&datum(5, 0, &[2, 4, 4])).theta(), &[1, 1, 3]);
        assert_eq!(canonicalize(&datum(5, 0, &[3, 4, 3])).theta(), &[1, 1, 3]);
        let c = canonicalize(&datum(3, 0, &[1, 2, 1, 2]));
        assert_eq!(c.theta(), &[1, 1, 2, 2]);
        assert_eq!(canonicalize(c.datum()), c);
        assert!(is_canonical(5, &[1, 1, 3]));
        assert!(!is_canonical(5, &[1, 2, 2]));
        assert!(!is_canonical(5, &[3, 1, 1]));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(total_genus(&datum(4, 0, &[1, 1, 1, 1])), 3);
        assert_eq!(total_genus(&datum(3, 1, &[1, 1, 1])), 4);
        assert_eq!(total_genus(&datum(5, 2, &[])), 6);
        // double covers: r = 2g - 4h + 2
        for h in 0..5u32 {
            for r in (0..12usize).step_by(2) {
                if let Ok(x) = MonodromyDatum::new(2, h, vec![1; r]) {
                    let g = total_genus(&x) as i64;
                    assert_eq!(r as i64, 2 * g - 4 * h as i64 + 2);
                }
            }
        }
        // triple covers with all points of order 3: r = g - 3h + 2
        for h in 0..4u32 {
            for ones in 0..9usize {
                for twos in 0..9usize {
                    let mut theta = vec![1; ones];
                    theta.extend(std::iter::repeat_n(2, twos));
                    if let Ok(x) = MonodromyDatum::new(3, h, theta) {
                        let g = total_genus(&x) as i64;
                        assert_eq!((ones + twos) as i64, g - 3 * h as i64 + 2);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(family_dimension(&datum(3, 1, &[1, 1, 1])), 3);
        assert_eq!(family_dimension(&datum(6, 0, &[1, 2, 4, 5])), 1);
        assert_eq!(family_dimension(&datum(5, 2, &[])), 3);
        // double covers: 2g - h - 1
        for (h, r) in [(0u32, 4usize), (0, 6), (1, 2), (1, 4), (2, 0), (2, 2), (3, 6)] {
            let x = datum(2, h, &vec![1; r]);
            let g = total_genus(&x);
            assert_eq!(family_dimension(&x), 2 * g - h as u64 - 1);
        }
    }

    #[test]
    fn serde_validates() {
        let x: MonodromyDatum =
            serde_json::from_str(r#"{"d":4,"genus_base":0,"theta":[1,1,1,1]}"#).unwrap();
        assert_eq!(x, datum(4, 0, &[1, 1, 1, 1]));
        assert!(serde_json::from_str::<MonodromyDatum>(r#"{"d":3,"genus_base":0,"theta":[1,1]}"#)
            .is_err());
        assert!(serde_json::from_str::<CanonicalDatum>(r#"{"d":5,"genus_base":0,"theta":[1,2,2]}"#)
            .is_err());
    }
}
