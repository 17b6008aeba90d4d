//! Factor decomposition of the centralizer `Sp(H^1)^G`.
//!
//! Each pair of conjugate characters `{chi_i, chi_{d-i}}` with `i < d - i`
//! contributes a unitary factor `U(m_i, m_{d-i})`; self-conjugate characters
//! (`i = 0`, and `i = d/2` for even `d`) contribute `Sp(2 m_i)`. The derived
//! group replaces `U` by `SU`, which is how factors are labeled here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eigenspaces::EigenspaceProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Unitary,
    Symplectic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFactor {
    pub kind: FactorKind,
    pub char_index: u32,
    /// `m_{chi_i}`; for symplectic factors, the half-rank `n` of `Sp(2n)`.
    pub p: u64,
    /// `m_{chi_{d-i}}`; always 0 for symplectic factors.
    pub q: u64,
    pub positive: bool,
    pub compact: bool,
}

impl GroupFactor {
    pub fn unitary(char_index: u32, p: u64, q: u64) -> Self {
        GroupFactor {
            kind: FactorKind::Unitary,
            char_index,
            p,
            q,
            positive: p * q != 0,
            compact: p * q == 0 && p + q > 0,
        }
    }

    pub fn symplectic(char_index: u32, n: u64) -> Self {
        GroupFactor {
            kind: FactorKind::Symplectic,
            char_index,
            p: n,
            q: 0,
            positive: n != 0,
            compact: false,
        }
    }

    pub fn is_trivial_character(&self) -> bool {
        self.char_index == 0
    }

    /// Unordered signature `{p, q}` as a sorted pair.
    pub fn signature(&self) -> (u64, u64) {
        (self.p.min(self.q), self.p.max(self.q))
    }

    /// Same real group: `SU(p,q) = SU(q,p)`, `Sp(2n) = Sp(2n)`.
    pub fn same_group(&self, other: &GroupFactor) -> bool {
        self.kind == other.kind && self.signature() == other.signature()
    }

    /// Zero-dimensional factor (`SU(0,0)` or `Sp(0)`).
    pub fn is_empty(&self) -> bool {
        self.p + self.q == 0
    }
}

impl fmt::Display for GroupFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Unitary => write!(f, "SU({},{})", self.p, self.q)?,
            FactorKind::Symplectic => write!(f, "Sp({})", 2 * self.p)?,
        }
        if self.compact {
            f.write_str(" [compact]")?;
        }
        if self.is_trivial_character() {
            f.write_str(" [trivial-char]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorList {
    pub d: u32,
    pub factors: Vec<GroupFactor>,
}

impl FactorList {
    pub fn iter(&self) -> std::slice::Iter<'_, GroupFactor> {
        self.factors.iter()
    }

    /// Factors with all defining multiplicities nonzero.
    pub fn positive(&self) -> impl Iterator<Item = &GroupFactor> {
        self.factors.iter().filter(|f| f.positive)
    }

    /// Factors of nonzero size, trivial character included.
    pub fn nonempty(&self) -> impl Iterator<Item = &GroupFactor> {
        self.factors.iter().filter(|f| !f.is_empty())
    }

    /// A positive `SU(1,1)` next to a positive nontrivial `Sp(2)`: isogenous
    /// real groups that the repetition test does not compare.
    pub fn isogeny_advisory(&self) -> bool {
        let su11 = self
            .positive()
            .any(|f| f.kind == FactorKind::Unitary && f.signature() == (1, 1));
        let sp2 = self.positive().any(|f| {
            f.kind == FactorKind::Symplectic && !f.is_trivial_character() && f.p == 1
        });
        su11 && sp2
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_product(f, self.factors.iter())
    }
}

pub(crate) fn render_product<'a>(
    f: &mut fmt::Formatter<'_>,
    factors: impl Iterator<Item = &'a GroupFactor>,
) -> fmt::Result {
    let mut any = false;
    for (i, factor) in factors.enumerate() {
        if i > 0 {
            f.write_str(" x ")?;
        }
        write!(f, "{factor}")?;
        any = true;
    }
    if !any {
        f.write_str("1")?;
    }
    Ok(())
}

pub fn decompose(profile: &EigenspaceProfile, genus_base: u32) -> FactorList {
    debug_assert_eq!(profile.m(0), genus_base as u64);
    let d = profile.d;
    let mut factors = Vec::with_capacity(d as usize / 2 + 1);
    factors.push(GroupFactor::symplectic(0, genus_base as u64));
    for i in 1..d {
        let j = d - i;
        if i < j {
            factors.push(GroupFactor::unitary(i, profile.m(i), profile.m(j)));
        } else if i == j {
            factors.push(GroupFactor::symplectic(i, profile.m(i)));
        }
    }
    FactorList { d, factors }
}

/// No two positive nontrivial factors are the same real group.
pub fn no_repeating(factors: &FactorList) -> bool {
    let candidates: Vec<&GroupFactor> = factors
        .positive()
        .filter(|f| !f.is_trivial_character())
        .collect();
    for (a, x) in candidates.iter().enumerate() {
        for y in &candidates[a + 1..] {
            if x.same_group(y) {
                return false;
            }
        }
    }
    true
}

/// Complex dimension of the symmetric space of a factor.
pub fn delta(factor: &GroupFactor) -> u64 {
    match factor.kind {
        FactorKind::Unitary => factor.p * factor.q,
        FactorKind::Symplectic => factor.p * (factor.p + 1) / 2,
    }
}

pub fn dim_special(factors: &FactorList) -> u64 {
    factors.iter().map(delta).sum()
}

/// `dim (S^2 H^0(K))^G`, read off the profile by pairing characters whose
/// product is trivial.
pub fn dim_special_via_sym2(profile: &EigenspaceProfile) -> u64 {
    let d = profile.d as usize;
    let m = &profile.multiplicities;
    let mut total = 0;
    for i in 0..d {
        for j in i..d {
            if (i + j) % d != 0 {
                continue;
            }
            total += if i == j {
                m[i] * (m[i] + 1) / 2
            } else {
                m[i] * m[j]
            };
        }
    }
    total
}
