use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Candidate cap applied before orbit dedup unless overridden.
pub const DEFAULT_CANDIDATE_CAP: u64 = 100_000_000;

/// Largest order of a cyclic group acting on a curve of genus `genus`
/// (`4g + 2` for `g >= 2`; genus-one quotients by the line have order <= 6).
pub fn cyclic_order_bound(genus: u64) -> u32 {
    (4 * genus + 2).max(6).min(u32::MAX as u64) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub d_max: u32,
    pub genus_base_max: u32,
    pub genus_max: u64,
    #[serde(default)]
    pub genus_min: u64,
    #[serde(default)]
    pub d_fixed: Option<u32>,
    #[serde(default)]
    pub genus_base_fixed: Option<u32>,
}

impl SearchBounds {
    /// Every order and every base genus that can occur up to `genus_max`.
    pub fn up_to_genus(genus_max: u64) -> Self {
        SearchBounds {
            d_max: cyclic_order_bound(genus_max),
            genus_base_max: genus_max.min(u32::MAX as u64) as u32,
            genus_max,
            genus_min: 0,
            d_fixed: None,
            genus_base_fixed: None,
        }
    }

    pub fn with_genus_min(mut self, genus_min: u64) -> Self {
        self.genus_min = genus_min;
        self
    }

    pub fn with_d(mut self, d: u32) -> Self {
        self.d_fixed = Some(d);
        self
    }

    pub fn with_d_max(mut self, d_max: u32) -> Self {
        self.d_max = d_max;
        self
    }

    pub fn with_genus_base(mut self, genus_base: u32) -> Self {
        self.genus_base_fixed = Some(genus_base);
        self
    }

    pub fn with_genus_base_max(mut self, genus_base_max: u32) -> Self {
        self.genus_base_max = genus_base_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_fixed.is_none() && self.d_max < 2 {
            return Err(Error::InvalidBounds(format!("d_max = {} < 2", self.d_max)));
        }
        if let Some(d) = self.d_fixed {
            if d < 2 {
                return Err(Error::InvalidBounds(format!("d = {d} < 2")));
            }
        }
        Ok(())
    }

    pub fn orders(&self) -> RangeInclusive<u32> {
        match self.d_fixed {
            Some(d) => d..=d,
            None => 2..=self.d_max,
        }
    }

    pub fn base_genera(&self) -> RangeInclusive<u32> {
        match self.genus_base_fixed {
            Some(g) => g..=g,
            None => 0..=self.genus_base_max,
        }
    }

    /// Short stable digest of the bounds, for record metadata.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("bounds serialize");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub candidate_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 0, candidate_cap: DEFAULT_CANDIDATE_CAP }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions { workers, ..Default::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = SearchBounds::up_to_genus(7);
        assert_eq!(a.hash(), a.clone().hash());
        assert_eq!(a.hash().len(), 16);
        assert_ne!(a.hash(), SearchBounds::up_to_genus(8).hash());
        assert_ne!(a.hash(), a.clone().with_d(3).hash());
    }

    #[test]
    fn ranges() {
        let b = SearchBounds::up_to_genus(3).with_d(5).with_genus_base(1);
        assert_eq!(b.orders(), 5..=5);
        assert_eq!(b.base_genera(), 1..=1);
        assert_eq!(SearchBounds::up_to_genus(30).d_max, 122);
        assert_eq!(SearchBounds::up_to_genus(1).d_max, 6);
        assert!(SearchBounds::up_to_genus(3).with_d(1).validate().is_err());
    }
}
