//! Boundary degeneration pinching a handle of the base curve.
//!
//! A cover of a genus-`g'` curve with branch data `theta` degenerates to an
//! admissible cover whose single node is fixed by the whole group. Its
//! normalization is a cover of a genus-`(g' - 1)` curve with branch data
//! `theta + {1, d - 1}`. Only the numerical side is tracked here: the
//! nontrivial eigenspace multiplicities survive unchanged, the total genus
//! drops by one, and the Prym dimension `g - g'` is preserved (the two Pryms
//! are isogenous, with kernel order dividing `d`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{total_genus, MonodromyDatum};
use crate::eigenspaces::{chevalley_weil, EigenspaceProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationResult {
    pub original: MonodromyDatum,
    pub normalized: MonodromyDatum,
    pub genus_drop: u64,
    pub prym_dim: u64,
    /// Order bound on the kernel of the Prym isogeny.
    pub isogeny_kernel_divides: u32,
    pub profile: EigenspaceProfile,
    pub normalized_profile: EigenspaceProfile,
}

impl fmt::Display for DegenerationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}  ->  {}", self.original, self.normalized)?;
        writeln!(
            f,
            "  genus {} -> {}, prym dim {} (isogeny kernel order divides {})",
            self.profile.total(),
            self.normalized_profile.total(),
            self.prym_dim,
            self.isogeny_kernel_divides
        )?;
        write!(f, "  {}  ->  {}", self.profile, self.normalized_profile)
    }
}

pub fn prym_dimension(datum: &MonodromyDatum) -> u64 {
    total_genus(datum) - datum.genus_base() as u64
}

pub fn delta0_degenerate(datum: &MonodromyDatum) -> Result<DegenerationResult> {
    if datum.genus_base() == 0 {
        return Err(Error::BaseGenusZero);
    }
    let d = datum.d();
    let mut theta: Vec<u32> = Vec::with_capacity(datum.branch_points() + 2);
    theta.extend([1, d - 1]);
    theta.extend_from_slice(datum.theta());
    theta.sort_unstable();
    let normalized = MonodromyDatum::new(d, datum.genus_base() - 1, theta)?;

    let g = total_genus(datum);
    let g_nu = total_genus(&normalized);
    let prym_dim = prym_dimension(datum);
    if g_nu + 1 != g || prym_dimension(&normalized) != prym_dim {
        return Err(Error::Internal(format!(
            "degeneration of {datum} gave genus {g_nu} from {g}"
        )));
    }

    Ok(DegenerationResult {
        original: datum.clone(),
        profile: chevalley_weil(datum)?,
        normalized_profile: chevalley_weil(&normalized)?,
        normalized,
        genus_drop: g - g_nu,
        prym_dim,
        isogeny_kernel_divides: d,
    })
}

/// Whether the nontrivial multiplicities agree before and after degenerating.
pub fn check_profile_preservation(datum: &MonodromyDatum) -> Result<bool> {
    let result = delta0_degenerate(datum)?;
    Ok(result.profile.nontrivial() == result.normalized_profile.nontrivial())
}

/// Degenerates repeatedly until the base is rational.
pub fn degeneration_chain(datum: &MonodromyDatum) -> Result<Vec<DegenerationResult>> {
    let mut chain = Vec::with_capacity(datum.genus_base() as usize);
    let mut current = datum.clone();
    while current.genus_base() > 0 {
        let step = delta0_degenerate(&current)?;
        current = step.normalized.clone();
        chain.push(step);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(d: u32, g: u32, theta: &[u32]) -> MonodromyDatum {
        MonodromyDatum::new(d, g, theta.to_vec()).unwrap()
    }

    #[test]
    fn triple_over_elliptic() {
        let x = datum(3, 1, &[1, 1, 1]);
        let res = delta0_degenerate(&x).unwrap();
        assert_eq!(res.normalized, datum(3, 0, &[1, 1, 1, 1, 2]));
        assert_eq!(res.genus_drop, 1);
        assert_eq!(res.prym_dim, 3);
        assert_eq!(res.profile.nontrivial(), &[1, 2]);
        assert_eq!(res.normalized_profile.nontrivial(), &[1, 2]);
        assert!(check_profile_preservation(&x).unwrap());
    }

    #[test]
    fn double_covers_gain_two_points() {
        for h in 1..5u32 {
            for r in (0..10usize).step_by(2) {
                let Ok(x) = MonodromyDatum::new(2, h, vec![1; r]) else { continue };
                let res = delta0_degenerate(&x).unwrap();
                assert_eq!(res.normalized, datum(2, h - 1, &vec![1; r + 2]));
                assert_eq!(total_genus(&res.normalized) + 1, total_genus(&x));
                assert_eq!(res.prym_dim, total_genus(&x) - h as u64);
            }
        }
        assert!(check_profile_preservation(&datum(2, 2, &[1, 1])).unwrap());
        assert_eq!(chevalley_weil(&datum(2, 2, &[1, 1])).unwrap().m(1), 2);
    }

    #[test]
    fn rational_base_is_rejected() {
        let x = datum(5, 0, &[1, 1, 3]);
        assert_eq!(delta0_degenerate(&x).unwrap_err(), Error::BaseGenusZero);
        assert!(degeneration_chain(&x).unwrap().is_empty());
    }

    #[test]
    fn chain_reaches_rational_base() {
        let x = datum(5, 3, &[]);
        let chain = degeneration_chain(&x).unwrap();
        assert_eq!(chain.len(), 3);
        let last = &chain.last().unwrap().normalized;
        assert_eq!(last.genus_base(), 0);
        assert_eq!(last.branch_points(), 6);
        assert_eq!(prym_dimension(last), prym_dimension(&x));
        assert_eq!(total_genus(last) + 3, total_genus(&x));
    }
}
