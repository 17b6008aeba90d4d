//! Targeted scans: double covers, triple covers, and special families.

use crate::classify::{verdict, Status};
use crate::datum::{family_dimension, MonodromyDatum};
use crate::error::{Error, Result};

use super::atlas::{build_records, AtlasRecord};
use super::bounds::{SearchBounds, SearchOptions};

fn is_special(datum: &MonodromyDatum) -> Result<bool> {
    if family_dimension(datum) == 0 {
        return Ok(false);
    }
    Ok(verdict(datum)?.status == Status::TotallyGeodesicAndSpecial)
}

/// `(g, h)` for which the locus of double covers of genus-`h` curves by
/// genus-`g` curves is special, `1 <= g <= genus_max`.
pub fn scan_double_loci(genus_max: u64) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    for g in 1..=genus_max {
        for h in 0..=g {
            // r = 2g - 4h + 2
            let Some(r) = (2 * g + 2).checked_sub(4 * h) else { break };
            let datum = match MonodromyDatum::new(2, h as u32, vec![1; r as usize]) {
                Ok(x) => x,
                Err(e) if !e.is_internal() => continue,
                Err(e) => return Err(e),
            };
            if is_special(&datum)? {
                out.push((g, h));
            }
        }
    }
    Ok(out)
}

/// The triple-cover datum with `m` canceling pairs `(1, 2)` and `r - 2m`
/// further points all with exponent 1.
pub fn triple_datum(h: u32, r: usize, m: usize) -> Result<MonodromyDatum> {
    if 2 * m > r {
        return Err(Error::InvalidBounds(format!("{m} canceling pairs need r >= {}", 2 * m)));
    }
    let mut theta = Vec::with_capacity(r);
    for _ in 0..m {
        theta.extend([1, 2]);
    }
    theta.resize(r, 1);
    MonodromyDatum::new(3, h, theta)
}

/// `(g, h, r, m)` for which the locus of Galois triple covers with `r`
/// branch points and `m` canceling pairs is special, `g <= genus_max`.
/// Includes the unramified family `r = 0`.
pub fn scan_triple_loci(genus_max: u64) -> Result<Vec<(u64, u64, u64, u64)>> {
    let mut out = Vec::new();
    for h in 0u64.. {
        // g = r + 3h - 2
        if 3 * h > genus_max + 2 {
            break;
        }
        let r_max = genus_max + 2 - 3 * h;
        for r in 0..=r_max {
            let g = match (r + 3 * h).checked_sub(2) {
                Some(g) if g > 0 => g,
                _ => continue,
            };
            for m in 0..=r / 2 {
                if (r - 2 * m) % 3 != 0 {
                    continue;
                }
                let datum = match triple_datum(h as u32, r as usize, m as usize) {
                    Ok(x) => x,
                    Err(e) if !e.is_internal() => continue,
                    Err(e) => return Err(e),
                };
                if is_special(&datum)? {
                    out.push((g, h, r, m));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Positive-dimensional families with distinct factors that pass the
/// dimension test.
pub fn scan_special(bounds: &SearchBounds, options: &SearchOptions) -> Result<Vec<AtlasRecord>> {
    let records = build_records(bounds, options)?;
    Ok(records
        .into_iter()
        .filter(|r| {
            r.verdict
                .as_ref()
                .is_some_and(|v| v.status == Status::TotallyGeodesicAndSpecial)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_small_bounds() {
        assert_eq!(scan_double_loci(1).unwrap(), vec![(1, 0)]);
        assert!(scan_double_loci(0).unwrap().is_empty());
        assert_eq!(scan_double_loci(10).unwrap(), vec![(1, 0), (2, 0), (2, 1), (3, 1)]);
    }

    #[test]
    fn triple_small_bounds() {
        assert_eq!(scan_triple_loci(2).unwrap(), vec![(2, 0, 4, 2)]);
    }

    #[test]
    fn unramified_triples_never_special() {
        for h in 2..40u32 {
            let x = triple_datum(h, 0, 0).unwrap();
            assert!(!is_special(&x).unwrap());
        }
    }

    #[test]
    fn triple_datum_shape() {
        let x = triple_datum(0, 5, 1).unwrap();
        assert_eq!(x.theta(), &[1, 2, 1, 1, 1]);
        assert!(triple_datum(0, 2, 2).is_err());
    }
}
