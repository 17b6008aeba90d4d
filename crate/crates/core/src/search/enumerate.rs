//! Exhaustive enumeration of canonical data within a genus window.
//!
//! The search space is split into cells `(d, g', r)`. Within a cell, sorted
//! exponent tuples are generated depth-first with the Riemann–Hurwitz budget
//! as the pruning bound: a branch point with exponent `t` costs
//! `d - gcd(t, d)`, and the total cost is `2g - 2 - d(2g' - 2)`.
//!
//! Only orbit-minimal tuples are emitted. The smallest entry of a canonical
//! tuple is the smallest `gcd(theta_i, d)` (units move every entry onto its
//! gcd), so it must be a divisor of `d` bounding all other gcds from below.

use num_integer::Integer;
use rayon::prelude::*;

use crate::datum::{is_canonical, CanonicalDatum, MonodromyDatum};
use crate::error::{Error, Result};

use super::bounds::{SearchBounds, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub d: u32,
    pub genus_base: u32,
    pub r: usize,
    /// Inclusive range of total branch cost `sum (d - gcd(theta_i, d))`.
    cost_lo: i64,
    cost_hi: i64,
}

fn min_branch_points(genus_base: u32) -> usize {
    match genus_base {
        0 => 3,
        1 => 1,
        _ => 0,
    }
}

fn cost_window(bounds: &SearchBounds, d: u32, genus_base: u32) -> (i64, i64) {
    let base = d as i64 * (2 * genus_base as i64 - 2);
    let lo = 2 * bounds.genus_min as i64 - 2 - base;
    let hi = 2 * bounds.genus_max as i64 - 2 - base;
    (lo.max(0), hi)
}

/// Cells in `(d, g', r)` order.
pub fn cells(bounds: &SearchBounds) -> Vec<Cell> {
    let mut out = Vec::new();
    if bounds.genus_min > bounds.genus_max {
        return out;
    }
    for d in bounds.orders() {
        // cheapest branch point: order equal to the smallest prime factor
        let p = (2..=d).find(|p| d % p == 0).unwrap_or(d);
        let cheapest = (d - d / p) as i64;
        for genus_base in bounds.base_genera() {
            let (lo, hi) = cost_window(bounds, d, genus_base);
            if hi < 0 {
                // larger base genus only raises the floor
                break;
            }
            let r_max = (hi / cheapest) as usize;
            for r in min_branch_points(genus_base)..=r_max {
                out.push(Cell { d, genus_base, r, cost_lo: lo, cost_hi: hi });
            }
        }
    }
    out
}

fn multiset_count(n: u128, k: u64) -> u128 {
    // C(n + k - 1, k)
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.saturating_mul(n + i) / (i + 1);
    }
    acc
}

/// Number of sorted exponent tuples in the cost windows of all cells, i.e.
/// the candidates the generator may visit before orbit dedup. Stops counting
/// once `cap` is exceeded.
pub fn estimate_candidates(bounds: &SearchBounds, cap: u64) -> u128 {
    let mut total: u128 = 0;
    if bounds.genus_min > bounds.genus_max {
        return 0;
    }
    for d in bounds.orders() {
        // cost classes: value -> number of exponents with that cost
        let mut classes: Vec<(i64, u128)> = Vec::new();
        for t in 1..d {
            let c = (d - t.gcd(&d)) as i64;
            match classes.iter_mut().find(|(cc, _)| *cc == c) {
                Some((_, n)) => *n += 1,
                None => classes.push((c, 1)),
            }
        }
        let cheapest = classes.iter().map(|c| c.0).min().unwrap_or(1).max(1);
        for genus_base in bounds.base_genera() {
            let (lo, hi) = cost_window(bounds, d, genus_base);
            if hi < 0 {
                break;
            }
            let r_max = (hi / cheapest) as usize;
            let width = hi as usize + 1;
            // dp[k][s]: tuples with k points and cost s
            let mut dp = vec![vec![0u128; width]; r_max + 1];
            dp[0][0] = 1;
            for &(c, n) in &classes {
                let mut next = vec![vec![0u128; width]; r_max + 1];
                for k in 0..=r_max {
                    for s in 0..width {
                        let w = dp[k][s];
                        if w == 0 {
                            continue;
                        }
                        let mut j = 0usize;
                        while k + j <= r_max && s as i64 + j as i64 * c <= hi {
                            let add = w.saturating_mul(multiset_count(n, j as u64));
                            let slot = &mut next[k + j][s + j * c as usize];
                            *slot = slot.saturating_add(add);
                            j += 1;
                        }
                    }
                }
                dp = next;
            }
            for row in dp.iter().skip(min_branch_points(genus_base)) {
                for (s, &w) in row.iter().enumerate() {
                    if s as i64 >= lo && s % 2 == 0 {
                        total = total.saturating_add(w);
                    }
                }
            }
            if total > cap as u128 {
                return total;
            }
        }
    }
    total
}

struct CellSearch {
    d: u32,
    genus_base: u32,
    r: usize,
    lo: i64,
    hi: i64,
    gcds: Vec<u32>,
    /// `suffix_min_cost[t]`: cheapest cost among exponents `>= t`.
    suffix_min_cost: Vec<i64>,
    out: Vec<CanonicalDatum>,
}

impl CellSearch {
    fn new(cell: &Cell) -> Self {
        let d = cell.d;
        let gcds: Vec<u32> = (0..d).map(|t| t.gcd(&d)).collect();
        let mut suffix_min_cost = vec![i64::MAX; d as usize + 1];
        for t in (1..d as usize).rev() {
            suffix_min_cost[t] = suffix_min_cost[t + 1].min((d - gcds[t]) as i64);
        }
        CellSearch {
            d,
            genus_base: cell.genus_base,
            r: cell.r,
            lo: cell.cost_lo,
            hi: cell.cost_hi,
            gcds,
            suffix_min_cost,
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<CanonicalDatum> {
        let mut theta = Vec::with_capacity(self.r);
        if self.r == 0 {
            if self.lo == 0 && self.hi >= 0 {
                self.leaf(&theta);
            }
        } else {
            // first entry: a divisor of d
            for first in 1..self.d {
                if !self.d.is_multiple_of(first) {
                    continue;
                }
                let cost = (self.d - first) as i64;
                theta.push(first);
                self.descend(&mut theta, first, cost, first as u64);
                theta.pop();
            }
        }
        self.out
    }

    fn descend(&mut self, theta: &mut Vec<u32>, min_gcd: u32, cost: i64, sum: u64) {
        let remaining = self.r - theta.len();
        if remaining == 0 {
            if cost >= self.lo && cost <= self.hi && sum.is_multiple_of(self.d as u64) {
                self.leaf(theta);
            }
            return;
        }
        if cost + remaining as i64 * (self.d as i64 - 1) < self.lo {
            return;
        }
        let start = *theta.last().unwrap();
        for t in start..self.d {
            if self.suffix_min_cost[t as usize] == i64::MAX
                || cost + remaining as i64 * self.suffix_min_cost[t as usize] > self.hi
            {
                break;
            }
            let g = self.gcds[t as usize];
            if g < min_gcd {
                continue;
            }
            let c = (self.d - g) as i64;
            if cost + c + (remaining as i64 - 1) * self.suffix_min_cost[t as usize] > self.hi {
                continue;
            }
            theta.push(t);
            self.descend(theta, min_gcd, cost + c, sum + t as u64);
            theta.pop();
        }
    }

    fn leaf(&mut self, theta: &[u32]) {
        if self.genus_base == 0 && theta.iter().fold(self.d, |acc, &t| acc.gcd(&t)) != 1 {
            return;
        }
        if !is_canonical(self.d, theta) {
            return;
        }
        let datum = MonodromyDatum::from_parts_unchecked(self.d, self.genus_base, theta.to_vec());
        self.out.push(CanonicalDatum::new_unchecked(datum));
    }
}

pub fn enumerate_cell(cell: &Cell) -> Vec<CanonicalDatum> {
    CellSearch::new(cell).run()
}

/// Runs `f` on a pool with the requested number of workers.
pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Every canonical valid datum within `bounds`, ordered by `(d, g', theta)`.
pub fn enumerate_data(bounds: &SearchBounds, options: &SearchOptions) -> Result<Vec<CanonicalDatum>> {
    bounds.validate()?;
    let estimate = estimate_candidates(bounds, options.candidate_cap);
    if estimate > options.candidate_cap as u128 {
        return Err(Error::BoundsTooLarge { estimate, cap: options.candidate_cap });
    }
    let cells = cells(bounds);
    let per_cell: Vec<Vec<CanonicalDatum>> =
        with_pool(options.workers, || cells.par_iter().map(enumerate_cell).collect())?;
    let mut all: Vec<CanonicalDatum> = per_cell.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::total_genus;

    fn thetas(list: &[CanonicalDatum]) -> Vec<(u32, u32, Vec<u32>)> {
        list.iter()
            .map(|c| (c.d(), c.genus_base(), c.theta().to_vec()))
            .collect()
    }

    #[test]
    fn double_covers_over_elliptic() {
        let b = SearchBounds::up_to_genus(3).with_d(2).with_genus_base(1);
        let got = enumerate_data(&b, &SearchOptions::default()).unwrap();
        assert_eq!(thetas(&got), vec![(2, 1, vec![1, 1]), (2, 1, vec![1, 1, 1, 1])]);
    }

    #[test]
    fn triple_covers_of_the_line() {
        let b = SearchBounds::up_to_genus(1).with_d(3).with_genus_base(0);
        let got = enumerate_data(&b, &SearchOptions::default()).unwrap();
        assert_eq!(thetas(&got), vec![(3, 0, vec![1, 1, 1])]);

        let b = SearchBounds::up_to_genus(2).with_d(3).with_genus_base(0);
        let got = enumerate_data(&b, &SearchOptions::default()).unwrap();
        assert_eq!(thetas(&got), vec![(3, 0, vec![1, 1, 1]), (3, 0, vec![1, 1, 2, 2])]);
    }

    #[test]
    fn empty_window() {
        let b = SearchBounds::up_to_genus(5).with_genus_min(6);
        assert!(enumerate_data(&b, &SearchOptions::default()).unwrap().is_empty());
        let b = SearchBounds::up_to_genus(0).with_d(5).with_genus_base(2);
        assert!(enumerate_data(&b, &SearchOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn genus_window_is_respected() {
        let b = SearchBounds::up_to_genus(6).with_genus_min(4);
        for c in enumerate_data(&b, &SearchOptions::default()).unwrap() {
            let g = total_genus(&c);
            assert!((4..=6).contains(&g), "{c} has genus {g}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let b = SearchBounds::up_to_genus(30);
        let opts = SearchOptions { workers: 1, candidate_cap: 1000 };
        assert_eq!(enumerate_data(&b, &opts).unwrap_err().code(), "BoundsTooLarge");
    }

    #[test]
    fn estimate_bounds_emitted_count() {
        let b = SearchBounds::up_to_genus(6);
        let est = estimate_candidates(&b, u64::MAX);
        let n = enumerate_data(&b, &SearchOptions::default()).unwrap().len();
        assert!(est >= n as u128);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(3, 2), 6);
        assert_eq!(multiset_count(1, 7), 1);
        assert_eq!(multiset_count(5, 0), 1);
        assert_eq!(multiset_count(0, 2), 0);
        assert_eq!(multiset_count(4, 3), 20);
    }
}
