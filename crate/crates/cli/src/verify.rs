//! Golden-table regressions.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use cycmon::search::{
    build_records, regression_compare, scan_double_loci, scan_special, scan_triple_loci, Atlas,
    SearchBounds, SearchOptions,
};
use cycmon::Error;

/// Special double-cover loci `(g, h)`.
pub const DOUBLE_LOCI: [(u64, u64); 4] = [(1, 0), (2, 0), (2, 1), (3, 1)];

/// Special triple-cover loci `(g, h, r, m)`.
pub const TRIPLE_LOCI: [(u64, u64, u64, u64); 5] =
    [(2, 0, 4, 2), (3, 0, 5, 1), (4, 0, 6, 0), (3, 1, 2, 1), (4, 1, 3, 0)];

/// Special families stop at this genus.
pub const EMPTY_FROM_GENUS: u64 = 8;

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub theorem_violation: bool,
    pub report: String,
}

struct Log {
    passed: bool,
    report: String,
}

impl Log {
    fn line(&mut self, ok: bool, what: &str, detail: impl std::fmt::Display) {
        self.passed &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(self.report, "{tag}  {what}: {detail}");
    }
}

/// Tables that lie within `genus_max` (a smaller bound legitimately sees
/// only the low-genus entries).
fn expected_double(genus_max: u64) -> BTreeSet<(u64, u64)> {
    DOUBLE_LOCI.into_iter().filter(|&(g, _)| g <= genus_max).collect()
}

fn expected_triple(genus_max: u64) -> BTreeSet<(u64, u64, u64, u64)> {
    TRIPLE_LOCI.into_iter().filter(|&(g, ..)| g <= genus_max).collect()
}

pub fn verify(
    genus_max: u64,
    emptiness_max: u64,
    atlas: Option<&Path>,
    options: &SearchOptions,
) -> Result<VerifyOutcome, Error> {
    let mut log = Log { passed: true, report: String::new() };
    let mut theorem_violation = false;

    let double: BTreeSet<_> = scan_double_loci(genus_max)?.into_iter().collect();
    let want = expected_double(genus_max);
    log.line(double == want, &format!("double covers, g <= {genus_max}"), format!("{double:?}"));

    let triple: BTreeSet<_> = scan_triple_loci(genus_max)?.into_iter().collect();
    let want = expected_triple(genus_max);
    log.line(triple == want, &format!("triple covers, g <= {genus_max}"), format!("{triple:?}"));

    let top = genus_max.min(emptiness_max);
    if top >= EMPTY_FROM_GENUS {
        let bounds = SearchBounds::up_to_genus(top).with_genus_min(EMPTY_FROM_GENUS);
        let found = scan_special(&bounds, options)?;
        theorem_violation |= found.iter().any(|r| r.verdict.as_ref().is_some_and(|v| v.theorem_violation));
        let detail = if found.is_empty() {
            format!("none for d <= {}", bounds.d_max)
        } else {
            found.iter().map(|r| r.key()).collect::<Vec<_>>().join("; ")
        };
        log.line(found.is_empty(), &format!("no special families, {EMPTY_FROM_GENUS} <= g <= {top}"), detail);
    }

    if let Some(path) = atlas {
        let stored = Atlas::load(path)?;
        let fresh = build_records(&stored.header.bounds, options)?;
        let diff = regression_compare(path, &fresh)?;
        let detail = if diff.is_empty() {
            format!("{} records match", fresh.len())
        } else {
            let mut s = format!(
                "{} added, {} removed, {} changed",
                diff.added.len(),
                diff.removed.len(),
                diff.changed.len()
            );
            for c in diff.changed.iter().take(10) {
                let _ = write!(s, "\n      {}: {}", c.key, c.fields.join(", "));
            }
            s
        };
        log.line(diff.is_empty(), &format!("atlas {}", path.display()), detail);
    }

    Ok(VerifyOutcome { passed: log.passed, theorem_violation, report: log.report })
}
