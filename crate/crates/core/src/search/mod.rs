//! Enumeration of canonical data, targeted scans, and the persisted atlas.

pub mod atlas;
pub mod bounds;
pub mod enumerate;
pub mod scans;

pub use atlas::{
    build_atlas, build_records, diff_records, regression_compare, Atlas, AtlasHeader,
    AtlasRecord, ChangedRecord, DiffReport, RecordMeta, SCHEMA_NAME, SCHEMA_VERSION,
    TOOL_VERSION,
};
pub use bounds::{cyclic_order_bound, SearchBounds, SearchOptions, DEFAULT_CANDIDATE_CAP};
pub use enumerate::{cells, enumerate_cell, enumerate_data, estimate_candidates, Cell};
pub use scans::{scan_double_loci, scan_special, scan_triple_loci, triple_datum};
