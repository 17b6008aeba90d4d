//! Output formats. JSON is authoritative; the human and CSV views are
//! projections of the same values.

use std::fmt::Write as _;

use serde::Serialize;

use cycmon::search::AtlasRecord;
use cycmon::{DegenerationResult, Error, MonodromyDatum};

use crate::Format;

pub const CSV_COLUMNS: [&str; 8] =
    ["d", "genus_base", "theta", "genus", "dim_family", "dim_sg", "no_repeating", "status"];

fn join(theta: &[u32]) -> String {
    theta.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn csv_bytes<R: AsRef<[u8]>>(header: &[&str], rows: impl IntoIterator<Item = Vec<R>>) -> Result<Vec<u8>, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(&row).map_err(to_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

fn json_lines<T: Serialize>(items: &[T]) -> Vec<u8> {
    let mut out = Vec::new();
    for item in items {
        serde_json::to_writer(&mut out, item).expect("values serialize");
        out.push(b'\n');
    }
    out
}

fn csv_row(r: &AtlasRecord) -> Vec<String> {
    let (dim_family, dim_sg, no_rep, status) = match &r.verdict {
        Some(v) => (
            v.star.dim_family.to_string(),
            v.star.dim_sg.to_string(),
            v.no_repeating.to_string(),
            v.status.to_string(),
        ),
        // zero-dimensional family: no verdict
        None => ("0".into(), String::new(), String::new(), String::new()),
    };
    vec![
        r.datum.d().to_string(),
        r.datum.genus_base().to_string(),
        join(r.datum.theta()),
        r.genus.to_string(),
        dim_family,
        dim_sg,
        no_rep,
        status,
    ]
}

fn describe(out: &mut String, r: &AtlasRecord, input: Option<&MonodromyDatum>) {
    if let Some(x) = input.filter(|x| *x != r.datum.datum()) {
        let _ = writeln!(out, "datum:        {x}");
        let _ = writeln!(out, "canonical:    {}", r.datum);
    } else {
        let _ = writeln!(out, "datum:        {}", r.datum);
    }
    let _ = writeln!(out, "genus:        {}", r.genus);
    let _ = writeln!(out, "profile:      {}", r.profile);
    let _ = writeln!(out, "factors:      {}", r.factors);
    match &r.verdict {
        Some(v) => {
            let star = &v.star;
            let _ = writeln!(out, "no repeats:   {}", v.no_repeating);
            let _ = writeln!(
                out,
                "dimensions:   family {}, S(G) {}{}",
                star.dim_family,
                star.dim_sg,
                if star.holds { " (equal)" } else { "" }
            );
            let _ = writeln!(out, "status:       {}", v.status);
            let _ = writeln!(out, "monodromy:    {}", v.monodromy);
            if v.isogeny_advisory {
                let _ = writeln!(out, "note:         SU(1,1) and Sp(2) factors are isogenous");
            }
            if star.anomaly {
                let _ = writeln!(out, "note:         dim S(G) exceeds the family dimension");
            }
            if v.theorem_violation {
                let _ = writeln!(out, "ALERT:        special family with genus >= 8");
            }
        }
        None => {
            let _ = writeln!(out, "status:       zero-dimensional family");
        }
    }
}

/// Records; `input` is the datum as given when analyzing a single one.
pub fn records(format: Format, records: &[AtlasRecord], input: Option<&MonodromyDatum>) -> Result<Vec<u8>, Error> {
    match format {
        Format::Json => Ok(json_lines(records)),
        Format::Csv => csv_bytes(&CSV_COLUMNS, records.iter().map(csv_row)),
        Format::Human if records.len() == 1 && input.is_some() => {
            let mut out = String::new();
            describe(&mut out, &records[0], input);
            Ok(out.into_bytes())
        }
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>4} {:>3} {:<24} {:>5} {:>5} {:>5}  {:<5}  status",
                "d", "g'", "theta", "genus", "dimM", "dimS", "norep"
            );
            for r in records {
                let row = csv_row(r);
                let status = if row[7].is_empty() { "-" } else { &row[7] };
                let _ = writeln!(
                    out,
                    "{:>4} {:>3} {:<24} {:>5} {:>5} {:>5}  {:<5}  {}",
                    row[0], row[1], row[2], row[3], row[4], row[5], row[6], status
                );
            }
            let _ = writeln!(out, "{} record(s)", records.len());
            Ok(out.into_bytes())
        }
    }
}

pub fn chain(format: Format, start: &MonodromyDatum, steps: &[DegenerationResult]) -> Result<Vec<u8>, Error> {
    match format {
        Format::Json => Ok(serde_json::to_vec(steps).map(|mut v| {
            v.push(b'\n');
            v
        }).expect("chain serializes")),
        Format::Csv => {
            let mut rows = Vec::with_capacity(steps.len() + 1);
            let mut push = |step: usize, x: &MonodromyDatum| {
                rows.push(vec![
                    step.to_string(),
                    x.d().to_string(),
                    x.genus_base().to_string(),
                    join(x.theta()),
                    cycmon::total_genus(x).to_string(),
                    cycmon::prym_dimension(x).to_string(),
                ]);
            };
            push(0, start);
            for (i, s) in steps.iter().enumerate() {
                push(i + 1, &s.normalized);
            }
            csv_bytes(&["step", "d", "genus_base", "theta", "genus", "prym_dim"], rows)
        }
        Format::Human => {
            let mut out = String::new();
            if steps.is_empty() {
                let _ = writeln!(out, "{start}: base genus 0, nothing to degenerate");
            }
            for (i, s) in steps.iter().enumerate() {
                let _ = writeln!(out, "step {}:", i + 1);
                for line in s.to_string().lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            Ok(out.into_bytes())
        }
    }
}

pub fn double_loci(format: Format, rows: &[(u64, u64)]) -> Result<Vec<u8>, Error> {
    #[derive(Serialize)]
    struct Row {
        g: u64,
        h: u64,
    }
    match format {
        Format::Json => Ok(json_lines(&rows.iter().map(|&(g, h)| Row { g, h }).collect::<Vec<_>>())),
        Format::Csv => csv_bytes(&["g", "h"], rows.iter().map(|&(g, h)| vec![g.to_string(), h.to_string()])),
        Format::Human => {
            let mut out = String::from("special double-cover loci (g, h):\n");
            for (g, h) in rows {
                let _ = writeln!(out, "  ({g}, {h})");
            }
            Ok(out.into_bytes())
        }
    }
}

pub fn triple_loci(format: Format, rows: &[(u64, u64, u64, u64)]) -> Result<Vec<u8>, Error> {
    #[derive(Serialize)]
    struct Row {
        g: u64,
        h: u64,
        r: u64,
        m: u64,
    }
    match format {
        Format::Json => Ok(json_lines(
            &rows.iter().map(|&(g, h, r, m)| Row { g, h, r, m }).collect::<Vec<_>>(),
        )),
        Format::Csv => csv_bytes(
            &["g", "h", "r", "m"],
            rows.iter().map(|&(g, h, r, m)| vec![g.to_string(), h.to_string(), r.to_string(), m.to_string()]),
        ),
        Format::Human => {
            let mut out = String::from("special triple-cover loci (g, h, r, m):\n");
            for (g, h, r, m) in rows {
                let _ = writeln!(out, "  ({g}, {h}, {r}, {m})");
            }
            Ok(out.into_bytes())
        }
    }
}
