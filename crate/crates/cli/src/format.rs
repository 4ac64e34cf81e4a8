//! Record serialization: JSON lines (canonical), CSV and Markdown.
//!
//! CSV and Markdown use one column per `ResultRecord` field. Scalar string
//! fields are written bare; everything else is the field's compact JSON, so
//! all three formats parse back to the same record.

use std::io::{self, Write};

use anyhow::{bail, Context, Result};
use serde_json::{Map, Value};
use smale5_core::ResultRecord;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

pub const COLUMNS: [&str; 12] = [
    "weights",
    "degree",
    "index",
    "yy_type",
    "exponents",
    "quasismooth",
    "verdict",
    "lichnerowicz",
    "b2",
    "torsion",
    "manifold",
    "provenance",
];

/// Columns whose cells hold a bare string rather than JSON.
const BARE: [&str; 3] = ["yy_type", "manifold", "provenance"];

pub fn to_json_line(r: &ResultRecord) -> Result<String> {
    Ok(serde_json::to_string(r)?)
}

pub fn cells(r: &ResultRecord) -> Result<Vec<String>> {
    fn json<T: serde::Serialize>(v: &T) -> Result<String> {
        Ok(serde_json::to_string(v)?)
    }
    fn opt<T: serde::Serialize>(v: &Option<T>) -> Result<String> {
        v.as_ref().map_or(Ok(String::new()), json)
    }
    Ok(vec![
        json(&r.weights)?,
        r.degree.to_string(),
        r.index.to_string(),
        r.yy_type.map(|t| t.to_string()).unwrap_or_default(),
        opt(&r.exponents)?,
        json(&r.quasismooth)?,
        json(&r.verdict)?,
        opt(&r.lichnerowicz)?,
        opt(&r.b2)?,
        opt(&r.torsion)?,
        r.manifold.clone().unwrap_or_default(),
        r.provenance.clone().unwrap_or_default(),
    ])
}

pub fn from_cells(cells: &[String]) -> Result<ResultRecord> {
    if cells.len() != COLUMNS.len() {
        bail!("expected {} cells, got {}", COLUMNS.len(), cells.len());
    }
    let mut map = Map::new();
    for (&col, cell) in COLUMNS.iter().zip(cells) {
        let v = if cell.is_empty() {
            Value::Null
        } else if BARE.contains(&col) {
            Value::String(cell.clone())
        } else {
            serde_json::from_str(cell).with_context(|| format!("column {col}: bad cell '{cell}'"))?
        };
        map.insert(col.to_string(), v);
    }
    Ok(serde_json::from_value(Value::Object(map))?)
}

fn md_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('|', "\\|")
}

fn md_row(cells: &[String]) -> String {
    let inner: Vec<String> = cells.iter().map(|c| md_escape(c)).collect();
    format!("| {} |", inner.join(" | "))
}

/// Writes a Markdown table; cells are escaped, the header is taken as is.
pub fn write_md_table<W: Write>(out: &mut W, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "| {} |", header.join(" | "))?;
    writeln!(out, "|{}", "---|".repeat(header.len()))?;
    for row in rows {
        writeln!(out, "{}", md_row(row))?;
    }
    Ok(())
}

pub fn write_records<W: Write>(out: &mut W, records: &[ResultRecord], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", to_json_line(r)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(COLUMNS)?;
            for r in records {
                w.write_record(cells(r)?)?;
            }
            w.flush()?;
        }
        Format::Md => {
            let rows = records.iter().map(cells).collect::<Result<Vec<_>>>()?;
            write_md_table(out, &COLUMNS, &rows)?;
        }
    }
    Ok(())
}

pub fn read_json_lines(s: &str) -> Result<Vec<ResultRecord>> {
    s.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).with_context(|| format!("bad record line: {l}")))
        .collect()
}

pub fn read_csv(s: &str) -> Result<Vec<ResultRecord>> {
    let mut rdr = csv::Reader::from_reader(s.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != COLUMNS {
        bail!("unexpected CSV header {header:?}");
    }
    rdr.records()
        .map(|row| {
            let row = row?;
            from_cells(&row.iter().map(str::to_string).collect::<Vec<_>>())
        })
        .collect()
}

/// Splits a Markdown table row on unescaped pipes and unescapes the cells.
fn split_md_row(line: &str) -> Vec<String> {
    let body = line.trim().trim_start_matches('|');
    let mut cells = Vec::new();
    let mut cur = String::new();
    let mut chars = body.chars();
    while let Some(ch) = chars.next() {
        match ch {
            '\\' => cur.extend(chars.next()),
            '|' => cells.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    cells.into_iter().map(|c| c.trim().to_string()).collect()
}

pub fn read_md(s: &str) -> Result<Vec<ResultRecord>> {
    let mut lines = s.lines().filter(|l| l.trim_start().starts_with('|'));
    let header = split_md_row(lines.next().context("empty Markdown table")?);
    if header != COLUMNS {
        bail!("unexpected Markdown header {header:?}");
    }
    lines.next().context("Markdown table has no separator")?;
    lines.map(|l| from_cells(&split_md_row(l))).collect()
}

pub fn read_records(s: &str, format: Format) -> Result<Vec<ResultRecord>> {
    match format {
        Format::Json => read_json_lines(s),
        Format::Csv => read_csv(s),
        Format::Md => read_md(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smale5_core::{classify, LinkCandidate};

    fn sample() -> Vec<ResultRecord> {
        let mut out = Vec::new();
        for (w, d) in [([2, 4, 6, 11], 22), ([12, 7, 3, 3], 24), ([1, 1, 1, 1], 5), ([9, 10, 12, 15], 45)] {
            let mut r = classify(&LinkCandidate::new(w, d).unwrap()).unwrap();
            r.provenance = Some("a|b, \"quoted\"".into());
            out.push(r);
        }
        out
    }

    #[test]
    fn every_format_round_trips() {
        let records = sample();
        for format in [Format::Json, Format::Csv, Format::Md] {
            let mut buf = Vec::new();
            write_records(&mut buf, &records, format).unwrap();
            let text = String::from_utf8(buf).unwrap();
            assert_eq!(read_records(&text, format).unwrap(), records, "{format:?}");
        }
    }

    #[test]
    fn json_is_integer_only() {
        let line = to_json_line(&sample()[0]).unwrap();
        assert!(line.starts_with("{\"weights\":[2,4,6,11],\"degree\":22,\"index\":1,"));
        let v: Value = serde_json::from_str(&line).unwrap();
        fn no_floats(v: &Value) -> bool {
            match v {
                Value::Number(n) => n.is_i64() || n.is_u64(),
                Value::Array(a) => a.iter().all(no_floats),
                Value::Object(m) => m.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&v));
    }

    #[test]
    fn md_split_handles_escapes() {
        assert_eq!(split_md_row("| a\\|b | c\\\\ |"), vec!["a|b", "c\\"]);
    }
}
