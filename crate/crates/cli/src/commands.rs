//! Command implementations, independent of argument parsing.

use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use anyhow::Result;
use smale5_core::series::{families, family, instantiate_series, Param};
use smale5_core::tables::{AuditReport, AuditRow, ERRATA};
use smale5_core::topology::curve_genus;
use smale5_core::yy::{catalog, weights_for};
use smale5_core::{
    classify, enumerate_with, Error, LinkCandidate, Monomial, Params, ResultRecord, SeStatus, SearchSpec, YyType,
};

use crate::cache::Cache;
use crate::format::{write_md_table, Format};

/// An inclusive integer range written `a`, `a..b` or `a..=b` (both inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn single(v: u64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad range '{s}'"));
        let span = match s.split_once("..") {
            Some((a, b)) => Span { lo: num(a)?, hi: num(b.strip_prefix('=').unwrap_or(b))? },
            None => Span::single(num(s)?),
        };
        if span.hi < span.lo {
            return Err(format!("empty range '{s}'"));
        }
        Ok(span)
    }
}

/// Parses `standard`, `all` or a single Roman numeral.
pub fn parse_types(list: &[String]) -> Result<Vec<YyType>> {
    let mut out = Vec::new();
    for item in list {
        match item.to_ascii_lowercase().as_str() {
            "standard" => out.extend(YyType::STANDARD),
            "all" => out.extend(YyType::ALL),
            _ => out.push(item.parse::<YyType>()?),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn parse_verdict(s: &str) -> std::result::Result<SeStatus, String> {
    match s.to_ascii_lowercase().as_str() {
        "se_certified" | "certified" | "yes" => Ok(SeStatus::SeCertified),
        "obstructed" | "no" => Ok(SeStatus::Obstructed),
        "unknown" | "?" => Ok(SeStatus::Unknown),
        _ => Err(format!("unknown verdict '{s}' (se_certified, obstructed, unknown)")),
    }
}

/// Parses `z0^5 + z1^3*z3` style support lists.
pub fn parse_support(s: &str) -> Result<Vec<Monomial>> {
    Ok(s.split('+').map(str::parse).collect::<smale5_core::Result<_>>()?)
}

fn run_classify(c: &LinkCandidate, cache: Option<&Cache>) -> smale5_core::Result<ResultRecord> {
    match cache {
        Some(cache) => cache.classify(c),
        None => classify(c),
    }
}

pub fn check(
    weights: [u64; 4],
    degree: u64,
    support: Option<Vec<Monomial>>,
    cache: Option<&Cache>,
) -> Result<ResultRecord> {
    let mut c = LinkCandidate::new(weights, degree)?;
    if let Some(ms) = support {
        c = c.with_support(ms)?;
    }
    let mut r = run_classify(&c, cache)?;
    r.provenance = Some("check".into());
    Ok(r)
}

pub fn solve(ty: YyType, exponents: &[u64], cache: Option<&Cache>) -> Result<ResultRecord> {
    if exponents.len() != 4 {
        return Err(Error::Usage(format!("expected 4 exponents, got {}", exponents.len())).into());
    }
    let c = weights_for(ty, exponents)?;
    let mut r = run_classify(&c, cache)?;
    r.provenance = Some(format!("solve {ty} {exponents:?}"));
    Ok(r)
}

pub fn search(spec: &SearchSpec, cache: Option<&Cache>) -> Result<Vec<ResultRecord>> {
    Ok(enumerate_with(spec, |c| run_classify(c, cache))?)
}

/// Parameter ranges for [`series`]; a family only iterates the parameters it uses.
#[derive(Debug, Clone, Copy)]
pub struct SeriesRanges {
    pub k: Span,
    pub n: Span,
    pub l: Span,
}

pub fn series(names: &[String], ranges: SeriesRanges, cache: Option<&Cache>) -> Result<Vec<ResultRecord>> {
    let fams = if names.is_empty() || names.iter().any(|n| n == "all") {
        families()
    } else {
        names.iter().map(|n| family(n)).collect::<smale5_core::Result<_>>()?
    };
    let mut out = Vec::new();
    for f in &fams {
        let span = |p: Param, s: Span| if f.params.contains(&p) { s } else { Span::single(1) };
        for k in span(Param::K, ranges.k).iter() {
            for n in span(Param::N, ranges.n).iter() {
                for l in span(Param::L, ranges.l).iter() {
                    let p = Params::new(k, n, l);
                    let Some(c) = instantiate_series(f, p)? else { continue };
                    let mut r = run_classify(&c, cache)?;
                    let tags: Vec<String> = [(Param::K, "k", k), (Param::N, "n", n), (Param::L, "l", l)]
                        .into_iter()
                        .filter(|(p, _, _)| f.params.contains(p))
                        .map(|(_, name, v)| format!("{name}={v}"))
                        .collect();
                    r.provenance = Some(format!("{} {}", f.name, tags.join(" ")));
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// One-line human summary of a record.
pub fn summary(r: &ResultRecord) -> String {
    let [a, b, c, d] = r.weights;
    let mut s = format!("L(({a},{b},{c},{d}); {})  I = {}", r.degree, r.index);
    if let (Some(t), Some(e)) = (r.yy_type, r.exponents) {
        s += &format!("  type {t} {e:?}");
    }
    if !r.quasismooth.quasismooth {
        let why = r.quasismooth.failure.as_ref().map(|f| f.detail.as_str()).unwrap_or("");
        s += &format!("  not quasi-smooth ({why})");
    }
    match (r.verdict.status, r.verdict.branch) {
        (SeStatus::SeCertified, Some(b)) => s += &format!("  SE certified (branch {b})"),
        (SeStatus::SeCertified, None) => s += "  SE certified",
        (SeStatus::Obstructed, _) => s += "  SE obstructed",
        (SeStatus::Unknown, _) => s += "  SE unknown",
    }
    if let Some(reason) = r.verdict.reason.as_deref().filter(|x| !x.is_empty()) {
        s += &format!(" [{reason}]");
    }
    if let Some(m) = &r.manifold {
        s += &format!("  {m}");
    }
    s
}

fn audit_status(row: &AuditRow) -> &'static str {
    match (row.matches(), row.erratum.is_some()) {
        (true, _) => "match",
        (false, true) => "erratum",
        (false, false) => "mismatch",
    }
}

const AUDIT_COLUMNS: [&str; 11] = [
    "id",
    "weights",
    "degree",
    "I (printed)",
    "I",
    "SE (printed)",
    "SE",
    "manifold (printed)",
    "manifold",
    "status",
    "notes",
];

fn audit_cells(row: &AuditRow) -> Vec<String> {
    let r = &row.record;
    let se = match r.verdict.status {
        SeStatus::SeCertified => match r.verdict.branch {
            Some(b) => format!("yes (branch {b})"),
            None => "yes".into(),
        },
        SeStatus::Obstructed => "no".into(),
        SeStatus::Unknown => "?".into(),
    };
    let mut notes = row.mismatches.clone();
    if let Some(e) = &row.erratum {
        notes.push(format!("erratum: {}", e.note));
    }
    let [a, b, c, d] = r.weights;
    vec![
        row.id.clone(),
        format!("({a},{b},{c},{d})"),
        r.degree.to_string(),
        row.printed.index.to_string(),
        r.index.to_string(),
        row.printed.se.clone(),
        se,
        row.printed.manifold.clone(),
        r.manifold.clone().unwrap_or_else(|| "-".into()),
        audit_status(row).into(),
        notes.join("; "),
    ]
}

pub fn write_tables<W: Write>(out: &mut W, report: &AuditReport, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for row in &report.rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(AUDIT_COLUMNS)?;
            for row in &report.rows {
                w.write_record(audit_cells(row))?;
            }
            w.flush()?;
        }
        Format::Md => {
            for (i, table) in ["table1", "table2", "table3"].iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "### Table {}", i + 1)?;
                writeln!(out)?;
                let rows: Vec<Vec<String>> = report.table(table).map(audit_cells).collect();
                write_md_table(out, &AUDIT_COLUMNS, &rows)?;
            }
            writeln!(out)?;
            writeln!(out, "errata overlay version {}", report.errata_version)?;
        }
    }
    Ok(())
}

/// Fails with an inconsistency when the mismatches differ from the errata overlay.
pub fn check_errata(report: &AuditReport) -> Result<()> {
    let mut expected: Vec<String> = ERRATA.iter().map(|e| e.id.to_string()).collect();
    expected.sort();
    let got = report.mismatched_ids();
    if got != expected {
        return Err(Error::Inconsistency(format!(
            "table mismatches {got:?} differ from the errata overlay {expected:?}"
        ))
        .into());
    }
    Ok(())
}

pub fn write_catalog<W: Write>(out: &mut W, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for f in catalog() {
                writeln!(out, "{}", serde_json::to_string(f)?)?;
            }
        }
        Format::Csv | Format::Md => {
            let header = ["type", "pattern", "side condition", "standard", "index (sum w over d)"];
            let rows: Vec<Vec<String>> = catalog()
                .iter()
                .map(|f| {
                    vec![
                        f.type_id.to_string(),
                        f.pattern.into(),
                        f.side_condition.unwrap_or("").into(),
                        f.standard.to_string(),
                        f.index_formula.into(),
                    ]
                })
                .collect();
            if format == Format::Md {
                write_md_table(out, &header, &rows)?;
            } else {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(header)?;
                for row in rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
    }
    Ok(())
}

/// Writes `{weights, degree, genus}` for a branch curve.
pub fn write_genus<W: Write>(out: &mut W, w: [u64; 3], degree: u64, format: Format) -> Result<()> {
    let genus = curve_genus(&w, degree)?;
    match format {
        Format::Json => {
            let v = serde_json::json!({ "weights": w, "degree": degree, "genus": genus });
            writeln!(out, "{v}")?;
        }
        Format::Csv | Format::Md => {
            let row = vec![serde_json::to_string(&w)?, degree.to_string(), genus.to_string()];
            if format == Format::Md {
                write_md_table(out, &["weights", "degree", "genus"], &[row])?;
            } else {
                let mut wr = csv::Writer::from_writer(&mut *out);
                wr.write_record(["weights", "degree", "genus"])?;
                wr.write_record(row)?;
                wr.flush()?;
            }
        }
    }
    Ok(())
}

/// Exactly four values, as for `-w 2,4,6,11`.
pub fn four(v: &[u64], what: &str) -> Result<[u64; 4]> {
    Ok(v.try_into().map_err(|_| Error::Usage(format!("{what}: expected 4 values, got {}", v.len())))?)
}
