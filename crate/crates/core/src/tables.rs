//! Embedded appendix tables, the errata overlay and the audit that compares
//! both against the engine.

use serde::Serialize;

use crate::certify::{klt_unchecked, SeStatus};
use crate::error::Result;
use crate::link::LinkCandidate;
use crate::record::ResultRecord;
use crate::search::classify;
use crate::series::{families, instantiate_series, Params, SeColumn};
use crate::topology::{betti2, smale_name, torsion};
use crate::yy::{realize, RealizeOutcome, YyType};

/// The SE column of Tables 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedSe {
    Yes,
    Open,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub row: usize,
    pub exponents: [u64; 4],
    pub weights: [u64; 4],
    pub degree: u64,
    pub index: i64,
    pub manifold: &'static str,
    pub se: PrintedSe,
    pub yy_type: YyType,
}

impl TableRow {
    pub fn id(&self) -> String {
        format!("table{}.row{}", self.table, self.row)
    }
}

use PrintedSe::{Open as Q, Yes as Y};
use YyType::*;

macro_rules! rows {
    ($table:expr; $( $a:expr, $w:expr, $d:expr, $i:expr, $m:expr, $se:expr, $t:expr; )*) => {{
        let data = [$( ($a, $w, $d, $i, $m, $se, $t) ),*];
        let mut out = Vec::with_capacity(data.len());
        for (k, (a, w, d, i, m, se, t)) in data.into_iter().enumerate() {
            out.push(TableRow {
                table: $table, row: k + 1, exponents: a, weights: w, degree: d, index: i,
                manifold: m, se, yy_type: t,
            });
        }
        out
    }};
}

/// Rational homology spheres `nM2`.
pub fn table2() -> Vec<TableRow> {
    rows![2;
        [11, 5, 3, 2], [2, 4, 6, 11], 22, 1, "5M2", Y, VII;
        [7, 7, 3, 2], [2, 2, 4, 7], 14, 1, "6M2", Y, II;
        [27, 7, 3, 2], [4, 18, 42, 63], 126, 1, "3M2", Y, II;
        [14, 9, 3, 2], [8, 14, 42, 63], 126, 1, "M2", Y, II;
        [9, 7, 3, 2], [4, 6, 14, 21], 42, 3, "3M2", Q, II;
        [9, 7, 3, 2], [4, 6, 14, 19], 42, 1, "3M2", Y, VII;
        [11, 9, 3, 2], [18, 20, 66, 99], 198, 5, "M2", Q, II;
        [11, 9, 3, 2], [18, 22, 60, 99], 198, 1, "M2", Y, II;
        [10, 9, 3, 2], [8, 10, 30, 45], 90, 3, "M2", Y, II;
        [10, 9, 3, 2], [6, 10, 30, 45], 90, 1, "M2", Y, II;
        [15, 7, 3, 2], [2, 4, 10, 15], 30, 1, "6M2", Y, II;
        [12, 9, 3, 2], [4, 6, 18, 27], 54, 1, "3M2", Y, II;
        [17, 4, 3, 2], [4, 14, 26, 41], 82, 3, "2M2", Q, X;
        [12, 4, 3, 2], [4, 10, 18, 29], 58, 3, "2M2", Q, X;
        [7, 4, 3, 2], [4, 6, 10, 17], 34, 3, "2M2", Q, X;
        [15, 5, 3, 2], [2, 6, 8, 15], 30, 1, "5M2", Y, II;
        [5, 5, 5, 2], [2, 2, 2, 5], 10, 1, "6M2", Y, I;
        [6, 5, 5, 2], [4, 6, 6, 15], 30, 1, "2M2", Y, II;
        [7, 5, 5, 2], [10, 12, 14, 35], 70, 1, "2M2", Y, II;
        [9, 9, 3, 2], [2, 2, 6, 9], 18, 1, "7M2", Y, I;
        [21, 7, 3, 2], [2, 6, 14, 21], 42, 1, "6M2", Y, I;
        [15, 9, 3, 2], [6, 10, 30, 45], 90, 1, "M2", Y, I;
    ]
}

/// Links with `b2 > 0`.
pub fn table3() -> Vec<TableRow> {
    rows![3;
        [5, 3, 3, 3], [9, 10, 12, 15], 45, 1, "M∞#M3", Y, IV;
        [8, 4, 3, 2], [3, 6, 7, 9], 24, 1, "M∞#2M3", Y, IV;
        [9, 4, 3, 2], [2, 4, 6, 7], 18, 1, "2M∞#3M2", Q, VII;
        [10, 4, 3, 2], [4, 10, 12, 15], 40, 1, "3M∞#M2", Y, IV;
        [6, 4, 4, 2], [8, 9, 12, 20], 48, 1, "M∞#M4", Y, IV;
        [16, 5, 3, 2], [3, 9, 13, 24], 48, 1, "M∞#2M3", Y, VII;
        [6, 4, 2, 2], [4, 6, 9, 10], 24, 5, "M∞#M2", Q, IV;
        [6, 4, 4, 2], [4, 6, 6, 9], 24, 1, "M∞#M2", Y, IV;
        [6, 5, 3, 2], [10, 12, 16, 25], 60, 3, "M∞#M2", Q, IV;
        [12, 5, 3, 2], [10, 24, 32, 55], 120, 1, "M∞#M2", Y, IV;
        [6, 4, 3, 3], [4, 5, 8, 8], 24, 1, "2M∞#M4", Y, II;
        [8, 6, 4, 2], [6, 7, 12, 24], 48, 1, "M∞#M6", Y, II;
        [12, 4, 4, 2], [4, 9, 12, 24], 48, 1, "M∞#M4", Y, II;
        [7, 6, 4, 2], [6, 7, 9, 21], 42, 1, "2M∞#M3", Y, II;
        [6, 6, 4, 2], [4, 4, 5, 12], 24, 1, "M∞#2M4", Y, II;
        [12, 5, 4, 2], [5, 11, 15, 30], 60, 1, "M∞#M5", Y, II;
        [12, 7, 3, 2], [7, 8, 28, 42], 84, 1, "M∞#M7", Y, II;
        [10, 8, 3, 2], [4, 5, 12, 20], 40, 1, "3M∞#M4", Y, II;
        [8, 8, 3, 2], [3, 3, 7, 12], 24, 1, "M∞#3M3", Y, II;
        [21, 6, 3, 2], [2, 7, 14, 20], 42, 1, "6M∞#M2", Q, II;
        [8, 4, 4, 2], [2, 3, 4, 8], 16, 1, "5M∞#M2", Y, II;
        [6, 6, 4, 2], [2, 2, 3, 6], 12, 1, "5M∞#2M2", Y, I;
        [12, 8, 3, 2], [2, 3, 8, 12], 24, 1, "6M∞#M2", Y, I;
        [10, 5, 4, 2], [2, 4, 5, 10], 20, 1, "4M∞#2M2", Y, I;
        [12, 9, 3, 2], [3, 4, 12, 18], 36, 1, "4M∞#M3", Y, I;
        [8, 6, 4, 2], [3, 4, 6, 12], 24, 1, "3M∞#M3", Y, I;
        [12, 10, 3, 2], [5, 6, 20, 30], 60, 1, "2M∞#M5", Y, I;
        [18, 8, 3, 2], [4, 9, 24, 36], 72, 1, "2M∞#M4", Y, I;
        [9, 6, 4, 2], [4, 6, 9, 18], 36, 1, "2M∞#M2", Y, I;
        [12, 6, 3, 2], [3, 6, 10, 18], 36, 1, "M∞#2M3", Y, II;
        [12, 6, 3, 2], [3, 6, 11, 18], 36, 2, "M∞#2M3", Y, II;
        [6, 6, 3, 2], [3, 3, 5, 9], 18, 2, "M∞#2M3", Y, II;
        [20, 5, 4, 2], [3, 12, 16, 30], 60, 1, "M∞#2M3", Y, II;
        [8, 5, 4, 2], [5, 7, 10, 20], 40, 2, "M∞#M5", Y, II;
        [8, 5, 4, 2], [5, 6, 10, 20], 40, 1, "M∞#M5", Y, II;
    ]
}

/// Bumped whenever the overlay below changes.
pub const ERRATA_VERSION: u32 = 1;

/// Rows where the printed table and the engine disagree, with the audit note.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub field: &'static str,
    pub printed: &'static str,
    pub computed: &'static str,
    pub note: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        id: "table1.row14",
        field: "manifold",
        printed: "2M3",
        computed: "M∞#2M3",
        note: "same data as row 8; b2 = 1 for every k, so the free part cannot vanish",
    },
    Erratum {
        id: "table2.row7",
        field: "se",
        printed: "?",
        computed: "yes (klt branch 2)",
        note: "2Id = 1980 < 3*w0*w2 = 3564 and 66*3 = 198 keeps the line z0 = z1 = 0 off the variety",
    },
    Erratum {
        id: "table3.row1",
        field: "quasismooth",
        printed: "quasi-smooth",
        computed: "fails condition (2)",
        note: "gcd(10,12) = 2 but 10b + 12c = 45 is odd; the type IV normal form (3,3,5,3) is still an isolated singularity, so the criterion is rejecting a non-well-formed surface; I, b2 = 1 and torsion (Z3)^2 agree with the row",
    },
    Erratum {
        id: "table3.row4",
        field: "quasismooth",
        printed: "quasi-smooth",
        computed: "fails condition (2)",
        note: "gcd(12,15) = 3 does not divide 40; the type IV normal form (4,2,10,3) is still an isolated singularity, so the criterion is rejecting a non-well-formed surface; I, b2 = 3 and torsion (Z2)^2 agree with the row",
    },
];

pub fn erratum(id: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.id == id)
}

/// What a table prints for a row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Printed {
    pub index: i64,
    pub se: String,
    pub manifold: String,
}

/// Topology recomputed for rows that fail quasi-smoothness, for diagnostics only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub b2: Option<u64>,
    pub manifold: Option<String>,
    pub klt_branch: Option<u8>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub id: String,
    pub family: Option<String>,
    pub params: Option<Params>,
    pub yy_type: Option<YyType>,
    pub realization: Option<RealizeOutcome>,
    /// Other standard types realizing an unrealized row's exponents.
    pub alternatives: Vec<(YyType, [u64; 4])>,
    pub printed: Printed,
    pub record: ResultRecord,
    pub mismatches: Vec<String>,
    pub diagnostics: Option<Diagnostics>,
    pub erratum: Option<Erratum>,
}

impl AuditRow {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub errata_version: u32,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn table(&self, prefix: &str) -> impl Iterator<Item = &AuditRow> {
        let prefix = format!("{prefix}.");
        self.rows.iter().filter(move |r| r.id.starts_with(&prefix))
    }

    /// Distinct row or family ids with at least one mismatch.
    pub fn mismatched_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.matches())
            .map(|r| r.family.clone().unwrap_or_else(|| r.id.clone()))
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

fn diagnose(c: &LinkCandidate) -> Diagnostics {
    let run = || -> Result<(u64, String, Option<u8>)> {
        let b2 = betti2(c.sorted_weights(), c.degree)?;
        let t = torsion(c)?;
        let name = smale_name(b2, &t)?.to_string();
        let branch = if c.index() > 0 { klt_unchecked(c)?.branch } else { None };
        Ok((b2, name, branch))
    };
    match run() {
        Ok((b2, m, branch)) => Diagnostics { b2: Some(b2), manifold: Some(m), klt_branch: branch, error: None },
        Err(e) => Diagnostics { b2: None, manifold: None, klt_branch: None, error: Some(e.to_string()) },
    }
}

fn se_label(status: SeStatus) -> &'static str {
    match status {
        SeStatus::SeCertified => "yes",
        SeStatus::Obstructed => "no",
        SeStatus::Unknown => "?",
    }
}

/// Audits one Table 2 or Table 3 row.
pub fn audit_row(row: &TableRow) -> Result<AuditRow> {
    let id = row.id();
    let mut c = LinkCandidate::new(row.weights, row.degree)?;
    c.yy_type = Some(row.yy_type);
    let realization = realize(row.yy_type, &row.exponents, (c.sorted_weights(), c.degree))?;
    let mut alternatives = Vec::new();
    match &realization {
        RealizeOutcome::Realized(r) => c.exponents = Some(r.exponents),
        RealizeOutcome::Unrealized { .. } => {
            for ty in YyType::STANDARD.into_iter().filter(|t| *t != row.yy_type) {
                if let RealizeOutcome::Realized(r) = realize(ty, &row.exponents, (c.sorted_weights(), c.degree))? {
                    alternatives.push((ty, r.exponents));
                }
            }
        }
    }
    let mut record = classify(&c)?;
    record.provenance = Some(id.clone());

    let printed = Printed {
        index: row.index,
        se: match row.se {
            PrintedSe::Yes => "yes".into(),
            PrintedSe::Open => "?".into(),
        },
        manifold: row.manifold.into(),
    };
    let mut mismatches = Vec::new();
    if record.index != row.index {
        mismatches.push(format!("I: printed {}, computed {}", row.index, record.index));
    }
    if !record.quasismooth.quasismooth {
        let why = record.quasismooth.failure.as_ref().map(|f| f.detail.clone()).unwrap_or_default();
        mismatches.push(format!("not quasi-smooth: {why}"));
    } else {
        let computed = se_label(record.verdict.status);
        if computed != printed.se {
            mismatches.push(format!("SE: printed {}, computed {computed}", printed.se));
        }
        let manifold = record.manifold.clone().unwrap_or_default();
        if manifold != row.manifold {
            mismatches.push(format!("manifold: printed {}, computed {manifold}", row.manifold));
        }
    }
    let diagnostics = (!record.quasismooth.quasismooth).then(|| diagnose(&c));
    Ok(AuditRow {
        erratum: erratum(&id).copied(),
        id,
        family: None,
        params: None,
        yy_type: Some(row.yy_type),
        realization: Some(realization),
        alternatives,
        printed,
        record,
        mismatches,
        diagnostics,
    })
}

/// Audits every valid instantiation of each series family with parameters in `1..=max`.
pub fn audit_series(max: u64) -> Result<Vec<AuditRow>> {
    let mut out = Vec::new();
    for f in families().into_iter().filter(|f| f.name.starts_with("table1.")) {
        let uses = |p: crate::series::Param| f.params.contains(&p);
        let ks = if uses(crate::series::Param::K) { max } else { 1 };
        let ns = if uses(crate::series::Param::N) { max } else { 1 };
        for k in 1..=ks {
            for n in 1..=ns {
                let p = Params::new(k, n, 1);
                let Some(c) = instantiate_series(&f, p)? else { continue };
                let mut record = classify(&c)?;
                let id = match (uses(crate::series::Param::K), uses(crate::series::Param::N)) {
                    (true, true) => format!("{} k={k} n={n}", f.name),
                    (true, false) => format!("{} k={k}", f.name),
                    _ => format!("{} n={n}", f.name),
                };
                record.provenance = Some(id.clone());
                let expected_manifold = f.expected_manifold(p);
                let printed = Printed {
                    index: f.expected_index(p),
                    se: match f.se {
                        SeColumn::Yes => "yes".into(),
                        SeColumn::Open => "?".into(),
                        SeColumn::NoWhen(cond) => format!("no, if {cond}"),
                    },
                    manifold: expected_manifold.clone(),
                };
                let mut mismatches = Vec::new();
                if record.index != printed.index {
                    mismatches.push(format!("I: printed {}, computed {}", printed.index, record.index));
                }
                if !record.quasismooth.quasismooth {
                    mismatches.push("not quasi-smooth".into());
                }
                let manifold = record.manifold.clone().unwrap_or_default();
                if manifold != expected_manifold {
                    mismatches.push(format!("manifold: printed {expected_manifold}, computed {manifold}"));
                }
                let status = record.verdict.status;
                match f.se {
                    SeColumn::Yes if status != SeStatus::SeCertified => {
                        mismatches.push(format!("SE: printed yes, computed {}", se_label(status)));
                    }
                    SeColumn::Open if status == SeStatus::SeCertified => {
                        mismatches.push("SE: printed ?, computed yes".into());
                    }
                    _ => {}
                }
                if let Some(expect) = f.expected_obstructed(p) {
                    let got = status == SeStatus::Obstructed;
                    if got != expect {
                        mismatches.push(format!("obstruction: predicted {expect}, computed {got}"));
                    }
                }
                out.push(AuditRow {
                    erratum: erratum(f.name).copied(),
                    id,
                    family: Some(f.name.to_string()),
                    params: Some(p),
                    yy_type: None,
                    realization: None,
                    alternatives: Vec::new(),
                    printed,
                    record,
                    mismatches,
                    diagnostics: None,
                });
            }
        }
    }
    Ok(out)
}

/// Compares every embedded row (Table 1 at parameters up to 5) with the engine.
/// Mismatches are reported, never raised.
pub fn audit_tables() -> Result<AuditReport> {
    let mut rows = audit_series(5)?;
    for row in table2().iter().chain(table3().iter()) {
        rows.push(audit_row(row)?);
    }
    Ok(AuditReport { errata_version: ERRATA_VERSION, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(table2().len(), 22);
        assert_eq!(table3().len(), 35);
        assert_eq!(table2()[6].id(), "table2.row7");
    }

    #[test]
    fn open_row_matches_as_unknown() {
        let r = audit_row(&table2()[4]).unwrap();
        assert!(r.matches(), "{:?}", r.mismatches);
        assert_eq!(r.record.verdict.status, SeStatus::Unknown);
        let m = r.record.verdict.margins.unwrap();
        assert_eq!((m.two_i_d, m.three_w0_w3), (252, 252));
    }

    #[test]
    fn quasismooth_failures_get_diagnostics() {
        let r = audit_row(&table3()[0]).unwrap();
        assert!(!r.matches());
        let d = r.diagnostics.unwrap();
        assert_eq!(d.manifold.as_deref(), Some("M∞#M3"));
        assert!(r.erratum.is_some());
    }

    #[test]
    fn unrealized_rows_report_alternatives() {
        let r = audit_row(&table3()[7]).unwrap();
        assert!(matches!(r.realization, Some(RealizeOutcome::Unrealized { .. })));
        assert_eq!(r.alternatives.first(), Some(&(II, [4, 6, 4, 2])));
        assert!(r.matches());
    }

    #[test]
    fn errata_ids_are_unique() {
        let mut ids: Vec<_> = ERRATA.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), ERRATA.len());
    }
}
