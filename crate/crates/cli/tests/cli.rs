use std::path::Path;
use std::process::{Command, Output};

use smale5_cli::format::read_records;
use smale5_cli::Format;
use smale5_core::{ResultRecord, SeStatus};

fn smale5(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_smale5"));
    cmd.args(args).env_remove("SMALE5_CACHE");
    if let Some(p) = cache {
        cmd.env("SMALE5_CACHE", p);
    }
    cmd.output().expect("cannot run smale5")
}

fn records(out: &Output) -> Vec<ResultRecord> {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    read_records(std::str::from_utf8(&out.stdout).unwrap(), Format::Json).unwrap()
}

const EXAMPLE2: [&str; 12] =
    ["search", "--type", "X", "--a0", "2", "--a1", "3", "--a2", "5", "--a3", "5..18", "--torsion"];

fn example2_search(extra: &[&str], cache: Option<&Path>) -> Output {
    let mut args = EXAMPLE2.to_vec();
    args.push("nontrivial");
    args.extend_from_slice(extra);
    smale5(&args, cache)
}

#[test]
fn check_examples() {
    let r = records(&smale5(&["check", "-w", "2,4,6,11", "-d", "22"], None));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].manifold.as_deref(), Some("5M2"));
    assert_eq!((r[0].verdict.status, r[0].verdict.branch), (SeStatus::SeCertified, Some(3)));

    let out = smale5(&["check", "-w", "12,8,3,3", "-d", "24"], None);
    let r = records(&out);
    assert_eq!(r[0].manifold.as_deref(), Some("3M3"));
    assert!(r[0].verdict.is_certified());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3M3"));
}

#[test]
fn check_with_explicit_support() {
    let r = records(&smale5(&["check", "-w", "12,8,3,3", "-d", "24", "--support", "z0^2 + z1^3 + z2^8 + z3^8"], None));
    assert_eq!(r[0].manifold.as_deref(), Some("3M3"));
}

#[test]
fn exit_codes() {
    let gcd = smale5(&["check", "-w", "2,4,6,8", "-d", "10"], None);
    assert_eq!(gcd.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&gcd.stderr).contains("gcd"));

    assert_eq!(smale5(&["check", "-w", "2,4,6", "-d", "10"], None).status.code(), Some(1));
    assert_eq!(smale5(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(smale5(&["search", "--a0", "1..3"], None).status.code(), Some(1));
    assert_eq!(smale5(&["search", "--format", "xml"], None).status.code(), Some(1));
    assert_eq!(smale5(&["--help"], None).status.code(), Some(0));

    // non-integer genus: the curve is not quasi-smooth
    let bad = smale5(&["genus", "-w", "2,3,5", "-d", "7"], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("inconsistency"));
    assert_eq!(smale5(&["genus", "-w", "1,1,1", "-d", "4"], None).status.code(), Some(0));
}

#[test]
fn solve_examples() {
    let r = records(&smale5(&["solve", "--type", "X", "-a", "2,3,5,8"], None));
    assert_eq!((r[0].weights, r[0].degree), ([2, 4, 6, 11], 22));

    let r = records(&smale5(&["solve", "--type", "I", "-a", "2,2,2,2"], None));
    assert_eq!((r[0].weights, r[0].degree), ([1, 1, 1, 1], 2));
    assert_eq!(r[0].manifold.as_deref(), Some("M∞"));

    let viii = smale5(&["solve", "--type", "VIII", "-a", "2,3,4,5"], None);
    assert_eq!(viii.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&viii.stderr).contains("not standard"));
}

#[test]
fn example2_search_finds_one_row() {
    let r = records(&example2_search(&[], None));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].exponents, Some([2, 3, 5, 8]));
}

#[test]
fn series_row7() {
    let r = records(&smale5(&["series", "--family", "table1.row7", "--k", "1..5"], None));
    assert_eq!(r.len(), 5);
    assert!(r.iter().all(|x| x.manifold.as_deref() == Some("M∞#M3") && x.verdict.is_certified()));
}

#[test]
fn tables_markdown_and_strict() {
    let out = smale5(&["tables", "--format", "md", "--strict"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for t in 1..=3 {
        assert!(text.contains(&format!("### Table {t}")));
    }
    assert_eq!(text.matches("| table2.row").count(), 22);
    assert_eq!(text.matches("| table3.row").count(), 35);
    assert_eq!(text.matches("| mismatch |").count(), 0);
}

#[test]
fn formats_carry_the_same_records() {
    let base =
        smale5(&["series", "--family", "table1.row1,double.4m2", "--k", "1..3", "--n", "1..2", "--l", "1..3"], None);
    let json = records(&base);
    assert!(json.len() > 5);
    for (flag, format) in [("csv", Format::Csv), ("md", Format::Md)] {
        let out = smale5(
            &[
                "series",
                "--family",
                "table1.row1,double.4m2",
                "--k",
                "1..3",
                "--n",
                "1..2",
                "--l",
                "1..3",
                "--format",
                flag,
            ],
            None,
        );
        assert!(out.status.success());
        let parsed = read_records(std::str::from_utf8(&out.stdout).unwrap(), format).unwrap();
        assert_eq!(parsed, json, "{flag}");
    }
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["search", "--type", "I,II", "--bound", "6", "--jobs", "4"];

    let fresh = smale5(&args, None);
    let cold = smale5(&args, Some(&cache));
    let size = std::fs::metadata(&cache).unwrap().len();
    let warm = smale5(&args, Some(&cache));
    assert!(fresh.status.success() && cold.status.success() && warm.status.success());
    assert_eq!(cold.stdout, fresh.stdout);
    assert_eq!(warm.stdout, fresh.stdout);
    assert_eq!(std::fs::metadata(&cache).unwrap().len(), size, "warm run appended entries");

    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with(&format!("{{\"engine_version\":\"{}\"}}\n", smale5_core::ENGINE_VERSION)));

    // the --cache flag and a cached solve that re-attaches type and exponents
    let solved = smale5(&["--cache", cache.to_str().unwrap(), "solve", "-t", "I", "-a", "2,3,4,5"], None);
    let uncached = smale5(&["solve", "-t", "I", "-a", "2,3,4,5"], None);
    assert_eq!(solved.stdout, uncached.stdout);
}

#[test]
fn stale_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let fresh = example2_search(&[], None);
    let mut bogus = records(&fresh).remove(0);
    bogus.manifold = Some("S5".into());
    bogus.provenance = None;
    std::fs::write(&cache, format!("{{\"engine_version\":\"0.0.0\"}}\n{}\n", serde_json::to_string(&bogus).unwrap()))
        .unwrap();
    let out = example2_search(&[], Some(&cache));
    assert_eq!(out.stdout, fresh.stdout);
}

#[test]
fn catalog_lists_nineteen_forms() {
    let out = smale5(&["catalog"], None);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 19);
}
