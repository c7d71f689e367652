//! Aggregated tables over one or more certificates: one row per partition,
//! one summary row per census, timing percentiles when timings were recorded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::certificate::{Certificate, Status};

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no certificates to report on")]
    Empty,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

const PARTITION_CHECKS: [&str; 4] = ["degeneration", "polytope", "tableaux", "basis"];

#[derive(Clone, Debug, Serialize)]
pub struct PartitionRow {
    pub certificate: usize,
    pub command: String,
    pub partition: String,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub partial: usize,
    pub status: Status,
    /// Degree-two relations of the degeneration check, when it ran.
    pub relations: Option<u64>,
    /// Lattice point counts per weight from the polytope check.
    pub points: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub certificate: usize,
    pub partitions: u64,
    pub realized_distinct: u64,
    pub orbits: u64,
    pub orbit_closure: u64,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Percentiles {
    pub check: String,
    pub samples: usize,
    pub p50_ms: f64,
    pub p90_ms: f64,
    pub max_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderTable {
    pub partition: String,
    pub rows: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rows: Vec<PartitionRow>,
    pub census: Vec<CensusRow>,
    pub order_tables: Vec<OrderTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<Percentiles>,
}

/// Row key of a check: the partition label for per-partition checks, the
/// first non-census subject of the certificate otherwise.
fn row_key(name: &str, subject: &str, fallback: &str) -> String {
    if PARTITION_CHECKS.contains(&name) {
        subject.split(" λ=").next().unwrap_or(subject).to_string()
    } else {
        fallback.to_string()
    }
}

/// Nearest-rank percentile of sorted samples.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub fn build_report(certs: &[Certificate]) -> Result<Report, ReportError> {
    if certs.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut rows = Vec::new();
    let mut census = Vec::new();
    let mut order_tables = Vec::new();
    let mut samples: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (ci, cert) in certs.iter().enumerate() {
        let fallback = cert
            .checks
            .iter()
            .find(|c| c.name != "census" && !PARTITION_CHECKS.contains(&c.name.as_str()))
            .map_or_else(|| cert.command.clone(), |c| c.subject.clone());
        let mut by_key: Vec<(String, PartitionRow)> = Vec::new();
        for check in &cert.checks {
            if let Some(ms) = check.elapsed_ms {
                samples.entry(check.name.clone()).or_default().push(ms);
            }
            if check.name == "census" {
                let c = &check.payload["census"];
                let num = |k: &str| c[k].as_u64().unwrap_or(0);
                census.push(CensusRow {
                    certificate: ci,
                    partitions: num("partitions"),
                    realized_distinct: num("realized_distinct"),
                    orbits: num("orbits"),
                    orbit_closure: num("orbit_closure"),
                    status: check.status,
                });
                continue;
            }
            let key = row_key(&check.name, &check.subject, &fallback);
            let pos = match by_key.iter().position(|(k, _)| *k == key) {
                Some(p) => p,
                None => {
                    by_key.push((
                        key.clone(),
                        PartitionRow {
                            certificate: ci,
                            command: cert.command.clone(),
                            partition: key,
                            checks: 0,
                            passed: 0,
                            failed: 0,
                            partial: 0,
                            status: Status::Pass,
                            relations: None,
                            points: BTreeMap::new(),
                        },
                    ));
                    by_key.len() - 1
                }
            };
            let row = &mut by_key[pos].1;
            row.checks += 1;
            match check.status {
                Status::Pass | Status::Info => row.passed += 1,
                Status::Fail => row.failed += 1,
                Status::Partial => row.partial += 1,
            }
            row.status = if row.failed > 0 {
                Status::Fail
            } else if row.partial > 0 {
                Status::Partial
            } else {
                Status::Pass
            };
            if check.name == "degeneration" {
                row.relations = check.payload["report"]["relations"].as_u64();
                if !check.payload["order_rows"].is_null() {
                    order_tables.push(OrderTable {
                        partition: row.partition.clone(),
                        rows: check.payload["order_rows"].clone(),
                    });
                }
            }
            if check.name == "polytope" {
                if let Some(p) = check.payload["points"].as_u64() {
                    let w = check.subject.split(" λ=").nth(1).unwrap_or("").to_string();
                    row.points.insert(w, p);
                }
            }
        }
        rows.extend(by_key.into_iter().map(|(_, r)| r));
    }
    let timings = samples
        .into_iter()
        .map(|(check, mut v)| {
            v.sort_by(f64::total_cmp);
            Percentiles {
                check,
                samples: v.len(),
                p50_ms: percentile(&v, 50.0),
                p90_ms: percentile(&v, 90.0),
                max_ms: *v.last().expect("nonempty"),
            }
        })
        .collect();
    Ok(Report {
        rows,
        census,
        order_tables,
        timings,
    })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Partial => "partial",
        Status::Info => "info",
    }
}

fn points_str(points: &BTreeMap<String, u64>) -> String {
    points
        .iter()
        .map(|(w, p)| format!("{w}:{p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn to_csv(r: &Report) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "kind",
        "certificate",
        "command",
        "partition",
        "checks",
        "passed",
        "failed",
        "partial",
        "status",
        "relations",
        "points",
        "realized_distinct",
        "orbits",
        "orbit_closure",
    ])?;
    for row in &r.rows {
        w.write_record([
            "partition",
            &row.certificate.to_string(),
            &row.command,
            &row.partition,
            &row.checks.to_string(),
            &row.passed.to_string(),
            &row.failed.to_string(),
            &row.partial.to_string(),
            status_str(row.status),
            &opt(row.relations),
            &points_str(&row.points),
            "",
            "",
            "",
        ])?;
    }
    for c in &r.census {
        w.write_record([
            "census",
            &c.certificate.to_string(),
            "",
            "",
            &c.partitions.to_string(),
            "",
            "",
            "",
            status_str(c.status),
            "",
            "",
            &c.realized_distinct.to_string(),
            &c.orbits.to_string(),
            &c.orbit_closure.to_string(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ReportError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn to_md(r: &Report) -> String {
    let mut s = String::from("# Verification report\n\n## Partitions\n\n");
    s.push_str("| cert | command | partition | checks | passed | failed | partial | status | relations | points |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "| {} | {} | `{}` | {} | {} | {} | {} | {} | {} | {} |",
            row.certificate,
            row.command,
            row.partition,
            row.checks,
            row.passed,
            row.failed,
            row.partial,
            status_str(row.status),
            opt(row.relations),
            points_str(&row.points)
        );
    }
    if !r.census.is_empty() {
        s.push_str("\n## Census\n\n| cert | partitions | realized | orbits | orbit closure | status |\n|---|---|---|---|---|---|\n");
        for c in &r.census {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                c.certificate,
                c.partitions,
                c.realized_distinct,
                c.orbits,
                c.orbit_closure,
                status_str(c.status)
            );
        }
    }
    if !r.order_tables.is_empty() {
        s.push_str("\n## Variable orders\n\nEach row lists `z_{i,*}` from largest to smallest.\n");
        for t in &r.order_tables {
            let _ = writeln!(s, "\n### `{}`\n", t.partition);
            for (i, row) in t.rows.as_array().into_iter().flatten().enumerate() {
                let vars: Vec<&str> = row
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_str)
                    .collect();
                let _ = writeln!(s, "- row {}: {}", i + 1, vars.join(" > "));
            }
        }
    }
    if !r.timings.is_empty() {
        s.push_str("\n## Timings\n\n| check | samples | p50 ms | p90 ms | max ms |\n|---|---|---|---|---|\n");
        for t in &r.timings {
            let _ = writeln!(
                s,
                "| {} | {} | {:.3} | {:.3} | {:.3} |",
                t.check, t.samples, t.p50_ms, t.p90_ms, t.max_ms
            );
        }
    }
    s
}

pub fn emit_report(certs: &[Certificate], format: ReportFormat) -> Result<String, ReportError> {
    let r = build_report(certs)?;
    Ok(match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => to_csv(&r)?,
        ReportFormat::Md => to_md(&r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::CheckResult;
    use serde_json::json;

    fn cert(with_time: bool) -> Certificate {
        let mut a = CheckResult::verdict(
            "degeneration",
            "0x1 {(1,2)}",
            true,
            json!({"report": {"relations": 3}, "order_rows": [["z11", "z12"], ["z22"]]}),
        );
        let b = CheckResult::verdict(
            "polytope",
            "0x1 {(1,2)} λ=(1,1)",
            true,
            json!({"points": 8}),
        );
        let c = CheckResult::verdict("polytope", "0x0 {} λ=(1,1)", false, json!({"points": 7}));
        if with_time {
            a.elapsed_ms = Some(2.0);
        }
        let census = CheckResult::new(
            "census",
            "2 partitions",
            Status::Info,
            json!({"census": {"partitions": 2, "realized_distinct": 2, "orbits": 1, "orbit_closure": 3}}),
        );
        Certificate::new("verify", Value::Null, vec![a, b, c, census])
    }

    #[test]
    fn rows_group_by_partition() {
        let r = build_report(&[cert(false)]).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].checks, 2);
        assert_eq!(r.rows[0].relations, Some(3));
        assert_eq!(r.rows[1].status, Status::Fail);
        assert_eq!(r.census.len(), 1);
        assert!(r.timings.is_empty());
    }

    #[test]
    fn formats() {
        let certs = [cert(true)];
        let csv = emit_report(&certs, ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + 2 + 1);
        let md = emit_report(&certs, ReportFormat::Md).unwrap();
        assert!(md.contains("row 1: z11 > z12"));
        assert!(md.contains("## Timings"));
        let js: Value =
            serde_json::from_str(&emit_report(&certs, ReportFormat::Json).unwrap()).unwrap();
        assert_eq!(js["rows"].as_array().unwrap().len(), 2);
        assert!(matches!(
            emit_report(&[], ReportFormat::Md),
            Err(ReportError::Empty)
        ));
    }

    #[test]
    fn percentiles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&v, 50.0), 2.0);
        assert_eq!(percentile(&v, 90.0), 4.0);
        assert_eq!(percentile(&[5.0], 50.0), 5.0);
    }
}
