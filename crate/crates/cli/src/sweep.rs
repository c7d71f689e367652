//! Sweep orchestration. Cells `(partition, weight, check)` run in a worker
//! pool; results come back in cell order, so certificates do not depend on
//! scheduling.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use pipedegen::degeneration::{
    census_from_fingerprints, degree_filter, sagbi_count_check, toric_kernel_deg2,
    verify_partition, KernelFingerprint, PartitionContext,
};
use pipedegen::mcop::{
    contains_ineq, lattice_points, points_by_inequalities, sumset, weyl_dim, xi_map, Weight,
};
use pipedegen::pipedream::PartitionTables;
use pipedegen::repn::monomial_basis_check;
use pipedegen::semiinf::{pipe_lemma_check, verify_semiinf, QElement, QSet};
use pipedegen::tableaux::{
    enumerate_semistandard, enumerate_semistandard_direct, is_oc_semistandard,
    tableau_chain_bijection, tableau_from_chain,
};
use pipedegen::{Error, GtPoset, OcPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificate::{Certificate, CheckResult, Status, Timings};
use crate::config::{CheckKind, ConfigError, PartitionEcho, SemiInfConfig, SweepConfig};

/// Largest `n` for which the inequality model is compared against the full
/// bounding box; above it only the sumset points are tested for membership.
pub const FULL_BOX_MAX_N: usize = 4;

#[derive(Copy, Clone, Debug)]
enum Cell {
    Degeneration(usize),
    Weighted(CheckKind, usize, usize),
}

struct Outcome {
    result: CheckResult,
    fingerprint: Option<KernelFingerprint<Vec<usize>>>,
}

fn deadline_passed(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() > d)
}

fn error_result(name: &str, subject: String, e: Error) -> CheckResult {
    match e {
        Error::Budget(_) | Error::Capacity(_) => CheckResult::partial(name, subject, e.to_string()),
        _ => CheckResult {
            error: Some(e.to_string()),
            ..CheckResult::new(name, subject, Status::Fail, Value::Null)
        },
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn degeneration_cell(
    poset: &GtPoset,
    oc: &OcPartition,
    echo: &PartitionEcho,
    signature: &[usize],
) -> Outcome {
    let name = CheckKind::Degeneration.name();
    match verify_partition(poset, oc, signature) {
        Ok(report) => {
            let ctx = PartitionContext::new(poset, *oc);
            let order: Vec<Vec<String>> = (1..=poset.n())
                .map(|i| {
                    ctx.order
                        .row_chain(i)
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect();
            let payload = json!({
                "partition": echo,
                "order_rows": order,
                "order_descending": ctx.order.descending().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "report": report,
                "kernel": report.fingerprint.binomials(),
            });
            Outcome {
                result: CheckResult::verdict(name, echo.label(), report.pass(), payload),
                fingerprint: Some(report.fingerprint),
            }
        }
        Err(e) => Outcome {
            result: error_result(name, echo.label(), e),
            fingerprint: None,
        },
    }
}

/// Split `λ = ω_k + μ` at the smallest `k` with `a_k > 0`.
fn minkowski_split(w: &Weight) -> Option<(Weight, Weight)> {
    let k = w.a.iter().position(|&a| a > 0)?;
    let mut rest = w.clone();
    rest.a[k] -= 1;
    if rest.size() == 0 {
        return None;
    }
    let mut first = Weight::zero(w.n());
    first.a[k] = 1;
    Some((first, rest))
}

fn polytope_cell(poset: &GtPoset, oc: &OcPartition, w: &Weight) -> (bool, Value) {
    let pts = lattice_points(poset, oc, w);
    let dim = weyl_dim(w);
    let count_ok = BigUint::from(pts.len()) == dim;
    let (ineq_mode, ineq_ok) = if poset.n() <= FULL_BOX_MAX_N {
        ("full_box", points_by_inequalities(poset, oc, w) == pts)
    } else {
        (
            "pointwise",
            pts.iter().all(|x| contains_ineq(x, poset, oc, w)),
        )
    };
    let minkowski_ok = minkowski_split(w).map(|(a, b)| {
        sumset(
            &lattice_points(poset, oc, &a),
            &lattice_points(poset, oc, &b),
        ) == pts
    });
    let xi = xi_map(poset, oc, &PartitionTables::new(poset, oc));
    let xi_ok = xi.is_unimodular();
    let sagbi = sagbi_count_check(poset, oc, w);
    let pass = count_ok && ineq_ok && minkowski_ok.unwrap_or(true) && xi_ok && sagbi.pass;
    let payload = json!({
        "weight": w,
        "points": pts.len(),
        "weyl_dim": dim.to_string(),
        "count_matches": count_ok,
        "inequality_check": ineq_mode,
        "inequality_agrees": ineq_ok,
        "minkowski_split": minkowski_ok,
        "xi_unimodular": xi_ok,
        "sagbi": sagbi,
    });
    (pass, payload)
}

fn tableaux_cell(poset: &GtPoset, oc: &OcPartition, w: &Weight) -> (bool, Value) {
    let tables = PartitionTables::new(poset, oc);
    let tabs = enumerate_semistandard(poset, oc, w);
    let dim = weyl_dim(w);
    let count_ok = BigUint::from(tabs.len()) == dim;
    let direct_ok = enumerate_semistandard_direct(&tables, w) == tabs;
    let round_trips = tabs.iter().all(|y| {
        is_oc_semistandard(y, &tables)
            && matches!(tableau_chain_bijection(poset, &tables, y), Ok(Some(chain)) if &tableau_from_chain(poset, oc, &chain) == y)
    });
    let payload = json!({
        "weight": w,
        "tableaux": tabs.len(),
        "weyl_dim": dim.to_string(),
        "count_matches": count_ok,
        "direct_enumeration_agrees": direct_ok,
        "chain_round_trips": round_trips,
    });
    (count_ok && direct_ok && round_trips, payload)
}

fn basis_cell(poset: &GtPoset, oc: &OcPartition, w: &Weight) -> (bool, Value) {
    let cert = monomial_basis_check(poset, oc, w);
    (cert.pass, to_value(&cert))
}

fn weighted_cell(
    kind: CheckKind,
    poset: &GtPoset,
    oc: &OcPartition,
    echo: &PartitionEcho,
    w: &Weight,
) -> CheckResult {
    let (pass, mut payload) = match kind {
        CheckKind::Polytope => polytope_cell(poset, oc, w),
        CheckKind::Tableaux => tableaux_cell(poset, oc, w),
        CheckKind::Basis => basis_cell(poset, oc, w),
        CheckKind::Degeneration | CheckKind::Census => unreachable!("not a weighted check"),
    };
    payload["partition"] = to_value(echo);
    CheckResult::verdict(
        kind.name(),
        format!("{} λ={w}", echo.label()),
        pass,
        payload,
    )
}

fn fingerprint(
    poset: &GtPoset,
    oc: &OcPartition,
    signature: &[usize],
) -> KernelFingerprint<Vec<usize>> {
    let ctx = PartitionContext::new(poset, *oc);
    toric_kernel_deg2(&ctx.hibi_generators(signature), degree_filter(signature))
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let out = f();
    (out, on.then(|| start.elapsed().as_secs_f64() * 1e3))
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, ConfigError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ConfigError::Invalid(format!("worker pool: {e}")))
}

/// The config as echoed in certificates: the validated fields plus every
/// visited partition as mask and list.
pub fn config_echo(cfg: &SweepConfig, poset: &GtPoset, partitions: &[OcPartition]) -> Value {
    let mut v = to_value(cfg);
    v["partitions"] = to_value(
        &partitions
            .iter()
            .map(|oc| PartitionEcho::new(poset, oc))
            .collect::<Vec<_>>(),
    );
    v
}

pub fn run_verify(cfg: &SweepConfig, command: &str) -> Result<Certificate, ConfigError> {
    let poset = cfg.validate()?;
    let partitions = cfg.selector.resolve(&poset)?;
    let echoes: Vec<PartitionEcho> = partitions
        .iter()
        .map(|oc| PartitionEcho::new(&poset, oc))
        .collect();
    let start = Instant::now();
    let deadline = cfg.budget_ms.map(|ms| start + Duration::from_millis(ms));

    let mut cells = Vec::new();
    for p in 0..partitions.len() {
        if cfg.checks.contains(&CheckKind::Degeneration) {
            cells.push(Cell::Degeneration(p));
        }
        for kind in [CheckKind::Polytope, CheckKind::Tableaux, CheckKind::Basis] {
            if cfg.checks.contains(&kind) {
                cells.extend((0..cfg.weights.len()).map(|w| Cell::Weighted(kind, p, w)));
            }
        }
    }

    let run_cell = |cell: &Cell| -> Outcome {
        let (kind, p) = match *cell {
            Cell::Degeneration(p) => (CheckKind::Degeneration, p),
            Cell::Weighted(k, p, _) => (k, p),
        };
        let subject = match *cell {
            Cell::Weighted(_, _, w) => format!("{} λ={}", echoes[p].label(), cfg.weights[w]),
            Cell::Degeneration(_) => echoes[p].label(),
        };
        if deadline_passed(deadline) {
            return Outcome {
                result: CheckResult::partial(
                    kind.name(),
                    subject,
                    "budget exhausted before this check started",
                ),
                fingerprint: None,
            };
        }
        let (mut out, ms) = timed(cfg.timings, || match *cell {
            Cell::Degeneration(p) => {
                degeneration_cell(&poset, &partitions[p], &echoes[p], &cfg.signature)
            }
            Cell::Weighted(kind, p, w) => Outcome {
                result: weighted_cell(kind, &poset, &partitions[p], &echoes[p], &cfg.weights[w]),
                fingerprint: None,
            },
        });
        out.result.elapsed_ms = ms;
        out
    };
    let outcomes: Vec<Outcome> =
        pool(cfg.workers)?.install(|| cells.par_iter().map(run_cell).collect());

    let mut fingerprints: Vec<Option<KernelFingerprint<Vec<usize>>>> = vec![None; partitions.len()];
    let mut checks = Vec::with_capacity(outcomes.len() + 1);
    for (cell, out) in cells.iter().zip(outcomes) {
        if let Cell::Degeneration(p) = *cell {
            fingerprints[p] = out.fingerprint;
        }
        checks.push(out.result);
    }

    if cfg.checks.contains(&CheckKind::Census) && partitions.len() > 1 {
        checks.push(census_check(
            cfg,
            &poset,
            &partitions,
            fingerprints,
            deadline,
        ));
    }

    let mut cert = Certificate::new(command, config_echo(cfg, &poset, &partitions), checks);
    if cfg.timings {
        cert.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            workers: cfg.workers,
        });
    }
    Ok(cert)
}

/// Orbit census over the visited partitions. It is informational: the counts
/// are recorded, the verdict rests on the per-partition checks.
fn census_check(
    cfg: &SweepConfig,
    poset: &GtPoset,
    partitions: &[OcPartition],
    mut fingerprints: Vec<Option<KernelFingerprint<Vec<usize>>>>,
    deadline: Option<Instant>,
) -> CheckResult {
    let name = CheckKind::Census.name();
    let subject = format!("{} partitions", partitions.len());
    let (result, ms) = timed(cfg.timings, || {
        for (p, fp) in fingerprints.iter_mut().enumerate() {
            if fp.is_none() {
                if deadline_passed(deadline) {
                    return CheckResult::partial(
                        name,
                        subject.clone(),
                        format!("census stopped at partition {p}"),
                    );
                }
                *fp = Some(fingerprint(poset, &partitions[p], &cfg.signature));
            }
        }
        let census = census_from_fingerprints(
            poset.n(),
            &cfg.signature,
            partitions.len(),
            fingerprints.into_iter().flatten(),
        );
        let payload = json!({
            "census": census,
            "fingerprint": "degree-two binomials of the initial ideal, with signs",
            "assumption": "initial ideals are generated in degree two, so the degree-two part identifies them",
        });
        CheckResult::new(name, subject.clone(), Status::Info, payload)
    });
    CheckResult {
        elapsed_ms: ms,
        ..result
    }
}

/// Random finite `M` in a window of rows `1..=2k+2`, each element kept with
/// probability `0.3`.
pub fn random_q_subsets(cfg: &SemiInfConfig, trials: usize) -> Result<Vec<QSet>, ConfigError> {
    let q = cfg.partition()?.q;
    let window: Vec<QElement> = (1..=2 * q.k + 2)
        .flat_map(|i| (i..i + q.n).map(move |j| QElement::new(i, j)))
        .filter(|&p| q.contains(p))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..trials)
        .map(|_| {
            window
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.3))
                .collect()
        })
        .collect())
}

pub fn run_semiinf(cfg: &SemiInfConfig, command: &str) -> Result<Certificate, ConfigError> {
    let o = cfg.partition()?;
    let start = Instant::now();
    let subject = format!(
        "n={} k={} O=diagonals∪{{{}}} horizon={}",
        cfg.n,
        cfg.k,
        o.extra
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
        o.horizon
    );
    let mut checks = Vec::new();

    let (result, ms) = timed(cfg.timings, || match verify_semiinf(&o, cfg.d_max) {
        Ok(report) => {
            CheckResult::verdict("semiinf", subject.clone(), report.pass(), to_value(&report))
        }
        Err(e) => error_result("semiinf", subject.clone(), e),
    });
    checks.push(CheckResult {
        elapsed_ms: ms,
        ..result
    });

    if cfg.lemma_trials > 0 {
        let subsets = random_q_subsets(cfg, cfg.lemma_trials)?;
        let rows = 3 * cfg.k + 4;
        let (result, ms) = timed(cfg.timings, || {
            let mut pipes = 0;
            let mut failures: Vec<Value> = Vec::new();
            for m in &subsets {
                match pipe_lemma_check(&o.q, m, rows) {
                    Ok((checked, bad)) => {
                        pipes += checked;
                        failures.extend(
                            bad.iter()
                                .map(|(a, b)| json!({"set": m, "start": a, "next": b})),
                        );
                    }
                    Err(e) => {
                        return error_result("pipe_lemma", format!("n={} k={}", cfg.n, cfg.k), e)
                    }
                }
            }
            let payload = json!({
                "trials": subsets.len(),
                "seed": cfg.seed,
                "rows": rows,
                "pipes_checked": pipes,
                "failures": failures,
            });
            CheckResult::verdict(
                "pipe_lemma",
                format!("n={} k={}", cfg.n, cfg.k),
                failures.is_empty() && pipes > 0,
                payload,
            )
        });
        checks.push(CheckResult {
            elapsed_ms: ms,
            ..result
        });
    }

    let mut echo = to_value(cfg);
    echo["partition"] = json!({
        "extra": o.extra.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "horizon": o.horizon,
    });
    let mut cert = Certificate::new(command, echo, checks);
    if cfg.timings {
        cert.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            workers: 1,
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PartitionSelector;

    fn cfg(n: usize, sig: Vec<usize>, sel: PartitionSelector) -> SweepConfig {
        SweepConfig::new(n, sig, sel)
            .with_default_weights()
            .unwrap()
    }

    #[test]
    fn n3_sweep_passes_and_reports_census() {
        let mut c = cfg(3, vec![1, 2], PartitionSelector::All);
        c.workers = 2;
        let cert = run_verify(&c, "verify").unwrap();
        assert_eq!(cert.exit_code(), 0, "{}", cert.to_json());
        assert_eq!(cert.checks_named("degeneration").count(), 8);
        let census = cert.checks_named("census").next().unwrap();
        assert_eq!(census.status, Status::Info);
        assert_eq!(census.payload["census"]["orbits"], 1);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut a = cfg(3, vec![1, 2], PartitionSelector::All);
        a.workers = 1;
        let mut b = a.clone();
        b.workers = 3;
        assert_eq!(
            run_verify(&a, "verify").unwrap().to_json(),
            run_verify(&b, "verify").unwrap().to_json()
        );
    }

    #[test]
    fn tiny_budget_marks_partial() {
        let mut c = cfg(4, vec![1, 2, 3], PartitionSelector::All);
        c.budget_ms = Some(1);
        c.workers = 1;
        let cert = run_verify(&c, "verify").unwrap();
        assert!(cert.summary.partial > 0);
        assert_eq!(
            cert.summary.total,
            cert.summary.passed + cert.summary.partial + cert.summary.info
        );
        assert_eq!(cert.exit_code(), 3);
    }

    #[test]
    fn split() {
        assert_eq!(
            minkowski_split(&Weight::new(vec![0, 2, 1])),
            Some((Weight::new(vec![0, 1, 0]), Weight::new(vec![0, 1, 1])))
        );
        assert_eq!(minkowski_split(&Weight::new(vec![0, 1, 0])), None);
    }

    #[test]
    fn semiinf_example_passes() {
        let c = SemiInfConfig {
            n: 5,
            k: 3,
            d_max: 1,
            order_extra: vec![(1, 4), (2, 5), (3, 6), (4, 5)],
            horizon: None,
            lemma_trials: 5,
            seed: 1,
            timings: false,
        };
        let cert = run_semiinf(&c, "semiinf").unwrap();
        assert_eq!(cert.exit_code(), 0, "{}", cert.to_json());
        assert_eq!(cert.summary.total, 2);
    }
}
