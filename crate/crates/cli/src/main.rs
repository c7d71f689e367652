use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use pipedegen::degeneration::psi_map;
use pipedegen::mcop::{lattice_points, weyl_dim, xi_map, Weight};
use pipedegen::pipedream::{render_ascii, render_dot, w_j, PartitionTables};
use pipedegen::tableaux::{all_tuples, enumerate_semistandard, is_oc_semistandard, Tableau};
use pipedegen::{GtPoset, OcPartition};
use pipedegen_cli::config::{
    elements, parse_checks, parse_pairs, parse_partition, parse_usize_list, parse_weight,
    parse_weight_list, CheckKind, PartitionEcho,
};
use pipedegen_cli::report::{emit_report, ReportFormat};
use pipedegen_cli::sweep::{run_semiinf, run_verify};
use pipedegen_cli::{
    exit, Certificate, ConfigError, PartitionSelector, SemiInfConfig, SweepConfig, WORKERS_ENV,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "pipedegen",
    version,
    about = "Pipe dreams, chain-order polytopes and toric degenerations of flag varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the order ideals of P, optionally with their pipe-dream columns.
    Ideals(IdealsArgs),
    /// Draw the pipe dream of a subset M of P.
    Pipedream(PipedreamArgs),
    /// Lattice points of marked chain-order polytopes and the map ξ.
    Mcop(McopArgs),
    /// Degeneration checks only (initial terms, ψ, kernels, census).
    Degenerate(SweepArgs),
    /// The full check suite over a partition selection.
    Verify(VerifyArgs),
    /// (O,C)-semistandard tableaux of a shape.
    Tableaux(TableauxArgs),
    /// Monomial basis rank certificates.
    RepBasis(SweepArgs),
    /// Truncated checks on the semi-infinite poset.
    Semiinf(SemiInfArgs),
    /// Aggregate certificates into a table.
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct PartitionArgs {
    #[arg(long)]
    n: usize,
    /// `O ∖ A` as a hex mask over P ∖ A (`0x15`) or an element list (`(1,2),(2,3)`).
    #[arg(long, default_value = "{}", conflicts_with_all = ["all_partitions", "sample"])]
    order_part: String,
    /// Visit all 2^(n(n-1)/2) partitions.
    #[arg(long)]
    all_partitions: bool,
    /// Visit this many partitions drawn with `--seed`.
    #[arg(long, conflicts_with = "all_partitions")]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PartitionArgs {
    fn poset(&self) -> Result<GtPoset, ConfigError> {
        if self.n < 2 {
            return Err(ConfigError::Invalid(format!(
                "n = {} must be at least 2",
                self.n
            )));
        }
        GtPoset::new(self.n).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    fn selector(&self, poset: &GtPoset) -> Result<PartitionSelector, ConfigError> {
        Ok(match (self.all_partitions, self.sample) {
            (true, _) => PartitionSelector::All,
            (false, Some(count)) => PartitionSelector::Sample {
                count,
                seed: self.seed,
            },
            (false, None) => parse_partition(poset, &self.order_part)?,
        })
    }

    fn partitions(&self, poset: &GtPoset) -> Result<Vec<OcPartition>, ConfigError> {
        self.selector(poset)?.resolve(poset)
    }
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Record wall-clock times (makes the certificate run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[command(flatten)]
    partition: PartitionArgs,
    /// Signature `d`, e.g. `1,2,3`; defaults to `1,...,n-1`.
    #[arg(long)]
    signature: Option<String>,
    /// Weights `a_1,...,a_{n-1}` separated by `;`; defaults to the signature weight.
    #[arg(long, alias = "lambda")]
    weights: Option<String>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Comma-separated subset of degeneration,polytope,tableaux,basis,census.
    #[arg(long)]
    checks: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum DrawFormat {
    Ascii,
    Dot,
}

#[derive(Args)]
struct PipedreamArgs {
    #[arg(long)]
    n: usize,
    /// The set M, e.g. `(1,2),(2,3),(1,4)`.
    #[arg(long, default_value = "{}")]
    set: String,
    #[arg(long, value_enum, default_value = "ascii")]
    format: DrawFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum DataFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct IdealsArgs {
    #[arg(long)]
    n: usize,
    /// Only ideals in 𝒥_k.
    #[arg(long)]
    k: Option<usize>,
    /// With a partition, also print M_{O,C}(J), the column of w^J and ψ.
    #[arg(long)]
    order_part: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: DataFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct McopArgs {
    #[command(flatten)]
    partition: PartitionArgs,
    #[arg(long, alias = "lambda")]
    weights: String,
    /// `json` lists points and ξ; `csv` and `text` give counts per (partition, λ).
    #[arg(long, value_enum, default_value = "json")]
    format: DataFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableauxArgs {
    #[arg(long)]
    n: usize,
    /// Shape as a weight `a_1,...,a_{n-1}`.
    #[arg(long)]
    shape: String,
    #[arg(long, default_value = "{}")]
    order_part: String,
    /// Test one tableau given by rows, e.g. `1,2;3`, instead of enumerating.
    #[arg(long)]
    check: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: DataFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SemiInfArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    d_max: usize,
    /// Off-diagonal elements of O, e.g. `(1,4),(2,5)`.
    #[arg(long, default_value = "{}")]
    order_extra: String,
    /// Largest row described by `--order-extra`; defaults to its largest row.
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long, default_value_t = 200)]
    lemma_trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_enum, default_value = "md")]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Certificate files.
    certificates: Vec<PathBuf>,
}

/// Failure modes of a command, mapped to exit codes.
enum Failure {
    Config(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<pipedegen::Error> for Failure {
    fn from(e: pipedegen::Error) -> Self {
        Self::Config(e.to_string())
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn sweep_config(args: &SweepArgs, checks: BTreeSet<CheckKind>) -> Result<SweepConfig, Failure> {
    let p = &args.partition;
    let poset = p.poset()?;
    let signature = match &args.signature {
        Some(s) => parse_usize_list("signature", s)?,
        None => (1..p.n).collect(),
    };
    let mut cfg = SweepConfig::new(p.n, signature, p.selector(&poset)?);
    cfg = match &args.weights {
        Some(w) => SweepConfig {
            weights: parse_weight_list(p.n, w)?,
            ..cfg
        },
        None => cfg.with_default_weights()?,
    };
    cfg.checks = checks;
    cfg.budget_ms = args.run.budget_ms;
    cfg.output = args.run.output.clone();
    cfg.workers = args.run.workers.unwrap_or_else(default_workers);
    cfg.timings = args.run.timings;
    Ok(cfg)
}

fn emit_certificate(cert: &Certificate, output: Option<&Path>) -> Result<i32, Failure> {
    write_out(output, &cert.to_json())?;
    eprintln!(
        "{}: {} checks, {} passed, {} failed, {} partial, {} informational",
        cert.command,
        cert.summary.total,
        cert.summary.passed,
        cert.summary.failed,
        cert.summary.partial,
        cert.summary.info
    );
    Ok(cert.exit_code())
}

fn run_sweep(cfg: &SweepConfig, command: &str) -> Result<i32, Failure> {
    let cert = run_verify(cfg, command)?;
    emit_certificate(&cert, cfg.output.as_deref())
}

fn ideals(a: &IdealsArgs) -> Result<i32, Failure> {
    let poset = GtPoset::new(a.n)?;
    let oc = match &a.order_part {
        Some(s) => Some(parse_partition(&poset, s)?.resolve(&poset)?[0]),
        None => None,
    };
    let groups = poset.enumerate_ideals();
    let mut rows = Vec::new();
    for (k, group) in groups.iter().enumerate() {
        if a.k.is_some_and(|want| want != k) {
            continue;
        }
        for j in group {
            let gens: Vec<String> = poset
                .elements_of(poset.maximal(j.mask))
                .iter()
                .map(ToString::to_string)
                .collect();
            let mut row = json!({ "k": k, "mask": format!("{:#x}", j.mask), "size": j.len(), "generators": gens });
            if let Some(oc) = &oc {
                let m: Vec<String> = poset
                    .elements_of(poset.m_oc(j, oc))
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                let w = w_j(&poset, j, oc);
                row["m_oc"] = json!(m);
                row["column"] = json!(w.images()[..k].to_vec());
                row["psi"] = json!(psi_map(&poset, j, oc)?.to_string());
            }
            rows.push(row);
        }
    }
    let text = match a.format {
        DataFormat::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
        DataFormat::Text | DataFormat::Csv => {
            let mut s = String::new();
            for r in &rows {
                let gens: Vec<&str> = r["generators"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(|g| g.as_str())
                    .collect();
                let _ = write!(s, "k={} ⟨{}⟩", r["k"], gens.join(","));
                if !r["psi"].is_null() {
                    let _ = write!(
                        s,
                        " column={} psi={}",
                        r["column"],
                        r["psi"].as_str().unwrap_or("")
                    );
                }
                s.push('\n');
            }
            s
        }
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(exit::PASS)
}

fn pipedream(a: &PipedreamArgs) -> Result<i32, Failure> {
    let poset = GtPoset::new(a.n)?;
    let m = elements(&poset, &parse_pairs(&a.set)?)?;
    let mask = poset.mask_of(&m)?;
    let text = match a.format {
        DrawFormat::Ascii => render_ascii(&poset, mask),
        DrawFormat::Dot => render_dot(&poset, mask),
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(exit::PASS)
}

fn mcop(a: &McopArgs) -> Result<i32, Failure> {
    let poset = a.partition.poset()?;
    let partitions = a.partition.partitions(&poset)?;
    let weights = parse_weight_list(a.partition.n, &a.weights)?;
    if weights.is_empty() {
        return Err(ConfigError::Invalid("empty weight list".into()).into());
    }
    let mut all_match = true;
    let mut entries = Vec::new();
    let mut csv = String::from("partition,order,weight,points,weyl_dim\n");
    for oc in &partitions {
        let echo = PartitionEcho::new(&poset, oc);
        let xi = xi_map(&poset, oc, &PartitionTables::new(&poset, oc));
        for w in &weights {
            let pts = lattice_points(&poset, oc, w);
            let dim = weyl_dim(w);
            all_match &= BigUint::from(pts.len()) == dim;
            let _ = writeln!(
                csv,
                "{},\"{}\",\"{w}\",{},{dim}",
                echo.mask,
                echo.order.join(","),
                pts.len()
            );
            if matches!(a.format, DataFormat::Json) {
                entries.push(json!({
                    "partition": echo,
                    "weight": w,
                    "coordinates": poset.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "points": pts,
                    "count": pts.len(),
                    "weyl_dim": dim.to_string(),
                    "xi": xi.matrix,
                }));
            }
        }
    }
    let text = match a.format {
        DataFormat::Json => serde_json::to_string_pretty(&entries).expect("json") + "\n",
        DataFormat::Csv | DataFormat::Text => csv,
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(if all_match { exit::PASS } else { exit::FAIL })
}

fn parse_rows(s: &str) -> Result<Vec<Vec<usize>>, ConfigError> {
    s.split(';')
        .map(|r| parse_usize_list("tableau row", r))
        .collect()
}

fn tableaux(a: &TableauxArgs) -> Result<i32, Failure> {
    let poset = GtPoset::new(a.n)?;
    let shape: Weight = parse_weight(a.n, &a.shape)?;
    let oc = parse_partition(&poset, &a.order_part)?.resolve(&poset)?[0];
    let tables = PartitionTables::new(&poset, &oc);
    if let Some(rows) = &a.check {
        let y = Tableau::from_rows(&parse_rows(rows)?)?;
        let ok = y.shape(a.n) == shape && is_oc_semistandard(&y, &tables);
        write_out(
            a.output.as_deref(),
            &format!("{}\n{}\n", y, if ok { "accepted" } else { "rejected" }),
        )?;
        return Ok(if ok { exit::PASS } else { exit::FAIL });
    }
    let tabs = enumerate_semistandard(&poset, &oc, &shape);
    let text = match a.format {
        DataFormat::Json => {
            let tuples: Vec<_> = (1..a.n).map(|k| all_tuples(&tables, k)).collect();
            serde_json::to_string_pretty(&json!({
                "partition": PartitionEcho::new(&poset, &oc),
                "shape": shape,
                "count": tabs.len(),
                "weyl_dim": weyl_dim(&shape).to_string(),
                "tuples": tuples,
                "tableaux": tabs.iter().map(Tableau::rows).collect::<Vec<_>>(),
            }))
            .expect("json")
                + "\n"
        }
        DataFormat::Text | DataFormat::Csv => {
            let mut s = format!(
                "{} tableaux of shape {shape} (dim {})\n",
                tabs.len(),
                weyl_dim(&shape)
            );
            for y in &tabs {
                let _ = write!(s, "\n{y}\n");
            }
            s
        }
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(exit::PASS)
}

fn semiinf(a: &SemiInfArgs) -> Result<i32, Failure> {
    let cfg = SemiInfConfig {
        n: a.n,
        k: a.k,
        d_max: a.d_max,
        order_extra: parse_pairs(&a.order_extra)?,
        horizon: a.horizon,
        lemma_trials: a.lemma_trials,
        seed: a.seed,
        timings: a.timings,
    };
    let cert = run_semiinf(&cfg, "semiinf")?;
    emit_certificate(&cert, a.output.as_deref())
}

fn report(a: &ReportArgs) -> Result<i32, Failure> {
    if a.certificates.is_empty() {
        return Err(Failure::Config(
            "report needs at least one certificate".into(),
        ));
    }
    let certs = a
        .certificates
        .iter()
        .map(|p| {
            let s = std::fs::read_to_string(p)
                .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Certificate::from_json(&s).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = emit_report(&certs, a.format).map_err(|e| Failure::Io(e.to_string()))?;
    write_out(a.output.as_deref(), &text)?;
    Ok(exit::PASS)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Ideals(a) => ideals(&a),
        Command::Pipedream(a) => pipedream(&a),
        Command::Mcop(a) => mcop(&a),
        Command::Degenerate(a) => {
            let checks = [CheckKind::Degeneration, CheckKind::Census]
                .into_iter()
                .collect();
            run_sweep(&sweep_config(&a, checks)?, "degenerate")
        }
        Command::Verify(a) => {
            let checks = match &a.checks {
                Some(s) => parse_checks(s)?,
                None => CheckKind::ALL.into_iter().collect(),
            };
            run_sweep(&sweep_config(&a.sweep, checks)?, "verify")
        }
        Command::Tableaux(a) => tableaux(&a),
        Command::RepBasis(a) => run_sweep(
            &sweep_config(&a, [CheckKind::Basis].into_iter().collect())?,
            "rep-basis",
        ),
        Command::Semiinf(a) => semiinf(&a),
        Command::Report(a) => report(&a),
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            exit::CONFIG
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            exit::CONFIG
        }
    };
    ExitCode::from(code as u8)
}
