//! Experiment orchestration: dataset preparation, protocol execution across
//! (lambda, seed) grids, and CSV report / trace emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::data::Dataset;
use crate::dataio;
use crate::error::{Error, Result};
use crate::learner::{LearnerConfig, Weighting};
use crate::oracle::{self, AdversaryStrategy, OracleConfig};
use crate::protocol::{
    self, CFormula, Partition, ProtocolConfig, RoundTrace, WsRun,
};
use crate::seeds;

const TAG_TASK: u64 = 0x30;
const TAG_ORACLE_BASE: u64 = 0x40;
const TAG_SPLIT: u64 = 0x31;
const TAG_PROTOCOL: u64 = 0x32;
const TAG_LEARNER: u64 = 0x33;
const TAG_CORRUPT: u64 = 0x34;

/// Where a run's examples come from.
#[derive(Debug, Clone)]
pub enum DataSource {
    Synthetic {
        dim: usize,
        total: usize,
        separation: f64,
        /// Fraction of positive examples requested per machine.
        positive_fraction: f64,
    },
    Csv {
        path: PathBuf,
        label_column: String,
        positive_token: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolKind {
    WeightedSampling,
    Naive,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub source: DataSource,
    pub machines: usize,
    pub epsilon: f64,
    pub lambdas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub protocols: Vec<ProtocolKind>,
    pub adversary: AdversaryStrategy,
    pub c_formula: CFormula,
    pub epochs: u32,
    pub regularization: f64,
    /// Report and trace CSVs are written here when set.
    pub out_dir: Option<PathBuf>,
    /// Max parallel rows; 0 lets the runtime decide.
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn synthetic(name: &str, dim: usize, total: usize, machines: usize) -> ExperimentConfig {
        ExperimentConfig {
            name: name.to_string(),
            source: DataSource::Synthetic {
                dim,
                total,
                separation: 6.0,
                positive_fraction: 0.5,
            },
            machines,
            epsilon: 0.1,
            lambdas: vec![0.1],
            seeds: vec![1],
            protocols: vec![ProtocolKind::WeightedSampling, ProtocolKind::Naive],
            adversary: AdversaryStrategy::GaussianNoise,
            c_formula: CFormula::default(),
            epochs: 50,
            regularization: 1e-3,
            out_dir: None,
            threads: 0,
        }
    }
}

/// One aggregated report line: a (dataset, lambda) cell with per-seed means
/// and sample standard deviations. Accuracies are percentages of the noisy
/// training union; relative_cc is ws units over naive units.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub dataset: String,
    pub lambda: f64,
    pub seed_count: usize,
    pub acc_naive_mean: f64,
    pub acc_naive_std: f64,
    pub acc_ws_mean: f64,
    pub acc_ws_std: f64,
    pub relcc_mean: f64,
    pub relcc_std: f64,
}

/// A failed (lambda, seed) row; recorded, never fatal.
#[derive(Debug, Clone)]
pub struct RowFailure {
    pub lambda: f64,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub report: Vec<ReportRow>,
    pub failures: Vec<RowFailure>,
}

/// Per-seed measurements feeding one aggregate cell.
#[derive(Debug, Clone)]
struct RowResult {
    lambda: f64,
    seed: u64,
    acc_ws: Option<f64>,
    acc_naive: Option<f64>,
    relative_cc: Option<f64>,
    ws_trace: Option<Vec<RoundTrace>>,
}

/// Deterministic shuffle followed by a contiguous split into k shards;
/// the remainder goes to machine 1.
pub fn split_across_machines(data: &Dataset, k: usize, seed: u64) -> Result<Partition> {
    if k < 2 {
        return Err(Error::TooFewMachines { required: 2, got: k });
    }
    if k > data.len() {
        return Err(Error::param(
            "k",
            format!("cannot split {} examples across {} machines", data.len(), k),
        ));
    }
    use rand::seq::SliceRandom;
    let mut examples = data.examples().to_vec();
    let mut rng = seeds::stream(seed, TAG_SPLIT);
    examples.shuffle(&mut rng);

    let base = data.len() / k;
    let remainder = data.len() - base * k;
    let mut shards = Vec::with_capacity(k);
    let mut offset = 0;
    for machine in 0..k {
        let take = if machine == 0 { base + remainder } else { base };
        let shard = Dataset::from_examples(
            data.dim(),
            examples[offset..offset + take].to_vec(),
        )?;
        offset += take;
        shards.push(shard);
    }
    Partition::new(shards)
}

/// Builds the per-machine shards for one (lambda, seed) row.
fn prepare_partition(cfg: &ExperimentConfig, lambda: f64, seed: u64) -> Result<Partition> {
    match &cfg.source {
        DataSource::Synthetic {
            dim,
            total,
            separation,
            positive_fraction,
        } => {
            let task = oracle::make_task(*dim, *separation, seeds::mix(seed, TAG_TASK))?;
            let k = cfg.machines;
            let base = total / k;
            let remainder = total - base * k;
            let mut shards = Vec::with_capacity(k);
            for machine in 0..k {
                let per = if machine == 0 { base + remainder } else { base };
                let n_pos = (per as f64 * positive_fraction).round() as usize;
                let n_neg = per - n_pos.min(per);
                let oracle_cfg = OracleConfig::for_task(
                    &task,
                    lambda,
                    cfg.adversary,
                    seeds::mix(seed, TAG_ORACLE_BASE + machine as u64),
                );
                shards.push(oracle::draw_labeled_sample(
                    &oracle_cfg,
                    n_pos.min(per),
                    n_neg,
                )?);
            }
            Partition::new(shards)
        }
        DataSource::Csv {
            path,
            label_column,
            positive_token,
        } => {
            let clean = dataio::load_csv(path, label_column, positive_token)?;
            let noisy = oracle::corrupt_dataset(
                &clean,
                lambda,
                cfg.adversary,
                seeds::mix(seed, TAG_CORRUPT),
            )?;
            split_across_machines(&noisy, cfg.machines, seed)
        }
    }
}

fn run_row(cfg: &ExperimentConfig, lambda: f64, seed: u64) -> Result<RowResult> {
    let parts = prepare_partition(cfg, lambda, seed)?;
    let union = parts.union();
    let learner = LearnerConfig {
        regularization: cfg.regularization,
        epochs: cfg.epochs,
        seed: seeds::mix(seed, TAG_LEARNER),
        weighting: Weighting::Uniform,
    };

    let naive_units = protocol::naive_cost_units(&parts);
    let mut result = RowResult {
        lambda,
        seed,
        acc_ws: None,
        acc_naive: None,
        relative_cc: None,
        ws_trace: None,
    };

    if cfg.protocols.contains(&ProtocolKind::Naive) {
        let naive = protocol::run_naive(&parts, &learner, None)?;
        debug_assert_eq!(naive.ledger.total_units(), naive_units);
        let err = crate::learner::error_rate(&naive.hypothesis, &union)?;
        result.acc_naive = Some(100.0 * (1.0 - err));
    }

    if cfg.protocols.contains(&ProtocolKind::WeightedSampling) {
        let proto_cfg = ProtocolConfig {
            epsilon: cfg.epsilon,
            lambda,
            rho: 0.75,
            c_formula: cfg.c_formula,
            seed: seeds::mix(seed, TAG_PROTOCOL),
        };
        let ws: WsRun = if parts.machines() == 2 {
            protocol::run_ws_2machine(parts.shard(1), parts.shard(2), &proto_cfg, &learner)?
        } else {
            protocol::run_ws_kmachine(&parts, &proto_cfg, &learner)?
        };
        let err = crate::learner::error_rate(&ws.majority, &union)?;
        result.acc_ws = Some(100.0 * (1.0 - err));
        result.relative_cc = Some(ws.ledger.total_units() as f64 / naive_units as f64);
        result.ws_trace = Some(ws.trace);
    }

    Ok(result)
}

/// Executes every (lambda, seed) row, aggregates per lambda, and writes the
/// report / trace CSVs when an output directory is configured. Row failures
/// are collected, not propagated.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    if let Some(dir) = &cfg.out_dir {
        fs::create_dir_all(dir)?;
    }
    let grid: Vec<(f64, u64)> = cfg
        .lambdas
        .iter()
        .flat_map(|&lambda| cfg.seeds.iter().map(move |&seed| (lambda, seed)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let outcomes: Vec<(f64, u64, Result<RowResult>)> = pool.install(|| {
        grid.par_iter()
            .map(|&(lambda, seed)| (lambda, seed, run_row(cfg, lambda, seed)))
            .collect()
    });

    let mut failures = Vec::new();
    let mut results: Vec<RowResult> = Vec::new();
    for (lambda, seed, outcome) in outcomes {
        match outcome {
            Ok(row) => results.push(row),
            Err(e) => failures.push(RowFailure {
                lambda,
                seed,
                reason: e.to_string(),
            }),
        }
    }

    let mut report = Vec::new();
    for &lambda in &cfg.lambdas {
        let cell: Vec<&RowResult> = results.iter().filter(|r| r.lambda == lambda).collect();
        if cell.is_empty() {
            continue;
        }
        let (naive_mean, naive_std) = mean_std(cell.iter().filter_map(|r| r.acc_naive));
        let (ws_mean, ws_std) = mean_std(cell.iter().filter_map(|r| r.acc_ws));
        let (relcc_mean, relcc_std) = mean_std(cell.iter().filter_map(|r| r.relative_cc));
        report.push(ReportRow {
            dataset: cfg.name.clone(),
            lambda,
            seed_count: cell.len(),
            acc_naive_mean: naive_mean,
            acc_naive_std: naive_std,
            acc_ws_mean: ws_mean,
            acc_ws_std: ws_std,
            relcc_mean,
            relcc_std,
        });
    }

    if let Some(dir) = &cfg.out_dir {
        write_report_csv(&dir.join("report.csv"), &report)?;
        for row in &results {
            if let Some(trace) = &row.ws_trace {
                let file = dir.join(format!(
                    "trace_{}_lam{}_seed{}.csv",
                    cfg.name, row.lambda, row.seed
                ));
                write_trace_csv(&file, trace)?;
            }
        }
        if !failures.is_empty() {
            let mut text = String::from("lambda,seed,reason\n");
            for f in &failures {
                let _ = writeln!(text, "{},{},{:?}", f.lambda, f.seed, f.reason);
            }
            fs::write(dir.join("failures.csv"), text)?;
        }
    }

    Ok(ExperimentOutcome { report, failures })
}

fn mean_std(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let values: Vec<f64> = values.collect();
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn write_report_csv(path: &Path, rows: &[ReportRow]) -> Result<()> {
    let mut text = String::from(
        "dataset,lambda,seed_count,acc_naive_mean,acc_naive_std,acc_ws_mean,acc_ws_std,relcc_mean,relcc_std\n",
    );
    for r in rows {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{},{}",
            r.dataset,
            r.lambda,
            r.seed_count,
            fmt4(r.acc_naive_mean),
            fmt4(r.acc_naive_std),
            fmt4(r.acc_ws_mean),
            fmt4(r.acc_ws_std),
            fmt4(r.relcc_mean),
            fmt4(r.relcc_std)
        );
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn write_trace_csv(path: &Path, trace: &[RoundTrace]) -> Result<()> {
    let mut text =
        String::from("round,train_error,weighted_miscls_fraction,potential,cumulative_units\n");
    for row in trace {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            row.round,
            fmt6(row.train_error),
            fmt6(row.weighted_misclassified_fraction),
            row.potential,
            row.cumulative_units
        );
    }
    fs::write(path, text)?;
    Ok(())
}

fn fmt4(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.4}")
    }
}

fn fmt6(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.6}")
    }
}

/// Concatenates report CSVs that share the standard header.
pub fn merge_reports(inputs: &[PathBuf], out: &Path) -> Result<()> {
    let mut merged = String::new();
    let mut header: Option<String> = None;
    for input in inputs {
        let text = fs::read_to_string(input)?;
        let mut lines = text.lines();
        let head = lines
            .next()
            .ok_or_else(|| Error::Config(format!("{}: empty file", input.display())))?;
        match &header {
            None => {
                header = Some(head.to_string());
                merged.push_str(head);
                merged.push('\n');
            }
            Some(h) if h == head => {}
            Some(_) => {
                return Err(Error::Config(format!(
                    "{}: header differs from the first input",
                    input.display()
                )))
            }
        }
        for line in lines {
            if !line.is_empty() {
                merged.push_str(line);
                merged.push('\n');
            }
        }
    }
    fs::write(out, merged)?;
    Ok(())
}

/// Parses the flat key=value experiment description ('#' starts a comment).
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut kv = std::collections::BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key=value, got `{line}`", idx + 1))
        })?;
        kv.insert(key.trim().to_string(), value.trim().to_string());
    }
    let get = |key: &str| kv.get(key).map(|s| s.as_str());
    let parse_f64 = |key: &str, default: f64| -> Result<f64> {
        match get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("{key}: not a number: `{v}`"))),
            None => Ok(default),
        }
    };
    let parse_usize = |key: &str, default: usize| -> Result<usize> {
        match get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("{key}: not an integer: `{v}`"))),
            None => Ok(default),
        }
    };

    let dataset_kind = get("dataset").unwrap_or("synthetic");
    let source = match dataset_kind {
        "synthetic" => DataSource::Synthetic {
            dim: parse_usize("p", 50)?,
            total: parse_usize("total", 4000)?,
            separation: parse_f64("separation", 6.0)?,
            positive_fraction: parse_f64("pos_fraction", 0.5)?,
        },
        "csv" => DataSource::Csv {
            path: PathBuf::from(
                get("csv_path")
                    .ok_or_else(|| Error::Config("csv dataset requires csv_path".into()))?,
            ),
            label_column: get("label_col").unwrap_or("label").to_string(),
            positive_token: get("positive_token").unwrap_or("1").to_string(),
        },
        other => return Err(Error::Config(format!("unknown dataset kind `{other}`"))),
    };

    let lambdas = match get("lambdas") {
        Some(list) => list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("lambdas: bad value `{v}`")))
            })
            .collect::<Result<Vec<f64>>>()?,
        None => vec![0.1],
    };
    let seeds = match get("seeds") {
        Some(list) => list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("seeds: bad value `{v}`")))
            })
            .collect::<Result<Vec<u64>>>()?,
        None => vec![1, 2, 3, 4, 5],
    };
    let protocols = match get("protocols") {
        Some(list) => list
            .split(',')
            .filter(|v| !v.trim().is_empty())
            .map(|v| match v.trim() {
                "ws" => Ok(ProtocolKind::WeightedSampling),
                "naive" => Ok(ProtocolKind::Naive),
                other => Err(Error::Config(format!("protocols: unknown `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?,
        None => vec![ProtocolKind::WeightedSampling, ProtocolKind::Naive],
    };

    Ok(ExperimentConfig {
        name: get("name").unwrap_or("experiment").to_string(),
        source,
        machines: parse_usize("k", 2)?,
        epsilon: parse_f64("epsilon", 0.1)?,
        lambdas,
        seeds,
        protocols,
        adversary: AdversaryStrategy::parse(get("adversary").unwrap_or("gaussian-noise"))?,
        c_formula: CFormula::parse(get("c_formula").unwrap_or("proof-consistent"))?,
        epochs: parse_usize("epochs", 50)? as u32,
        regularization: parse_f64("regularization", 1e-3)?,
        out_dir: get("out").map(PathBuf::from),
        threads: parse_usize("threads", 0)?,
    })
}
