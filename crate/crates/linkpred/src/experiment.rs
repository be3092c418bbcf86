//! Experiment harness: sweeps methods and removal fractions over a network
//! source, averages AUC over seeded trials, times the prediction span, and
//! emits CSV.
//!
//! Seed discipline: every trial derives its streams (generation, removal,
//! detection, sampled AUC) from `(master_seed, trial index)` alone, so the
//! removed edge set of a trial is identical across methods and detectors
//! and comparisons are paired. Two runs with the same config and master
//! seed produce byte-identical CSV apart from the trailing wall-time
//! column.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::community::{Cover, detect_greedy_modularity, detect_label_propagation};
use crate::evaluation::{auc_exact, auc_sampled, label_ranking};
use crate::graph::Graph;
use crate::io::{LabelMap, read_cover, read_edge_list};
use crate::lfr::{self, LfrParams};
use crate::predictor::{rank_baseline, rank_community_aware};
use crate::seeds::derive_seed;
use crate::similarity::SimilarityMethod;
use crate::{Error, Result};

// Per-trial seed streams.
const STREAM_GENERATE: u64 = 0;
const STREAM_REMOVAL: u64 = 1;
const STREAM_DETECT: u64 = 2;
const STREAM_AUC: u64 = 3;

/// Where the original networks come from: a fresh LFR instance per trial
/// (the params' own seed is replaced by the trial stream), or a fixed
/// edge-list file whose trials vary only the removal.
#[derive(Debug, Clone)]
pub enum NetworkSource {
    Lfr(LfrParams),
    EdgeList(PathBuf),
}

impl NetworkSource {
    /// Compact descriptor used in result rows (no commas).
    pub fn descriptor(&self) -> String {
        match self {
            NetworkSource::Lfr(p) => format!(
                "lfr:n={};k={};kmax={};mu={};on={};om={}",
                p.n, p.avg_degree, p.max_degree, p.mixing, p.overlap_count, p.overlap_memberships
            ),
            NetworkSource::EdgeList(path) => path.display().to_string(),
        }
    }
}

/// How the predictor obtains a cover; `None` is the plain baseline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSource {
    None,
    LabelPropagation,
    GreedyModularity,
    /// Planted cover of the generated network (LFR sources only).
    GroundTruth,
    /// Cover file produced by an external detector.
    CoverFile(PathBuf),
}

impl CoverSource {
    pub fn descriptor(&self) -> String {
        match self {
            CoverSource::None => "none".into(),
            CoverSource::LabelPropagation => "label-propagation".into(),
            CoverSource::GreedyModularity => "greedy-modularity".into(),
            CoverSource::GroundTruth => "ground-truth".into(),
            CoverSource::CoverFile(path) => format!("cover:{}", path.display()),
        }
    }

    pub fn parse(text: &str) -> Result<CoverSource> {
        match text.to_ascii_lowercase().as_str() {
            "none" => Ok(CoverSource::None),
            "label-propagation" | "lp" => Ok(CoverSource::LabelPropagation),
            "greedy-modularity" | "greedy" => Ok(CoverSource::GreedyModularity),
            "ground-truth" | "truth" => Ok(CoverSource::GroundTruth),
            _ => match text.strip_prefix("cover:") {
                Some(path) => Ok(CoverSource::CoverFile(PathBuf::from(path))),
                None => Err(Error::Config(format!(
                    "unknown detector {text:?} (expected none, label-propagation, greedy-modularity, ground-truth, or cover:<path>)"
                ))),
            },
        }
    }
}

impl fmt::Display for CoverSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// How AUC is computed. `Auto` enumerates exactly while the candidate list
/// is small and falls back to sampling beyond the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AucMode {
    Exact,
    Sampled(usize),
    Auto { threshold: usize, samples: usize },
}

impl Default for AucMode {
    fn default() -> AucMode {
        AucMode::Auto {
            threshold: 10_000_000,
            samples: 1_000_000,
        }
    }
}

impl AucMode {
    pub fn parse(text: &str) -> Result<AucMode> {
        match text.to_ascii_lowercase().as_str() {
            "exact" => Ok(AucMode::Exact),
            "auto" => Ok(AucMode::default()),
            other => match other.strip_prefix("sampled:") {
                Some(count) => count
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad sample count in {text:?}")))
                    .map(AucMode::Sampled),
                None => Err(Error::Config(format!(
                    "unknown AUC mode {text:?} (expected exact, sampled:<n>, or auto)"
                ))),
            },
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            AucMode::Exact => "exact".into(),
            AucMode::Sampled(n) => format!("sampled:{n}"),
            AucMode::Auto { threshold, samples } => {
                format!("auto(threshold={threshold};samples={samples})")
            }
        }
    }
}

/// A full parameter grid: methods x removal fractions x trials.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: NetworkSource,
    pub detector: CoverSource,
    pub methods: Vec<SimilarityMethod>,
    pub removal_fractions: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub auc_mode: AucMode,
    /// Sweep bound for the label-propagation detector.
    pub lp_max_sweeps: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method is required".into()));
        }
        if self.removal_fractions.is_empty() {
            return Err(Error::Config("at least one fraction is required".into()));
        }
        for &f in &self.removal_fractions {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::Config(format!(
                    "removal fraction {f} must lie strictly between 0 and 1"
                )));
            }
        }
        if self.trials == 0 {
            return Err(Error::Config("at least one trial is required".into()));
        }
        if self.lp_max_sweeps == 0 {
            return Err(Error::Config("lp_max_sweeps must be at least 1".into()));
        }
        if let NetworkSource::Lfr(params) = &self.source {
            params.validate()?;
        }
        if self.detector == CoverSource::GroundTruth
            && !matches!(self.source, NetworkSource::Lfr(_))
        {
            return Err(Error::Config(
                "ground-truth covers require a generated source".into(),
            ));
        }
        Ok(())
    }

    /// Reads the flat `key = value` config format; see [`parse_config`].
    pub fn from_file(path: &Path) -> Result<ExperimentConfig> {
        parse_config(&std::fs::read_to_string(path)?)
    }
}

/// Parses the flat key-value experiment config.
///
/// Recognized keys (one `key = value` per line, `#` starts a comment):
///
/// | key | value |
/// |-----|-------|
/// | `source` | `lfr` or an edge-list path |
/// | `n`, `avg_degree`, `max_degree`, `degree_exponent`, `community_exponent`, `min_community`, `max_community`, `mixing`, `overlap_count`, `overlap_memberships` | LFR parameters (required when `source = lfr`) |
/// | `detector` | `none`, `label-propagation`, `greedy-modularity`, `ground-truth`, or `cover:<path>` |
/// | `methods` | comma-separated list of `cn`, `jaccard`, `aa`, `ra`, `pa` |
/// | `fractions` | comma-separated removal fractions in (0, 1) |
/// | `trials` | trials per grid cell |
/// | `seed` | master seed |
/// | `auc` | `exact`, `sampled:<n>`, or `auto` (default) |
/// | `auc_auto_threshold`, `auc_auto_samples` | `auto` knobs |
/// | `lp_max_sweeps` | label-propagation sweep bound (default 100) |
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value", line_no + 1))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    let get = |key: &str| -> Option<&str> {
        pairs
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    };
    let require = |key: &str| -> Result<&str> {
        get(key).ok_or_else(|| Error::Config(format!("missing required key {key:?}")))
    };
    fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
        value
            .parse::<T>()
            .map_err(|_| Error::Config(format!("bad value {value:?} for key {key:?}")))
    }

    let known = [
        "source",
        "n",
        "avg_degree",
        "max_degree",
        "degree_exponent",
        "community_exponent",
        "min_community",
        "max_community",
        "mixing",
        "overlap_count",
        "overlap_memberships",
        "detector",
        "methods",
        "fractions",
        "trials",
        "seed",
        "auc",
        "auc_auto_threshold",
        "auc_auto_samples",
        "lp_max_sweeps",
    ];
    for (key, _) in &pairs {
        if !known.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown config key {key:?}")));
        }
    }

    let master_seed: u64 = number("seed", require("seed")?)?;
    let source = match require("source")? {
        "lfr" => NetworkSource::Lfr(LfrParams {
            n: number("n", require("n")?)?,
            avg_degree: number("avg_degree", require("avg_degree")?)?,
            max_degree: number("max_degree", require("max_degree")?)?,
            degree_exponent: number("degree_exponent", require("degree_exponent")?)?,
            community_exponent: number("community_exponent", require("community_exponent")?)?,
            min_community: number("min_community", require("min_community")?)?,
            max_community: number("max_community", require("max_community")?)?,
            mixing: number("mixing", require("mixing")?)?,
            overlap_count: number("overlap_count", get("overlap_count").unwrap_or("0"))?,
            overlap_memberships: number(
                "overlap_memberships",
                get("overlap_memberships").unwrap_or("0"),
            )?,
            seed: master_seed,
        }),
        path => NetworkSource::EdgeList(PathBuf::from(path)),
    };

    let methods = require("methods")?
        .split(',')
        .map(|m| m.trim().parse::<SimilarityMethod>())
        .collect::<Result<Vec<_>>>()?;
    let removal_fractions = require("fractions")?
        .split(',')
        .map(|f| number::<f64>("fractions", f.trim()))
        .collect::<Result<Vec<_>>>()?;

    let mut auc_mode = match get("auc") {
        Some(text) => AucMode::parse(text)?,
        None => AucMode::default(),
    };
    if let AucMode::Auto { threshold, samples } = &mut auc_mode {
        if let Some(t) = get("auc_auto_threshold") {
            *threshold = number("auc_auto_threshold", t)?;
        }
        if let Some(s) = get("auc_auto_samples") {
            *samples = number("auc_auto_samples", s)?;
        }
    }

    let config = ExperimentConfig {
        source,
        detector: match get("detector") {
            Some(text) => CoverSource::parse(text)?,
            None => CoverSource::None,
        },
        methods,
        removal_fractions,
        trials: number("trials", require("trials")?)?,
        master_seed,
        auc_mode,
        lp_max_sweeps: number("lp_max_sweeps", get("lp_max_sweeps").unwrap_or("100"))?,
    };
    config.validate()?;
    Ok(config)
}

/// Outcome of a single trial.
#[derive(Debug, Clone)]
pub enum TrialOutcome {
    Completed { auc: f64, seconds: f64 },
    /// Undefined AUC (for example a fraction that rounds to zero removals)
    /// or a per-trial failure; the row aggregation skips it.
    Skipped { reason: String },
}

/// The original network of a trial plus everything derived from the source.
struct TrialInput {
    graph: Graph,
    labels: LabelMap,
    ground_truth: Option<Cover>,
}

fn materialize(source: &NetworkSource, trial_seed: u64) -> Result<TrialInput> {
    match source {
        NetworkSource::Lfr(params) => {
            let mut params = params.clone();
            params.seed = derive_seed(trial_seed, STREAM_GENERATE);
            let network = lfr::generate(&params)?;
            Ok(TrialInput {
                labels: LabelMap::numeric(network.graph.vertex_count()),
                graph: network.graph,
                ground_truth: Some(network.ground_truth),
            })
        }
        NetworkSource::EdgeList(path) => {
            let (graph, labels) = read_edge_list(path)?;
            Ok(TrialInput {
                graph,
                labels,
                ground_truth: None,
            })
        }
    }
}

/// Runs one trial: materialize the original network, remove a fraction of
/// edges, detect communities on the observed graph (per `detector`), rank,
/// and evaluate AUC against the removed set. The reported seconds cover
/// detection + ranking + evaluation only.
pub fn run_trial(
    source: &NetworkSource,
    detector: &CoverSource,
    method: SimilarityMethod,
    fraction: f64,
    trial_seed: u64,
    auc_mode: AucMode,
    lp_max_sweeps: usize,
) -> Result<TrialOutcome> {
    let input = materialize(source, trial_seed)?;
    let (observed, removed) =
        input
            .graph
            .remove_random_edges(fraction, derive_seed(trial_seed, STREAM_REMOVAL))?;
    if removed.is_empty() {
        return Ok(TrialOutcome::Skipped {
            reason: format!(
                "fraction {fraction} rounds to zero removals on {} edges",
                input.graph.edge_count()
            ),
        });
    }
    // File I/O stays outside the timed span.
    let loaded_cover = match detector {
        CoverSource::CoverFile(path) => {
            Some(read_cover(path, &input.labels, observed.vertex_count())?)
        }
        _ => None,
    };

    let started = Instant::now();
    let cover = match detector {
        CoverSource::None => None,
        CoverSource::LabelPropagation => Some(detect_label_propagation(
            &observed,
            derive_seed(trial_seed, STREAM_DETECT),
            lp_max_sweeps,
        )?),
        CoverSource::GreedyModularity => Some(detect_greedy_modularity(&observed)),
        CoverSource::GroundTruth => Some(
            input
                .ground_truth
                .clone()
                .ok_or(Error::GroundTruthUnavailable)?,
        ),
        CoverSource::CoverFile(_) => loaded_cover,
    };
    let ranked = match &cover {
        Some(cover) => rank_community_aware(&observed, cover, method)?,
        None => rank_baseline(&observed, method),
    };
    let labeled = label_ranking(&ranked, &removed)?;
    let auc = match auc_mode {
        AucMode::Exact => auc_exact(&labeled),
        AucMode::Sampled(samples) => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, STREAM_AUC));
            auc_sampled(&labeled, samples, &mut rng)
        }
        AucMode::Auto { threshold, samples } => {
            if labeled.len() > threshold {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, STREAM_AUC));
                auc_sampled(&labeled, samples, &mut rng)
            } else {
                auc_exact(&labeled)
            }
        }
    };
    let seconds = started.elapsed().as_secs_f64();
    match auc {
        Ok(result) => Ok(TrialOutcome::Completed {
            auc: result.auc,
            seconds,
        }),
        Err(Error::UndefinedAuc {
            positives,
            negatives,
        }) => Ok(TrialOutcome::Skipped {
            reason: format!("AUC undefined (P={positives}, N={negatives})"),
        }),
        Err(err) => Err(err),
    }
}

/// One aggregated grid cell.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub source: String,
    pub detector: String,
    pub method: SimilarityMethod,
    pub removal_fraction: f64,
    pub trials: usize,
    /// Per-trial AUCs of the completed trials, in trial order.
    pub aucs: Vec<f64>,
    pub skipped: usize,
    pub mean_auc: f64,
    pub std_auc: f64,
    pub mean_seconds: f64,
}

impl ResultRow {
    pub fn completed(&self) -> usize {
        self.aucs.len()
    }
}

/// Result rows in config order (method-major, then fraction).
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
}

impl ExperimentResult {
    /// Finds the row for a method/fraction pair.
    pub fn row(&self, method: SimilarityMethod, fraction: f64) -> Option<&ResultRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.removal_fraction == fraction)
    }

    /// CSV with one row per grid cell. All columns except the trailing
    /// `mean_seconds` are deterministic for a fixed config and seed.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "source,detector,method,removed_fraction,observed_fraction,trials,completed,skipped,mean_auc,std_auc,mean_seconds"
        )?;
        for row in &self.rows {
            let (mean, std) = if row.aucs.is_empty() {
                (String::new(), String::new())
            } else {
                (
                    format!("{:.6}", row.mean_auc),
                    format!("{:.6}", row.std_auc),
                )
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{:.6}",
                row.source,
                row.detector,
                row.method,
                row.removal_fraction,
                1.0 - row.removal_fraction,
                row.trials,
                row.completed(),
                row.skipped,
                mean,
                std,
                row.mean_seconds,
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

/// Runs the full cross-product `methods x fractions`, each cell averaged
/// over `trials` seeded trials. Per-trial errors are recorded as skips and
/// the cell aggregates the completed trials.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let mut rows = Vec::new();
    for &method in &config.methods {
        for &fraction in &config.removal_fractions {
            let mut aucs = Vec::new();
            let mut seconds = Vec::new();
            let mut skipped = 0usize;
            for trial in 0..config.trials {
                let trial_seed = derive_seed(config.master_seed, trial as u64);
                let outcome = run_trial(
                    &config.source,
                    &config.detector,
                    method,
                    fraction,
                    trial_seed,
                    config.auc_mode,
                    config.lp_max_sweeps,
                );
                match outcome {
                    Ok(TrialOutcome::Completed { auc, seconds: s }) => {
                        aucs.push(auc);
                        seconds.push(s);
                    }
                    Ok(TrialOutcome::Skipped { .. }) | Err(_) => skipped += 1,
                }
            }
            let mean_auc = mean(&aucs);
            let std_auc = population_std(&aucs, mean_auc);
            rows.push(ResultRow {
                source: config.source.descriptor(),
                detector: config.detector.descriptor(),
                method,
                removal_fraction: fraction,
                trials: config.trials,
                mean_seconds: mean(&seconds),
                aucs,
                skipped,
                mean_auc,
                std_auc,
            });
        }
    }
    Ok(ExperimentResult { rows })
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Population standard deviation; a single trial reports exactly 0.
fn population_std(values: &[f64], mean: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
    var.sqrt()
}

/// One timed trial per network size at removal fraction 0.2.
pub fn timing_sweep(
    base: &LfrParams,
    sizes: &[usize],
    method: SimilarityMethod,
    detector: &CoverSource,
    master_seed: u64,
) -> Result<Vec<(usize, f64)>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("sizes must be strictly ascending".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for (index, &n) in sizes.iter().enumerate() {
        let mut params = base.clone();
        params.n = n;
        let outcome = run_trial(
            &NetworkSource::Lfr(params),
            detector,
            method,
            0.2,
            derive_seed(master_seed, index as u64),
            AucMode::default(),
            100,
        )?;
        let seconds = match outcome {
            TrialOutcome::Completed { seconds, .. } => seconds,
            TrialOutcome::Skipped { reason } => {
                return Err(Error::GenerationFailed(format!(
                    "timing trial at n={n} was skipped: {reason}"
                )));
            }
        };
        rows.push((n, seconds));
    }
    Ok(rows)
}

pub fn write_timing_csv<W: Write>(rows: &[(usize, f64)], mut out: W) -> Result<()> {
    writeln!(out, "n,seconds")?;
    for (n, seconds) in rows {
        writeln!(out, "{n},{seconds:.6}")?;
    }
    Ok(())
}

/// Statistics of one edge-list file.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub clustering_coefficient: f64,
    pub average_degree: f64,
}

/// A stats row: per-file errors become row entries rather than failures.
#[derive(Debug, Clone)]
pub struct StatsEntry {
    pub name: String,
    pub outcome: std::result::Result<GraphStats, String>,
}

/// Computes vertex/edge counts, clustering coefficient, and average degree
/// for each edge-list file.
pub fn stats_report(paths: &[PathBuf]) -> Vec<StatsEntry> {
    paths
        .iter()
        .map(|path| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let outcome = read_edge_list(path)
                .and_then(|(graph, _)| {
                    Ok(GraphStats {
                        vertices: graph.vertex_count(),
                        edges: graph.edge_count(),
                        clustering_coefficient: graph.clustering_coefficient(),
                        average_degree: graph.average_degree()?,
                    })
                })
                .map_err(|err| err.to_string());
            StatsEntry { name, outcome }
        })
        .collect()
}

pub fn write_stats_csv<W: Write>(entries: &[StatsEntry], mut out: W) -> Result<()> {
    writeln!(
        out,
        "name,vertices,edges,clustering_coefficient,average_degree,error"
    )?;
    for entry in entries {
        match &entry.outcome {
            Ok(stats) => writeln!(
                out,
                "{},{},{},{:.6},{:.6},",
                entry.name,
                stats.vertices,
                stats.edges,
                stats.clustering_coefficient,
                stats.average_degree
            )?,
            Err(message) => writeln!(
                out,
                "{},,,,,{}",
                entry.name,
                message.replace(',', ";").replace('\n', " ")
            )?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn tiny_lfr() -> LfrParams {
        LfrParams {
            n: 120,
            avg_degree: 8.0,
            max_degree: 12,
            degree_exponent: 2.0,
            community_exponent: 1.0,
            min_community: 15,
            max_community: 30,
            mixing: 0.1,
            overlap_count: 0,
            overlap_memberships: 0,
            seed: 0,
        }
    }

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            source: NetworkSource::Lfr(tiny_lfr()),
            detector: CoverSource::None,
            methods: vec![
                SimilarityMethod::CommonNeighbors,
                SimilarityMethod::AdamicAdar,
            ],
            removal_fractions: vec![0.1, 0.2, 0.3],
            trials: 5,
            master_seed: 11,
            auc_mode: AucMode::Exact,
            lp_max_sweeps: 100,
        }
    }

    #[test]
    fn grid_produces_one_row_per_cell() {
        let result = run_experiment(&tiny_config()).unwrap();
        assert_eq!(result.rows.len(), 6);
        for row in &result.rows {
            assert_eq!(row.completed(), 5);
            assert_eq!(row.skipped, 0);
            assert!(row.mean_auc > 0.0 && row.mean_auc <= 1.0);
            assert!(row.std_auc >= 0.0);
            // Reported mean matches the per-trial AUCs.
            let recomputed = row.aucs.iter().sum::<f64>() / row.aucs.len() as f64;
            assert!((row.mean_auc - recomputed).abs() < 1e-12);
        }
    }

    #[test]
    fn single_trial_has_zero_std() {
        let mut config = tiny_config();
        config.trials = 1;
        config.removal_fractions = vec![0.2];
        config.methods = vec![SimilarityMethod::CommonNeighbors];
        let result = run_experiment(&config).unwrap();
        assert_eq!(result.rows.len(), 1);
        assert_eq!(result.rows[0].std_auc, 0.0);
    }

    #[test]
    fn removal_is_paired_across_methods_and_detectors() {
        // The removed set depends on (master seed, trial) only.
        let source = NetworkSource::Lfr(tiny_lfr());
        let trial_seed = derive_seed(33, 0);
        let input = materialize(&source, trial_seed).unwrap();
        let removal_seed = derive_seed(trial_seed, STREAM_REMOVAL);
        let (_, removed_a) = input.graph.remove_random_edges(0.2, removal_seed).unwrap();
        let input_b = materialize(&source, trial_seed).unwrap();
        let (_, removed_b) = input_b
            .graph
            .remove_random_edges(0.2, removal_seed)
            .unwrap();
        assert_eq!(input.graph, input_b.graph);
        assert_eq!(removed_a, removed_b);
    }

    #[test]
    fn trial_with_zero_removals_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.txt");
        std::fs::write(&path, "a b\nb c\nc a\n").unwrap();
        let outcome = run_trial(
            &NetworkSource::EdgeList(path),
            &CoverSource::None,
            SimilarityMethod::CommonNeighbors,
            0.1, // round(0.3) = 0 removals
            7,
            AucMode::Exact,
            100,
        )
        .unwrap();
        assert!(matches!(outcome, TrialOutcome::Skipped { .. }));
    }

    #[test]
    fn ground_truth_detector_needs_generated_source() {
        let mut config = tiny_config();
        config.source = NetworkSource::EdgeList(PathBuf::from("nowhere.txt"));
        config.detector = CoverSource::GroundTruth;
        assert!(matches!(config.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn csv_is_deterministic_up_to_timing() {
        let config = tiny_config();
        let a = run_experiment(&config).unwrap().to_csv();
        let b = run_experiment(&config).unwrap().to_csv();
        assert_eq!(strip_last_column(&a), strip_last_column(&b));
    }

    fn strip_last_column(csv: &str) -> String {
        csv.lines()
            .map(|line| &line[..line.rfind(',').unwrap()])
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn sampled_auc_mode_is_deterministic() {
        let mut config = tiny_config();
        config.auc_mode = AucMode::Sampled(5000);
        config.methods = vec![SimilarityMethod::ResourceAllocation];
        config.removal_fractions = vec![0.2];
        config.trials = 2;
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(a.rows[0].aucs, b.rows[0].aucs);
    }

    #[test]
    fn config_round_trips_through_parser() {
        let text = "\
# comment line
source = lfr
n = 120
avg_degree = 8
max_degree = 12
degree_exponent = 2
community_exponent = 1
min_community = 15
max_community = 30
mixing = 0.1
detector = label-propagation
methods = cn, aa
fractions = 0.1, 0.3
trials = 4
seed = 99
auc = sampled:2000
";
        let config = parse_config(text).unwrap();
        assert!(matches!(config.source, NetworkSource::Lfr(_)));
        assert_eq!(config.detector, CoverSource::LabelPropagation);
        assert_eq!(config.methods.len(), 2);
        assert_eq!(config.removal_fractions, vec![0.1, 0.3]);
        assert_eq!(config.trials, 4);
        assert_eq!(config.master_seed, 99);
        assert_eq!(config.auc_mode, AucMode::Sampled(2000));
    }

    #[test]
    fn config_parser_rejects_bad_input() {
        assert!(matches!(parse_config("nonsense"), Err(Error::Config(_))));
        assert!(matches!(
            parse_config("source = lfr\nbogus_key = 3\n"),
            Err(Error::Config(_))
        ));
        // Fraction at the boundary is rejected.
        let text = "source = x.txt\nmethods = cn\nfractions = 0\ntrials = 1\nseed = 1\n";
        assert!(matches!(parse_config(text), Err(Error::Config(_))));
        let text = "source = x.txt\nmethods = cn\nfractions = 1.0\ntrials = 1\nseed = 1\n";
        assert!(matches!(parse_config(text), Err(Error::Config(_))));
    }

    #[test]
    fn timing_sweep_contract() {
        let mut base = tiny_lfr();
        base.min_community = 12;
        base.max_community = 24;
        let rows = timing_sweep(
            &base,
            &[60, 120],
            SimilarityMethod::AdamicAdar,
            &CoverSource::LabelPropagation,
            5,
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].0, 60);
        assert_eq!(rows[1].0, 120);
        assert!(rows.iter().all(|&(_, s)| s >= 0.0));

        assert!(timing_sweep(
            &base,
            &[120, 60],
            SimilarityMethod::AdamicAdar,
            &CoverSource::None,
            5,
        )
        .is_err());
    }

    #[test]
    fn stats_report_rows() {
        let dir = tempfile::tempdir().unwrap();
        let triangle = dir.path().join("triangle.txt");
        let mut f = std::fs::File::create(&triangle).unwrap();
        writeln!(f, "a b\nb c\nc a").unwrap();
        let missing = dir.path().join("missing.txt");

        let entries = stats_report(&[triangle, missing]);
        assert_eq!(entries.len(), 2);
        let stats = entries[0].outcome.as_ref().unwrap();
        assert_eq!(
            *stats,
            GraphStats {
                vertices: 3,
                edges: 3,
                clustering_coefficient: 1.0,
                average_degree: 2.0
            }
        );
        assert!(entries[1].outcome.is_err());

        let mut buf = Vec::new();
        write_stats_csv(&entries, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "name,vertices,edges,clustering_coefficient,average_degree,error\n"
        ));
        assert!(text.contains("triangle,3,3,1.000000,2.000000,"));
        assert!(text.lines().nth(2).unwrap().starts_with("missing,,,,,"));

        assert!(stats_report(&[]).is_empty());
    }

    #[test]
    fn experiment_csv_shape() {
        let mut config = tiny_config();
        config.trials = 2;
        config.methods = vec![SimilarityMethod::CommonNeighbors];
        config.removal_fractions = vec![0.25];
        let csv = run_experiment(&config).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            "source,detector,method,removed_fraction,observed_fraction,trials,completed,skipped,mean_auc,std_auc,mean_seconds"
        );
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[1], "none");
        assert_eq!(fields[2], "cn");
        assert_eq!(fields[3], "0.25");
        assert_eq!(fields[4], "0.75");
        assert_eq!(fields[5], "2");
        assert_eq!(fields[6], "2");
    }
}
