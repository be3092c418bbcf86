//! Thin command-line front end; all logic lives in the library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linkpred::community::{detect_greedy_modularity, detect_label_propagation};
use linkpred::evaluation::{auc_exact, auc_sampled, label_ranking, roc_points, write_roc_csv};
use linkpred::experiment::{
    AucMode, CoverSource, ExperimentConfig, run_experiment, stats_report, timing_sweep,
    write_stats_csv, write_timing_csv,
};
use linkpred::io::{
    LabelMap, read_cover, read_edge_list, write_cover_file, write_edge_list_file,
};
use linkpred::lfr::{self, LfrParams};
use linkpred::predictor::{rank_baseline, rank_community_aware, write_predictions_csv};
use linkpred::seeds::derive_seed;
use linkpred::similarity::SimilarityMethod;
use linkpred::{Error, Result};

#[derive(Parser)]
#[command(name = "linkpred", version, about = "Community-aware missing-edge prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an LFR benchmark network with a planted cover
    Generate(GenerateArgs),
    /// Rank the unconnected pairs of a network as edge candidates
    Predict(PredictArgs),
    /// Remove random edges, predict them, and report the AUC
    Evaluate(EvaluateArgs),
    /// Run a config-driven experiment grid and emit result CSV
    Experiment(ExperimentArgs),
    /// Report statistics of edge-list files
    Stats(StatsArgs),
    /// Time the prediction pipeline across network sizes
    Timing(TimingArgs),
}

/// LFR parameters shared by `generate` and `timing`.
#[derive(Args)]
struct LfrArgs {
    /// Vertex count
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Target average degree
    #[arg(long, default_value_t = 10.0)]
    avg_degree: f64,
    /// Maximum degree [default: 1.5 * avg-degree]
    #[arg(long)]
    max_degree: Option<usize>,
    /// Degree power-law exponent
    #[arg(long, default_value_t = 2.0)]
    degree_exponent: f64,
    /// Community-size power-law exponent
    #[arg(long, default_value_t = 1.0)]
    community_exponent: f64,
    /// Minimum community size
    #[arg(long, default_value_t = 20)]
    min_community: usize,
    /// Maximum community size [default: 2 * min-community]
    #[arg(long)]
    max_community: Option<usize>,
    /// Mixing parameter: fraction of edges leaving each vertex's communities
    #[arg(long, default_value_t = 0.1)]
    mixing: f64,
    /// Number of overlapping vertices
    #[arg(long, default_value_t = 0)]
    overlap_count: usize,
    /// Memberships per overlapping vertex
    #[arg(long, default_value_t = 0)]
    overlap_memberships: usize,
}

impl LfrArgs {
    fn params(&self, seed: u64) -> LfrParams {
        LfrParams {
            n: self.n,
            avg_degree: self.avg_degree,
            max_degree: self
                .max_degree
                .unwrap_or_else(|| (1.5 * self.avg_degree).round() as usize),
            degree_exponent: self.degree_exponent,
            community_exponent: self.community_exponent,
            min_community: self.min_community,
            max_community: self.max_community.unwrap_or(2 * self.min_community),
            mixing: self.mixing,
            overlap_count: self.overlap_count,
            overlap_memberships: self.overlap_memberships,
            seed,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    lfr: LfrArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path
    #[arg(long)]
    edges_out: PathBuf,
    /// Ground-truth community file output path
    #[arg(long)]
    communities_out: Option<PathBuf>,
    /// Append a JSON-lines metadata record here (stdout when omitted)
    #[arg(long)]
    meta_out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// Observed network edge list
    #[arg(long)]
    edges: PathBuf,
    /// Similarity method: cn, jaccard, aa, ra, or pa
    #[arg(long)]
    method: SimilarityMethod,
    /// Detector: none, label-propagation, greedy-modularity, or cover:<path>
    #[arg(long, default_value = "none", conflicts_with = "cover")]
    detector: String,
    /// Community file with one community of labels per line
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only the top K candidates
    #[arg(long)]
    top: Option<usize>,
    /// Prediction CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Original network edge list
    #[arg(long)]
    edges: PathBuf,
    /// Fraction of edges to remove as missing
    #[arg(long)]
    fraction: f64,
    #[arg(long)]
    method: SimilarityMethod,
    #[arg(long, default_value = "none", conflicts_with = "cover")]
    detector: String,
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// AUC mode: exact, sampled:<n>, or auto
    #[arg(long, default_value = "auto")]
    auc: String,
    /// Write the ROC curve CSV here
    #[arg(long)]
    roc_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Flat key-value config file
    #[arg(long)]
    config: PathBuf,
    /// Result CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Edge-list files to summarize
    paths: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TimingArgs {
    /// Comma-separated ascending network sizes
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[command(flatten)]
    lfr: LfrArgs,
    #[arg(long, default_value = "aa")]
    method: SimilarityMethod,
    #[arg(long, default_value = "label-propagation")]
    detector: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Predict(args) => predict(args),
        Command::Evaluate(args) => evaluate(args),
        Command::Experiment(args) => {
            let config = ExperimentConfig::from_file(&args.config)?;
            let result = run_experiment(&config)?;
            with_output(args.out.as_deref(), |out| result.write_csv(out))
        }
        Command::Stats(args) => {
            let entries = stats_report(&args.paths);
            with_output(args.out.as_deref(), |out| write_stats_csv(&entries, out))
        }
        Command::Timing(args) => {
            let base = args.lfr.params(0);
            let rows = timing_sweep(
                &base,
                &args.sizes,
                args.method,
                &CoverSource::parse(&args.detector)?,
                args.seed,
            )?;
            with_output(args.out.as_deref(), |out| write_timing_csv(&rows, out))
        }
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let params = args.lfr.params(args.seed);
    let network = lfr::generate(&params)?;
    let labels = LabelMap::numeric(network.graph.vertex_count());
    write_edge_list_file(&network.graph, &labels, &args.edges_out)?;
    if let Some(path) = &args.communities_out {
        write_cover_file(&network.ground_truth, &labels, path)?;
    }
    let record = serde_json::json!({
        "params": params,
        "achieved_mixing": network.achieved_mixing,
        "vertices": network.graph.vertex_count(),
        "edges": network.graph.edge_count(),
        "communities": network.ground_truth.community_count(),
    });
    match &args.meta_out {
        Some(path) => {
            let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(file, "{record}")?;
        }
        None => println!("{record}"),
    }
    Ok(())
}

fn predict(args: PredictArgs) -> Result<()> {
    let (graph, labels) = read_edge_list(&args.edges)?;
    let detector = match &args.cover {
        Some(path) => CoverSource::CoverFile(path.clone()),
        None => CoverSource::parse(&args.detector)?,
    };
    let cover = match &detector {
        CoverSource::None => None,
        CoverSource::LabelPropagation => {
            Some(detect_label_propagation(&graph, args.seed, 100)?)
        }
        CoverSource::GreedyModularity => Some(detect_greedy_modularity(&graph)),
        CoverSource::CoverFile(path) => {
            Some(read_cover(path, &labels, graph.vertex_count())?)
        }
        CoverSource::GroundTruth => return Err(Error::GroundTruthUnavailable),
    };
    let ranked = match &cover {
        Some(cover) => rank_community_aware(&graph, cover, args.method)?,
        None => rank_baseline(&graph, args.method),
    };
    with_output(args.out.as_deref(), |out| {
        write_predictions_csv(&ranked, &labels, args.top, out)
    })
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let (graph, labels) = read_edge_list(&args.edges)?;
    let (observed, removed) =
        graph.remove_random_edges(args.fraction, derive_seed(args.seed, 1))?;
    let detector = match &args.cover {
        Some(path) => CoverSource::CoverFile(path.clone()),
        None => CoverSource::parse(&args.detector)?,
    };
    let cover = match &detector {
        CoverSource::None => None,
        CoverSource::LabelPropagation => Some(detect_label_propagation(
            &observed,
            derive_seed(args.seed, 2),
            100,
        )?),
        CoverSource::GreedyModularity => Some(detect_greedy_modularity(&observed)),
        CoverSource::CoverFile(path) => {
            Some(read_cover(path, &labels, observed.vertex_count())?)
        }
        CoverSource::GroundTruth => return Err(Error::GroundTruthUnavailable),
    };
    let ranked = match &cover {
        Some(cover) => rank_community_aware(&observed, cover, args.method)?,
        None => rank_baseline(&observed, args.method),
    };
    let labeled = label_ranking(&ranked, &removed)?;
    let result = match AucMode::parse(&args.auc)? {
        AucMode::Exact => auc_exact(&labeled)?,
        AucMode::Sampled(samples) => {
            let mut rng = rand_chacha_rng(derive_seed(args.seed, 3));
            auc_sampled(&labeled, samples, &mut rng)?
        }
        AucMode::Auto { threshold, samples } => {
            if labeled.len() > threshold {
                let mut rng = rand_chacha_rng(derive_seed(args.seed, 3));
                auc_sampled(&labeled, samples, &mut rng)?
            } else {
                auc_exact(&labeled)?
            }
        }
    };
    if let Some(path) = &args.roc_out {
        let points = roc_points(&labeled)?;
        write_roc_csv(&points, fs::File::create(path)?)?;
    }
    println!(
        "auc={:.6} positives={} negatives={} removed={}",
        result.auc,
        result.positives,
        result.negatives,
        removed.len()
    );
    Ok(())
}

fn rand_chacha_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn with_output(path: Option<&std::path::Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            f(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}
