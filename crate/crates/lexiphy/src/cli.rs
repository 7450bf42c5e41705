//! Command-line interface. [`run`] takes the arguments after the program
//! name so the binary, the `replay` subcommand and tests share one path.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexiphy_core::cognate::{BipSkipParams, Method, MethodParams, Partitioner};
use lexiphy_core::eval::{bcubed, gqd};
use lexiphy_core::ingest::SoundClassModel;
use lexiphy_core::mcmc::{ChainConfig, ChainResult};
use lexiphy_core::phylo::{build_matrix, MatrixOptions, SubstParams};
use lexiphy_core::sim::{simulate, SimConfig};

use crate::error::{Error, Result};
use crate::formats::{self, Table};
use crate::manifest::RunManifest;
use crate::pipeline::{detect_parallel, run_chains};

#[derive(Debug, Parser)]
#[command(
    name = "lexiphy",
    version,
    about = "Cognate detection and Bayesian lexical phylogenetics"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Prefix for default output names and the run manifest.
    #[arg(long, global = true, default_value = "lexiphy")]
    pub out_prefix: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster the forms of each concept into cognate sets.
    Detect(DetectArgs),
    /// Build a binary language-by-cognate-set matrix.
    Matrix(MatrixArgs),
    /// Annealed MCMC tree inference on a character matrix.
    Infer(InferArgs),
    /// B-Cubed precision, recall and F-score of a predicted clustering.
    Evaluate(EvaluateArgs),
    /// Generalized quartet distance between two trees.
    Gqd(GqdArgs),
    /// Simulate a random tree and a matrix evolved along it.
    Simulate(SimulateArgs),
    /// Rerun a command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionerArg {
    Components,
    Labelprop,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// `TOKEN<TAB>CLASS` table replacing the built-in sound classes.
    #[arg(long)]
    pub sound_model: Option<PathBuf>,
}

impl ModelArgs {
    fn load(&self, manifest: &mut RunManifest) -> Result<SoundClassModel> {
        match &self.sound_model {
            Some(p) => {
                manifest.input(p);
                formats::read_sound_model(p)
            }
            None => Ok(SoundClassModel::builtin()),
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub wordlist: PathBuf,
    /// ccm, editdist, sca or bipskip.
    #[arg(long, default_value = "ccm")]
    pub method: String,
    /// Distance threshold for the UPGMA methods.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// BipSkip pruning fraction.
    #[arg(long, default_value_t = 0.2)]
    pub prune: f64,
    /// BipSkip skip-gram length.
    #[arg(long, default_value_t = 4)]
    pub gram: usize,
    #[arg(long, value_enum, default_value_t = PartitionerArg::Components)]
    pub partitioner: PartitionerArg,
    /// `CLASS_A<TAB>CLASS_B<TAB>SCORE` pairs for SCA.
    #[arg(long)]
    pub scoring: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output TSV (default `{prefix}.detect.tsv`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Wordlist with a cluster column.
    #[arg(long)]
    pub wordlist: PathBuf,
    #[arg(long, default_value = "PREDCOGID")]
    pub column: String,
    /// Drop cognate sets present in every language.
    #[arg(long)]
    pub drop_all_present: bool,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output TSV (default `{prefix}.matrix.tsv`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Initial temperature; a comma list runs one chain per value.
    #[arg(long, value_delimiter = ',', default_value = "50")]
    pub t0: Vec<f64>,
    /// Geometric cooling factor.
    #[arg(long, default_value_t = 0.999)]
    pub gamma: f64,
    #[arg(long, default_value_t = 50_000)]
    pub max_iters: u64,
    /// Stop after this many iterations at T = 1 without a new best; 0 disables.
    #[arg(long, default_value_t = 2_000)]
    pub stop_window: u64,
    /// Rate of the exponential branch-length prior.
    #[arg(long, default_value_t = 10.0)]
    pub branch_rate: f64,
    /// Trace and consensus thinning.
    #[arg(long, default_value_t = 10)]
    pub sample_every: u64,
    /// Gold tree; prints the GQD of each MAP tree.
    #[arg(long)]
    pub gold: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long, default_value = "PREDCOGID")]
    pub pred_column: String,
    #[arg(long, default_value = "COGID")]
    pub gold_column: String,
    /// Row label (default: the prediction file stem).
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct GqdArgs {
    #[arg(long)]
    pub inferred: PathBuf,
    #[arg(long)]
    pub gold: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 6)]
    pub languages: usize,
    #[arg(long, default_value_t = 200)]
    pub columns: usize,
    #[arg(long, default_value_t = 0.3)]
    pub pi1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 10.0)]
    pub branch_rate: f64,
    /// Default `{prefix}.matrix.tsv`.
    #[arg(long)]
    pub out_matrix: Option<PathBuf>,
    /// Default `{prefix}.gold.nwk`.
    #[arg(long)]
    pub out_tree: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Fail unless every output matches the hash recorded in the manifest.
    #[arg(long)]
    pub check: bool,
}

/// Parse `args` (without the program name) and run the command, writing
/// reports to `out`.
pub fn run(args: &[String], out: &mut dyn Write) -> Result<()> {
    let argv = std::iter::once("lexiphy".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Usage(e.to_string()))?;
    execute(cli, args, out)
}

fn default_path(given: &Option<PathBuf>, prefix: &str, suffix: &str) -> PathBuf {
    given
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{prefix}.{suffix}")))
}

fn w(out: &mut dyn Write, text: std::fmt::Arguments) -> Result<()> {
    out.write_fmt(text).map_err(|e| Error::io("<stdout>", e))
}

pub fn execute(cli: Cli, args: &[String], out: &mut dyn Write) -> Result<()> {
    if cli.jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let name = match &cli.command {
        Command::Detect(_) => "detect",
        Command::Matrix(_) => "matrix",
        Command::Infer(_) => "infer",
        Command::Evaluate(_) => "evaluate",
        Command::Gqd(_) => "gqd",
        Command::Simulate(_) => "simulate",
        Command::Replay(r) => return replay(r, out),
    };
    let mut manifest = RunManifest::new(name, args, cli.seed);
    manifest.param("jobs", cli.jobs).param("out_prefix", &cli.out_prefix);
    let prefix = cli.out_prefix.as_str();
    match &cli.command {
        Command::Detect(a) => detect(a, &cli, &mut manifest, out)?,
        Command::Matrix(a) => matrix(a, prefix, &mut manifest)?,
        Command::Infer(a) => infer(a, &cli, &mut manifest, out)?,
        Command::Evaluate(a) => evaluate(a, &mut manifest, out)?,
        Command::Gqd(a) => {
            manifest.input(&a.inferred).input(&a.gold);
            let r = gqd(&formats::read_tree(&a.inferred)?, &formats::read_tree(&a.gold)?)?;
            w(
                out,
                format_args!(
                    "quartets\t{}\ngold_resolved\t{}\nshared\t{}\ngqd\t{}\n",
                    r.total_quartets, r.gold_resolved, r.shared, r.gqd
                ),
            )?;
        }
        Command::Simulate(a) => sim(a, &cli, &mut manifest)?,
        Command::Replay(_) => unreachable!(),
    }
    manifest.wall_time_secs = start.elapsed().as_secs_f64();
    manifest.write(&RunManifest::path_for(prefix, name))
}

fn detect(a: &DetectArgs, cli: &Cli, manifest: &mut RunManifest, out: &mut dyn Write) -> Result<()> {
    let partitioner = match a.partitioner {
        PartitionerArg::Components => Partitioner::Components,
        PartitionerArg::Labelprop => Partitioner::LabelPropagation,
    };
    let scheme = match &a.scoring {
        Some(p) => {
            manifest.input(p);
            Some(formats::read_scoring(p)?)
        }
        None => None,
    };
    let method = Method::from_name(
        &a.method,
        MethodParams {
            threshold: a.threshold,
            scheme,
            bipskip: BipSkipParams {
                gram_length: a.gram,
                prune: a.prune,
                partitioner,
            },
        },
    )?;
    manifest.param("method", method.name());
    match &method {
        Method::Ccm { threshold } | Method::EditDistance { threshold } | Method::Sca { threshold, .. } => {
            manifest.param("threshold", threshold);
        }
        Method::BipSkip(p) => {
            manifest
                .param("gram", p.gram_length)
                .param("prune", p.prune)
                .param("partitioner", format!("{:?}", p.partitioner));
        }
    }
    let model = a.model.load(manifest)?;
    manifest.input(&a.wordlist);
    let table = Table::read(&a.wordlist)?;
    let wordlist = formats::parse_wordlist(&table, &model)?;

    let start = Instant::now();
    let pred = detect_parallel(&wordlist, &method, cli.seed, cli.jobs)?;
    let elapsed = start.elapsed().as_secs_f64();

    let path = default_path(&a.out, &cli.out_prefix, "detect.tsv");
    formats::write_text(&path, &formats::write_with_predictions(&table, &pred)?)?;
    manifest.output(&path)?;

    w(out, format_args!("Method: {}\n", method.name()))?;
    w(
        out,
        format_args!(
            "Forms: {}  Concepts: {}  Clusters: {}\n",
            wordlist.len(),
            wordlist.concepts().count(),
            pred.num_clusters()
        ),
    )?;
    if wordlist.forms().iter().all(|f| f.gold_cogid.is_some()) {
        let gold = formats::partition_from_table(&table, "COGID")?;
        let s = bcubed(&pred, &gold)?;
        w(
            out,
            format_args!(
                "Precision: {:.4}  Recall: {:.4}  F-score: {:.4}\n",
                s.precision, s.recall, s.fscore
            ),
        )?;
    }
    w(out, format_args!("Running Time: {elapsed:.2}s\n"))
}

fn matrix(a: &MatrixArgs, prefix: &str, manifest: &mut RunManifest) -> Result<()> {
    let model = a.model.load(manifest)?;
    manifest.input(&a.wordlist);
    manifest
        .param("column", &a.column)
        .param("drop_all_present", a.drop_all_present);
    let table = Table::read(&a.wordlist)?;
    let wordlist = formats::parse_wordlist(&table, &model)?;
    let partition = formats::partition_from_table(&table, &a.column)?;
    let m = build_matrix(
        &partition,
        &wordlist,
        MatrixOptions {
            drop_all_present: a.drop_all_present,
        },
    )?;
    let path = default_path(&a.out, prefix, "matrix.tsv");
    formats::write_matrix(&path, &m)?;
    manifest.output(&path)?;
    Ok(())
}

fn chain_prefix(prefix: &str, t0s: &[f64], t0: f64) -> String {
    if t0s.len() == 1 {
        prefix.to_string()
    } else {
        format!("{prefix}.t0_{t0}")
    }
}

fn infer(a: &InferArgs, cli: &Cli, manifest: &mut RunManifest, out: &mut dyn Write) -> Result<()> {
    if a.t0.is_empty() {
        return Err(Error::Usage("--t0 needs at least one value".into()));
    }
    let configs: Vec<ChainConfig> =
        a.t0.iter()
            .map(|&t0| ChainConfig {
                t0,
                cooling: a.gamma,
                max_iters: a.max_iters,
                stop_window: (a.stop_window > 0).then_some(a.stop_window),
                seed: cli.seed,
                branch_rate: a.branch_rate,
                sample_every: a.sample_every,
                ..ChainConfig::default()
            })
            .collect();
    for c in &configs {
        c.validate()?;
    }
    manifest.input(&a.matrix);
    let m = formats::read_matrix(&a.matrix)?;
    let gold = match &a.gold {
        Some(p) => {
            manifest.input(p);
            Some(formats::read_tree(p)?)
        }
        None => None,
    };
    manifest
        .param("t0", a.t0.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
        .param("gamma", a.gamma)
        .param("max_iters", a.max_iters)
        .param("stop_window", a.stop_window)
        .param("branch_rate", a.branch_rate)
        .param("sample_every", a.sample_every);

    let start = Instant::now();
    let results = run_chains(&m, &configs, cli.jobs);
    let elapsed = start.elapsed().as_secs_f64();

    w(out, format_args!("T0\tIterations\tAccepted\tMAP_logpost\tpi1\tmu"))?;
    if gold.is_some() {
        w(out, format_args!("\tGQD"))?;
    }
    w(out, format_args!("\n"))?;
    for (&t0, result) in a.t0.iter().zip(results) {
        let r: ChainResult = result?;
        let p = chain_prefix(&cli.out_prefix, &a.t0, t0);
        let map_path = PathBuf::from(format!("{p}.map.nwk"));
        formats::write_tree(&map_path, &r.map_tree, false)?;
        manifest.output(&map_path)?;
        if let Some(c) = &r.consensus {
            let cpath = PathBuf::from(format!("{p}.consensus.nwk"));
            formats::write_tree(&cpath, c, true)?;
            manifest.output(&cpath)?;
        }
        let tpath = PathBuf::from(format!("{p}.trace.csv"));
        formats::write_trace(&tpath, &r.trace)?;
        manifest.output(&tpath)?;
        let SubstParams { pi1, mu } = r.map_params;
        w(
            out,
            format_args!(
                "{t0}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}",
                r.iterations, r.accepted, r.map_log_posterior, pi1, mu
            ),
        )?;
        if let Some(g) = &gold {
            w(out, format_args!("\t{:.4}", gqd(&r.map_tree, g)?.gqd))?;
        }
        w(out, format_args!("\n"))?;
    }
    w(out, format_args!("Running Time: {elapsed:.2}s\n"))
}

fn evaluate(a: &EvaluateArgs, manifest: &mut RunManifest, out: &mut dyn Write) -> Result<()> {
    manifest.input(&a.pred).input(&a.gold);
    manifest
        .param("pred_column", &a.pred_column)
        .param("gold_column", &a.gold_column);
    let pred = formats::read_partition(&a.pred, &a.pred_column)?;
    let gold = formats::read_partition(&a.gold, &a.gold_column)?;
    let s = bcubed(&pred, &gold)?;
    let name = a.name.clone().unwrap_or_else(|| {
        Path::new(&a.pred)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    w(out, format_args!("Dataset\tPrecision\tRecall\tF-score\n"))?;
    w(
        out,
        format_args!("{name}\t{:.4}\t{:.4}\t{:.4}\n", s.precision, s.recall, s.fscore),
    )
}

fn sim(a: &SimulateArgs, cli: &Cli, manifest: &mut RunManifest) -> Result<()> {
    let cfg = SimConfig {
        n_languages: a.languages,
        n_columns: a.columns,
        params: SubstParams { pi1: a.pi1, mu: a.mu },
        branch_rate: a.branch_rate,
        seed: cli.seed,
    };
    cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
    manifest
        .param("languages", a.languages)
        .param("columns", a.columns)
        .param("pi1", a.pi1)
        .param("mu", a.mu)
        .param("branch_rate", a.branch_rate);
    let (tree, m) = simulate(&cfg)?;
    let mpath = default_path(&a.out_matrix, &cli.out_prefix, "matrix.tsv");
    let tpath = default_path(&a.out_tree, &cli.out_prefix, "gold.nwk");
    formats::write_matrix(&mpath, &m)?;
    formats::write_tree(&tpath, &tree, false)?;
    manifest.output(&mpath)?.output(&tpath)?;
    Ok(())
}

fn replay(a: &ReplayArgs, out: &mut dyn Write) -> Result<()> {
    let recorded = RunManifest::read(&a.manifest)?;
    if recorded.subcommand == "replay" || recorded.args.first().map(String::as_str) == Some("replay") {
        return Err(Error::Usage("cannot replay a replay".into()));
    }
    run(&recorded.args, out)?;
    if a.check {
        let changed = recorded.changed_outputs()?;
        if !changed.is_empty() {
            let list: Vec<String> = changed.iter().map(|p| p.display().to_string()).collect();
            return Err(Error::Format {
                path: a.manifest.clone(),
                message: format!("replay changed {}", list.join(", ")),
            });
        }
        w(
            out,
            format_args!("replay reproduced {} output(s)\n", recorded.outputs.len()),
        )?;
    }
    Ok(())
}
