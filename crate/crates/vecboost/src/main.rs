//! Thin command-line front end: train, predict, evaluate, inspect.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vecboost::booster::{evaluate, render_metrics, train, MulticlassStrategy, TrainConfig};
use vecboost::dataset::{load_csv, load_libsvm, LabelColumn, LabeledDataset};
use vecboost::error::Error;
use vecboost::grower::{GrowthMode, LayerShrinkage, Pruning, TreeNode};
use vecboost::loss::HessianMode;
use vecboost::model::Ensemble;
use vecboost::solver::LambdaScale;

#[derive(Parser)]
#[command(
    name = "vecboost",
    about = "Multiclass gradient boosted trees with vector-valued leaves",
    version
)]
struct Cli {
    /// Raise log verbosity to debug.
    #[arg(long, global = true)]
    verbose: bool,
    /// Lower log verbosity to warnings.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model and write it (plus a metrics history) to disk.
    Train(TrainArgs),
    /// Write per-row scores, probabilities, and predicted labels as CSV.
    Predict(PredictArgs),
    /// Print accuracy and cross-entropy of a model on a labeled dataset.
    Evaluate(EvaluateArgs),
    /// Print model structure: trees, leaf vectors, split statistics.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Libsvm,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum HessianArg {
    Full,
    Diag,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrowthArg {
    /// Whole-tree growth: gradients fixed per tree.
    Tree,
    /// Layer-by-layer boosting: gradients recomputed per layer.
    Layer,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Vector,
    PerClass,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruningArg {
    Pre,
    Post,
}

#[derive(Clone, Copy, ValueEnum)]
enum LambdaScaleArg {
    Absolute,
    PerInstance,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShrinkageArg {
    PerLayer,
    AtFinalization,
}

#[derive(Args)]
struct DataArgs {
    /// Input format; auto picks CSV for .csv paths and LibSVM otherwise.
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    /// CSV label column: a name, a 0-based index, or "last".
    #[arg(long, default_value = "last")]
    label_column: String,
    /// Treat CSV input as headerless.
    #[arg(long)]
    csv_no_header: bool,
}

impl DataArgs {
    fn load(&self, path: &Path, num_features: Option<usize>) -> Result<LabeledDataset, Error> {
        let use_csv = match self.format {
            FormatArg::Csv => true,
            FormatArg::Libsvm => false,
            FormatArg::Auto => path
                .extension()
                .map(|e| e.eq_ignore_ascii_case("csv"))
                .unwrap_or(false),
        };
        if use_csv {
            let label_column = if self.label_column == "last" {
                LabelColumn::Last
            } else if let Ok(idx) = self.label_column.parse::<usize>() {
                LabelColumn::Index(idx)
            } else {
                LabelColumn::Name(self.label_column.clone())
            };
            let ds = load_csv(path, label_column, !self.csv_no_header)?;
            if let Some(m) = num_features {
                if ds.num_features() != m {
                    return Err(Error::Shape(format!(
                        "model expects {m} features, data has {}",
                        ds.num_features()
                    )));
                }
            }
            Ok(ds)
        } else {
            load_libsvm(path, num_features)
        }
    }
}

#[derive(Args)]
struct TrainArgs {
    /// Training data path (LibSVM or CSV).
    #[arg(long = "train", value_name = "PATH")]
    train_path: PathBuf,
    /// Optional evaluation data path.
    #[arg(long = "eval", value_name = "PATH")]
    eval_path: Option<PathBuf>,
    /// Where to write the trained model.
    #[arg(long = "model-out", value_name = "PATH")]
    model_out: PathBuf,
    /// Where to write the metrics history (default: <model-out>.metrics).
    #[arg(long = "metrics-out", value_name = "PATH")]
    metrics_out: Option<PathBuf>,

    #[arg(long, default_value_t = 100)]
    num_trees: usize,
    #[arg(long, default_value_t = 4)]
    max_depth: usize,
    #[arg(long, default_value_t = 0.3)]
    learning_rate: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Charge the L2 penalty per leaf (absolute) or per instance.
    #[arg(long, value_enum, default_value = "absolute")]
    lambda_scale: LambdaScaleArg,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "diag")]
    hessian: HessianArg,
    #[arg(long, value_enum, default_value = "tree")]
    growth: GrowthArg,
    #[arg(long, value_enum, default_value = "vector")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "pre")]
    pruning: PruningArg,
    #[arg(long, default_value = "cross_entropy")]
    loss: String,
    #[arg(long, default_value_t = 255)]
    buckets: usize,
    #[arg(long, default_value_t = 0.0)]
    min_node_weight: f64,
    #[arg(long, value_enum, default_value = "per-layer")]
    layer_shrinkage: ShrinkageArg,
    /// Instances per layer-by-layer step (defaults to the full batch).
    #[arg(long)]
    examples_per_layer: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Rounds between evaluation metric computations.
    #[arg(long, default_value_t = 1)]
    eval_every: usize,

    #[command(flatten)]
    data: DataArgs,
}

#[derive(Args)]
struct PredictArgs {
    /// Trained model path.
    #[arg(long)]
    model: PathBuf,
    /// Input data path; a label column must be present but is ignored.
    #[arg(long)]
    data: PathBuf,
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    data_args: DataArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    data: PathBuf,
    #[command(flatten)]
    data_args: DataArgs,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    model: PathBuf,
    /// Print only this tree index (default: all trees).
    #[arg(long)]
    tree: Option<usize>,
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic when output is piped
    // into head or less.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let level = if cli.verbose {
        "debug"
    } else if cli.quiet {
        "warn"
    } else {
        "info"
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Train(args) => cmd_train(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Inspect(args) => cmd_inspect(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// User-input problems exit 2; internal failures exit 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::EmptyData(_)
        | Error::Config(_)
        | Error::Shape(_)
        | Error::UnknownLoss(_)
        | Error::UnsupportedMode(_)
        | Error::ModelVersion { .. }
        | Error::ModelChecksum
        | Error::ModelFormat(_) => 2,
        Error::DegenerateLeaf(_) => 1,
    }
}

fn cmd_train(args: TrainArgs) -> Result<(), Error> {
    let config = TrainConfig {
        num_trees: args.num_trees,
        max_depth: args.max_depth,
        learning_rate: args.learning_rate,
        lambda: args.lambda,
        lambda_scale: match args.lambda_scale {
            LambdaScaleArg::Absolute => LambdaScale::Absolute,
            LambdaScaleArg::PerInstance => LambdaScale::PerInstance,
        },
        gamma: args.gamma,
        hessian_mode: match args.hessian {
            HessianArg::Full => HessianMode::Full,
            HessianArg::Diag => HessianMode::Diag,
        },
        growth_mode: match args.growth {
            GrowthArg::Tree => GrowthMode::WholeTree,
            GrowthArg::Layer => GrowthMode::LayerByLayer,
        },
        multiclass_strategy: match args.strategy {
            StrategyArg::Vector => MulticlassStrategy::Vector,
            StrategyArg::PerClass => MulticlassStrategy::TreePerClass,
        },
        pruning: match args.pruning {
            PruningArg::Pre => Pruning::Pre,
            PruningArg::Post => Pruning::Post,
        },
        loss: args.loss.clone(),
        max_buckets: args.buckets,
        min_node_weight: args.min_node_weight,
        layer_shrinkage: match args.layer_shrinkage {
            ShrinkageArg::PerLayer => LayerShrinkage::PerLayer,
            ShrinkageArg::AtFinalization => LayerShrinkage::AtFinalization,
        },
        examples_per_layer: args.examples_per_layer,
        seed: args.seed,
        threads: args.threads,
        eval_every: args.eval_every,
    };
    config.validate()?;

    let train_data = args.data.load(&args.train_path, None)?;
    let eval_data = match &args.eval_path {
        Some(p) => {
            let mut e = args.data.load(p, Some(train_data.num_features()))?;
            e.align_labels(train_data.label_names())?;
            Some(e)
        }
        None => None,
    };

    let (ensemble, history) = train(&train_data, eval_data.as_ref(), &config)?;
    ensemble.save(&args.model_out)?;
    let metrics_path = args.metrics_out.clone().unwrap_or_else(|| {
        let mut p = args.model_out.clone();
        let name = p.file_name().map(|s| s.to_string_lossy().to_string());
        p.set_file_name(format!("{}.metrics", name.unwrap_or_else(|| "model".into())));
        p
    });
    std::fs::write(&metrics_path, render_metrics(&history))
        .map_err(|e| Error::io(metrics_path.display().to_string(), e))?;

    let last = history.last().expect("at least one round");
    let eval_summary = match (last.eval_accuracy, last.eval_cross_entropy) {
        (Some(a), Some(x)) => format!(", eval accuracy {a:.4}, eval cross-entropy {x:.4}"),
        _ => String::new(),
    };
    println!(
        "trained {} trees: train accuracy {:.4}, train cross-entropy {:.4}{eval_summary}",
        ensemble.num_trees(),
        last.train_accuracy,
        last.train_cross_entropy
    );
    println!(
        "model written to {}, metrics to {}",
        args.model_out.display(),
        metrics_path.display()
    );
    Ok(())
}

fn cmd_predict(args: PredictArgs) -> Result<(), Error> {
    let ensemble = Ensemble::load(&args.model)?;
    let data = match args
        .data_args
        .load(&args.data, Some(ensemble.num_features()))
    {
        Ok(d) => Some(d),
        Err(Error::EmptyData(_)) => None,
        Err(e) => return Err(e),
    };

    let mut writer: csv::Writer<Box<dyn std::io::Write>> = match &args.output {
        Some(p) => csv::Writer::from_writer(Box::new(
            std::fs::File::create(p).map_err(|e| Error::io(p.display().to_string(), e))?,
        )),
        None => csv::Writer::from_writer(Box::new(std::io::stdout())),
    };
    let mut header = Vec::new();
    for name in ensemble.label_names() {
        header.push(format!("score_{name}"));
    }
    for name in ensemble.label_names() {
        header.push(format!("proba_{name}"));
    }
    header.push("predicted".into());
    writer
        .write_record(&header)
        .map_err(|e| Error::ModelFormat(format!("write failed: {e}")))?;

    if let Some(data) = data {
        for i in 0..data.num_rows() {
            let scores = ensemble.predict_scores(data.row(i))?;
            let probs = vecboost::loss::softmax(&scores);
            let class = ensemble.predict_class(data.row(i))?;
            let mut record: Vec<String> = Vec::with_capacity(2 * scores.len() + 1);
            record.extend(scores.iter().map(|s| s.to_string()));
            record.extend(probs.iter().map(|p| p.to_string()));
            record.push(ensemble.label_name(class).to_string());
            writer
                .write_record(&record)
                .map_err(|e| Error::ModelFormat(format!("write failed: {e}")))?;
        }
    }
    writer
        .flush()
        .map_err(|e| Error::ModelFormat(format!("write failed: {e}")))?;
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), Error> {
    let ensemble = Ensemble::load(&args.model)?;
    let mut data = args
        .data_args
        .load(&args.data, Some(ensemble.num_features()))?;
    data.align_labels(ensemble.label_names())?;
    let metrics = evaluate(&ensemble, &data)?;
    println!(
        "accuracy {:.6} cross_entropy {:.6} ({} rows, {} trees)",
        metrics.accuracy,
        metrics.cross_entropy,
        data.num_rows(),
        ensemble.num_trees()
    );
    Ok(())
}

fn cmd_inspect(args: InspectArgs) -> Result<(), Error> {
    let ensemble = Ensemble::load(&args.model)?;
    println!("model: {}", args.model.display());
    println!(
        "classes: {} ({})",
        ensemble.num_classes(),
        ensemble.label_names().join(", ")
    );
    println!("features: {}", ensemble.num_features());
    println!("trees: {}", ensemble.num_trees());
    let config = ensemble.config();
    println!(
        "trained with: loss={} hessian={} depth={} learning_rate={} lambda={} gamma={}",
        config.loss,
        config.hessian_mode,
        config.max_depth,
        config.learning_rate,
        config.lambda,
        config.gamma
    );

    let mut split_counts = vec![0usize; ensemble.num_features()];
    let mut depth_histogram = std::collections::BTreeMap::new();
    for tree in ensemble.trees() {
        count_splits(tree, &mut split_counts);
        *depth_histogram.entry(tree.depth()).or_insert(0usize) += 1;
    }
    println!("depth histogram (depth: trees):");
    for (depth, count) in &depth_histogram {
        println!("  {depth}: {count}");
    }
    println!("split counts by feature (total {}):", split_counts.iter().sum::<usize>());
    for (f, count) in split_counts.iter().enumerate() {
        if *count > 0 {
            println!("  feature {f}: {count}");
        }
    }

    match args.tree {
        Some(t) => {
            let tree = ensemble.trees().get(t).ok_or_else(|| {
                Error::Config(format!("tree {t} out of range, model has {}", ensemble.num_trees()))
            })?;
            println!("tree {t}:");
            print_tree(tree, 1);
        }
        None => {
            for (t, tree) in ensemble.trees().iter().enumerate() {
                println!("tree {t}:");
                print_tree(tree, 1);
            }
        }
    }
    Ok(())
}

fn count_splits(node: &TreeNode, counts: &mut [usize]) {
    if let TreeNode::Split {
        feature, left, right, ..
    } = node
    {
        counts[*feature] += 1;
        count_splits(left, counts);
        count_splits(right, counts);
    }
}

fn print_tree(node: &TreeNode, indent: usize) {
    let pad = "  ".repeat(indent);
    match node {
        TreeNode::Leaf { weight } => {
            let ws: Vec<String> = weight.iter().map(|w| format!("{w:.6}")).collect();
            println!("{pad}leaf [{}]", ws.join(", "));
        }
        TreeNode::Split {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            println!("{pad}feature {feature} <= {threshold}");
            print_tree(left, indent + 1);
            print_tree(right, indent + 1);
        }
    }
}
