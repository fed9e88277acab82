//! `smsfraud`: experiment runner for the SMS fraud classification lab.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use smsfraud_cli::commands;
use smsfraud_cli::config::RunConfig;
use smsfraud_cli::runner::CellFilter;
use smsfraud_cli::CliError;

#[derive(Parser)]
#[command(
    name = "smsfraud",
    about = "SMS fraud classification experiments: stats, augmentation, training, tuning, \
             the full evaluation matrix and inference",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// Run-config JSON file
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's output_dir)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Cell selector: TAG[/MODEL[/VARIANT]], e.g. D-CHI/rf/tuned
    #[arg(long)]
    only: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Token statistics for every configured dataset
    Stats(ConfigArgs),
    /// Grow a dataset with label-preserving augmentation
    Augment(ConfigArgs),
    /// Write stratified train/test splits
    Split(ConfigArgs),
    /// Train models on full datasets and save bundles
    Train(ConfigArgs),
    /// Grid-search hyperparameters on training splits
    Tune(ConfigArgs),
    /// Run the dataset x model x variant evaluation matrix
    RunMatrix(ConfigArgs),
    /// Compare Raw vs Full tokenization on identical cells
    Ablation(ConfigArgs),
    /// Classify texts with a saved model bundle
    Classify {
        /// Saved model bundle
        #[arg(long)]
        model: PathBuf,
        /// Classify a single text
        #[arg(long, conflicts_with = "input")]
        text: Option<String>,
        /// Classify each line of a file
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output as JSON instead of tab-separated text
        #[arg(long)]
        json: bool,
    },
}

fn load_config(args: &ConfigArgs) -> Result<(RunConfig, CellFilter, PathBuf), CliError> {
    let mut config = RunConfig::read_file(&args.config)?;
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    let out_dir = args.out.clone().unwrap_or_else(|| config.output_dir.clone());
    let filter = match &args.only {
        Some(selector) => CellFilter::parse(selector)?,
        None => CellFilter::default(),
    };
    Ok((config, filter, out_dir))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats(args) => {
            let (config, _, out_dir) = load_config(&args)?;
            let table = commands::cmd_stats(&config, &out_dir)?;
            print!("{table}");
        }
        Command::Augment(args) => {
            let (config, _, out_dir) = load_config(&args)?;
            let path = commands::cmd_augment(&config, &out_dir)?;
            println!("augmented dataset written to {}", path.display());
        }
        Command::Split(args) => {
            let (config, _, out_dir) = load_config(&args)?;
            for path in commands::cmd_split(&config, &out_dir)? {
                println!("{}", path.display());
            }
        }
        Command::Train(args) => {
            let (config, filter, out_dir) = load_config(&args)?;
            for path in commands::cmd_train(&config, &filter, &out_dir)? {
                println!("{}", path.display());
            }
        }
        Command::Tune(args) => {
            let (config, filter, out_dir) = load_config(&args)?;
            for (tag, model, result) in commands::cmd_tune(&config, &filter, &out_dir)? {
                println!(
                    "{tag}/{}: best CV accuracy {:.4} with {}",
                    model.short_name(),
                    result.best_score,
                    serde_json::to_string(&result.best_params).unwrap_or_default()
                );
            }
        }
        Command::RunMatrix(args) => {
            let (config, filter, out_dir) = load_config(&args)?;
            let results = commands::cmd_run_matrix(&config, &filter, &out_dir)?;
            print!("{}", smsfraud_cli::tables::summary_text(&results));
            println!("reports written to {}", out_dir.display());
        }
        Command::Ablation(args) => {
            let (config, filter, out_dir) = load_config(&args)?;
            let table = commands::cmd_ablation(&config, &filter, &out_dir)?;
            print!("{table}");
        }
        Command::Classify {
            model,
            text,
            input,
            json,
        } => {
            let texts: Vec<String> = match (text, input) {
                (Some(t), None) => vec![t],
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| {
                        CliError::usage(format!("cannot read {}: {e}", path.display()))
                    })?
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(String::from)
                    .collect(),
                (None, None) => {
                    return Err(CliError::usage("classify needs --text or --input"))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let classified = commands::cmd_classify(&model, texts)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&classified).expect("serializable output")
                );
            } else {
                for c in &classified {
                    println!("{}\t{:.6}\t{}", c.label, c.score, c.text);
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("{error}");
        std::process::exit(error.exit_code());
    }
}
