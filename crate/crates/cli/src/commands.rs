//! Implementations of the CLI subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use smsfraud_core::augment::{augment_dataset, AugmentError, AugmentationPlan, Lexicons};
use smsfraud_core::classifiers::ClassifierKind;
use smsfraud_core::corpus::{self, compute_stats, write_csv, DatasetStats, Label};
use smsfraud_core::derive_seed;
use smsfraud_core::textproc::{fit_tfidf, transform_all};
use smsfraud_core::tuning::{grid_search, CvConfig, Scoring, TuningResult};

use crate::bundle::{save_model, Fingerprint, ModelBundle};
use crate::config::{build_tokenizer, RunConfig};
use crate::runner::{
    self, cell_specs, config_hash, prepare_dataset, run_ablation, run_matrix, CellFilter,
    MatrixResults,
};
use crate::tables;
use crate::CliError;

fn write_text(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::data(format!("creating {}: {e}", parent.display())))?;
    }
    std::fs::write(path, content)
        .map_err(|e| CliError::data(format!("writing {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::data(format!("serializing {}: {e}", path.display())))?;
    write_text(path, &(json + "\n"))
}

/// `stats`: token statistics per configured dataset, text and CSV.
pub fn cmd_stats(config: &RunConfig, out_dir: &Path) -> Result<String, CliError> {
    let datasets = config.load_datasets()?;
    // corpus-derived stop words need a training split, which stats does
    // not have; the file and builtin parts still apply
    let mut spec = config.tokenizer.clone();
    spec.stop_words.corpus_derived = None;
    let tokenizer = build_tokenizer(&spec, None)?;
    let stats: Vec<DatasetStats> = config
        .datasets
        .iter()
        .map(|ds| compute_stats(&datasets[&ds.tag], &tokenizer))
        .collect();
    let text = tables::stats_text(&stats);
    write_text(&out_dir.join("stats.txt"), &text)?;
    write_text(&out_dir.join("stats.csv"), &tables::stats_csv(&stats))?;
    Ok(text)
}

fn write_matrix_outputs(
    results: &MatrixResults,
    out_dir: &Path,
    log: &mut String,
) -> Result<(), CliError> {
    for cell in &results.cells {
        let dir = out_dir.join(&cell.dataset_tag);
        let stem = format!(
            "{}_{}",
            cell.spec.model.short_name(),
            cell.spec.variant_name()
        );
        match &cell.report {
            Ok(report) => write_json(&dir.join(format!("{stem}.json")), report)?,
            Err(message) => {
                write_text(&dir.join(format!("{stem}.failed.txt")), message)?;
                log.push_str(&format!(
                    "cell {}/{} failed: {message}\n",
                    cell.dataset_tag, stem
                ));
            }
        }
        if let Some(tuning) = &cell.tuning {
            write_json(
                &dir.join(format!("{}_tuning.json", cell.spec.model.short_name())),
                tuning,
            )?;
        }
    }
    write_text(&out_dir.join("summary.txt"), &tables::summary_text(results))?;
    write_text(&out_dir.join("summary.csv"), &tables::summary_csv(results))?;
    write_text(&out_dir.join("rates.txt"), &tables::rates_text(results))?;
    write_text(&out_dir.join("rates.csv"), &tables::rates_csv(results))?;
    write_text(
        &out_dir.join("movements.txt"),
        &tables::class_balance_movements(results),
    )?;
    Ok(())
}

/// `run-matrix`: the dataset x model x variant experiment grid.
pub fn cmd_run_matrix(
    config: &RunConfig,
    filter: &CellFilter,
    out_dir: &Path,
) -> Result<MatrixResults, CliError> {
    let started = Instant::now();
    let results = run_matrix(config, &config.tokenizer, filter)?;
    let mut log = String::new();
    write_matrix_outputs(&results, out_dir, &mut log)?;
    // wall-clock details stay in the sidecar log so everything else is
    // byte-reproducible
    log.push_str(&format!(
        "run-matrix finished in {:.1?} ({} cells, {} failed)\n",
        started.elapsed(),
        results.cells.len(),
        results.failed_cells()
    ));
    write_text(&out_dir.join("run_log.txt"), &log)?;
    if results.failed_cells() > 0 {
        return Err(CliError::partial(format!(
            "{} of {} cells failed; see {}",
            results.failed_cells(),
            results.cells.len(),
            out_dir.join("run_log.txt").display()
        )));
    }
    Ok(results)
}

/// `ablation`: identical cells under the Raw and Full tokenizer arms.
pub fn cmd_ablation(
    config: &RunConfig,
    filter: &CellFilter,
    out_dir: &Path,
) -> Result<String, CliError> {
    let started = Instant::now();
    let results = run_ablation(config, filter)?;
    let mut log = String::new();
    write_matrix_outputs(&results.raw, &out_dir.join("raw"), &mut log)?;
    write_matrix_outputs(&results.full, &out_dir.join("full"), &mut log)?;
    let table = tables::ablation_text(&results);
    write_text(&out_dir.join("ablation.txt"), &table)?;
    log.push_str(&format!("ablation finished in {:.1?}\n", started.elapsed()));
    write_text(&out_dir.join("run_log.txt"), &log)?;
    let failed = results.raw.failed_cells() + results.full.failed_cells();
    if failed > 0 {
        return Err(CliError::partial(format!("{failed} ablation cells failed")));
    }
    Ok(table)
}

/// `augment`: grows the configured dataset to the target size and writes
/// the canonical CSV. On an unreachable target the partial dataset is
/// still written before the error surfaces.
pub fn cmd_augment(config: &RunConfig, out_dir: &Path) -> Result<PathBuf, CliError> {
    let spec = config
        .augmentation
        .as_ref()
        .ok_or_else(|| CliError::usage("config has no augmentation section"))?;
    let map = spec.column_map.clone().unwrap_or_default();
    let dataset = corpus::load_dataset(&spec.dataset, &spec.tag, &map)
        .map_err(|e| CliError::data(format!("loading {:?}: {e}", spec.tag)))?;
    let lexicons = Lexicons::read_file(&spec.lexicon)
        .map_err(|e| CliError::data(format!("lexicon {}: {e}", spec.lexicon.display())))?;
    let plan = AugmentationPlan {
        transformations: spec.transformations.clone(),
        max_variants_per_record: spec.max_variants_per_record,
        seed: spec
            .seed
            .unwrap_or_else(|| derive_seed(config.master_seed, &[&spec.tag, "augment"])),
    };
    let out_path = out_dir.join(format!("augmented_{}.csv", spec.tag));
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::data(format!("creating {}: {e}", out_dir.display())))?;
    match augment_dataset(&dataset, &plan, &lexicons, spec.target_size) {
        Ok(augmented) => {
            write_csv(&augmented, &out_path)
                .map_err(|e| CliError::data(format!("writing {}: {e}", out_path.display())))?;
            Ok(out_path)
        }
        Err(AugmentError::CannotReachTarget { target, partial }) => {
            write_csv(&partial, &out_path)
                .map_err(|e| CliError::data(format!("writing {}: {e}", out_path.display())))?;
            Err(CliError::data(format!(
                "could not reach target {target} (got {}); partial dataset at {}",
                partial.records.len(),
                out_path.display()
            )))
        }
        Err(e) => Err(CliError::data(format!("augmenting {:?}: {e}", spec.tag))),
    }
}

/// `split`: writes the stratified train/test CSVs per matrix dataset.
pub fn cmd_split(config: &RunConfig, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let datasets = config.load_datasets()?;
    let mut written = Vec::new();
    for ds_spec in &config.datasets {
        if ds_spec.stats_only {
            continue;
        }
        let prepared = prepare_dataset(config, &datasets[&ds_spec.tag])?;
        std::fs::create_dir_all(out_dir)
            .map_err(|e| CliError::data(format!("creating {}: {e}", out_dir.display())))?;
        for (part, ds) in [("train", &prepared.train), ("test", &prepared.test)] {
            let path = out_dir.join(format!("{}_{part}.csv", ds_spec.tag));
            write_csv(ds, &path)
                .map_err(|e| CliError::data(format!("writing {}: {e}", path.display())))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// `tune`: grid search per tunable model on each dataset's training
/// split; writes the full trial logs.
pub fn cmd_tune(
    config: &RunConfig,
    filter: &CellFilter,
    out_dir: &Path,
) -> Result<Vec<(String, ClassifierKind, TuningResult)>, CliError> {
    let datasets = config.load_datasets()?;
    let mut outcomes = Vec::new();
    for ds_spec in &config.datasets {
        if ds_spec.stats_only {
            continue;
        }
        let prepared = prepare_dataset(config, &datasets[&ds_spec.tag])?;
        let tokenizer = build_tokenizer(&config.tokenizer, Some(&prepared.train))?;
        let train_texts: Vec<String> =
            prepared.train.records.iter().map(|r| r.text.clone()).collect();
        let train_y = prepared.train.labels();
        for spec in cell_specs(config).into_iter().filter(|s| s.tuned) {
            if !filter.matches(&ds_spec.tag, &spec) {
                continue;
            }
            let cv = CvConfig {
                k: config.cv.k,
                seed: config.cv_seed(&ds_spec.tag, spec.model.short_name()),
                scoring: Scoring::Accuracy,
            };
            let grid = runner::grid_for(config, spec.model);
            let result = grid_search(&train_texts, &train_y, &tokenizer, &grid, &cv)
                .map_err(|e| CliError::data(format!("tuning {}: {e}", ds_spec.tag)))?;
            let path = out_dir
                .join(&ds_spec.tag)
                .join(format!("{}_tuning.json", spec.model.short_name()));
            write_json(&path, &result)?;
            outcomes.push((ds_spec.tag.clone(), spec.model, result));
        }
    }
    if outcomes.is_empty() {
        return Err(CliError::usage("no tunable cells match the selector"));
    }
    Ok(outcomes)
}

/// `train`: fits models on the full dataset (deployment mode) and saves
/// them as versioned bundles. Tuned variants grid-search on the full
/// dataset first.
pub fn cmd_train(
    config: &RunConfig,
    filter: &CellFilter,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    let datasets = config.load_datasets()?;
    let mut written = Vec::new();
    for ds_spec in &config.datasets {
        if ds_spec.stats_only {
            continue;
        }
        let dataset = &datasets[&ds_spec.tag];
        let tokenizer = build_tokenizer(&config.tokenizer, Some(dataset))?;
        let texts: Vec<String> = dataset.records.iter().map(|r| r.text.clone()).collect();
        let y = dataset.labels();
        for spec in cell_specs(config) {
            if !filter.matches(&ds_spec.tag, &spec) {
                continue;
            }
            let cell_seed = derive_seed(
                config.master_seed,
                &[&ds_spec.tag, spec.model.short_name(), spec.variant_name()],
            );
            let params = if spec.tuned {
                let cv = CvConfig {
                    k: config.cv.k,
                    seed: config.cv_seed(&ds_spec.tag, spec.model.short_name()),
                    scoring: Scoring::Accuracy,
                };
                let grid = runner::grid_for(config, spec.model);
                let tuning = grid_search(&texts, &y, &tokenizer, &grid, &cv)
                    .map_err(|e| CliError::data(format!("tuning {}: {e}", ds_spec.tag)))?;
                runner::tuned_params(&tuning.best_params, cell_seed)
            } else {
                runner::baseline_params(config, spec.model, cell_seed)
            };
            let tfidf = fit_tfidf(&texts, &tokenizer)
                .map_err(|e| CliError::data(format!("featurizing {}: {e}", ds_spec.tag)))?;
            let x = transform_all(&tfidf, &texts);
            let model = runner::train_from_params(&params, &x, &y)
                .map_err(|e| CliError::data(format!("training {}: {e}", ds_spec.tag)))?;
            let bundle = ModelBundle::new(
                tfidf,
                model,
                Fingerprint {
                    dataset_tag: ds_spec.tag.clone(),
                    seed: cell_seed,
                    config_hash: config_hash(&params),
                },
            );
            let path = out_dir.join(&ds_spec.tag).join(format!(
                "{}_{}.bundle.json",
                spec.model.short_name(),
                spec.variant_name()
            ));
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)
                    .map_err(|e| CliError::data(format!("creating {}: {e}", parent.display())))?;
            }
            save_model(&bundle, &path)
                .map_err(|e| CliError::data(format!("saving {}: {e}", path.display())))?;
            written.push(path);
        }
    }
    if written.is_empty() {
        return Err(CliError::usage("no cells match the selector"));
    }
    Ok(written)
}

/// One classified line of `classify` output.
#[derive(Debug, Serialize)]
pub struct Classified {
    pub text: String,
    pub label: Label,
    pub score: f64,
}

/// `classify`: labels texts with a saved bundle.
pub fn cmd_classify(
    model_path: &Path,
    texts: Vec<String>,
) -> Result<Vec<Classified>, CliError> {
    let bundle = crate::bundle::load_model(model_path).map_err(|e| match e {
        crate::bundle::BundleError::Io { .. } => CliError::usage(e.to_string()),
        other => CliError::data(other.to_string()),
    })?;
    let classifier = bundle.classifier();
    texts
        .into_iter()
        .map(|text| {
            let (label, score) = classifier
                .classify(&text)
                .map_err(|e| CliError::data(e.to_string()))?;
            Ok(Classified { text, label, score })
        })
        .collect()
}
