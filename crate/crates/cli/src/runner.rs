//! Experiment orchestration: per-cell training/tuning/evaluation over the
//! dataset x model x variant matrix, with per-cell derived seeds so the
//! outcome does not depend on scheduling or worker count.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use smsfraud_core::classifiers::{
    train_gaussian_nb, train_logistic, train_random_forest, train_svm, ClassifierKind,
    ClassifierModel,
};
use smsfraud_core::corpus::{stratified_split, Dataset, Label};
use smsfraud_core::eval::{build_report, EvaluationReport};
use smsfraud_core::textproc::{fit_tfidf, transform_all, TokenizerConfig};
use smsfraud_core::tuning::{
    grid_search, CandidateParams, CvConfig, ParamGrid, Scoring, TuningResult,
};
use smsfraud_core::{derive_seed, RandomForestConfig};

use crate::config::{build_tokenizer, RunConfig, TokenizerSpec};
use crate::CliError;

/// One cell of the experiment matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellSpec {
    pub model: ClassifierKind,
    pub tuned: bool,
}

impl CellSpec {
    pub fn variant_name(&self) -> &'static str {
        if self.tuned {
            "tuned"
        } else {
            "baseline"
        }
    }

    pub fn column_label(&self) -> String {
        if self.tuned {
            format!("{} best", self.model.display_name())
        } else {
            self.model.display_name().to_string()
        }
    }
}

/// Cell list in summary-table order: per model, baseline then tuned.
/// LR has no tuned variant.
pub fn cell_specs(config: &RunConfig) -> Vec<CellSpec> {
    let mut cells = Vec::new();
    for model in ClassifierKind::ALL {
        cells.push(CellSpec {
            model,
            tuned: false,
        });
        let tunable = match model {
            ClassifierKind::NaiveBayes => config.models.nb.tune,
            ClassifierKind::Logistic => false,
            ClassifierKind::Svm => config.models.svm.tune,
            ClassifierKind::RandomForest => config.models.rf.tune,
        };
        if tunable {
            cells.push(CellSpec { model, tuned: true });
        }
    }
    cells
}

#[derive(Debug, Clone, Serialize)]
pub struct CellOutcome {
    pub dataset_tag: String,
    pub spec: CellSpec,
    pub report: Result<EvaluationReport, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuning: Option<TuningResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixResults {
    pub cells: Vec<CellOutcome>,
}

impl MatrixResults {
    pub fn failed_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.report.is_err()).count()
    }

    pub fn find(&self, tag: &str, model: ClassifierKind, tuned: bool) -> Option<&CellOutcome> {
        self.cells.iter().find(|c| {
            c.dataset_tag == tag && c.spec.model == model && c.spec.tuned == tuned
        })
    }
}

/// Filter parsed from `--only TAG[/MODEL[/VARIANT]]`.
#[derive(Debug, Clone, Default)]
pub struct CellFilter {
    tag: Option<String>,
    model: Option<ClassifierKind>,
    tuned: Option<bool>,
}

impl CellFilter {
    pub fn parse(selector: &str) -> Result<CellFilter, CliError> {
        let mut filter = CellFilter::default();
        let parts: Vec<&str> = selector.split('/').collect();
        if parts.len() > 3 {
            return Err(CliError::usage(format!(
                "cell selector {selector:?} has more than three segments"
            )));
        }
        if let Some(tag) = parts.first() {
            if !tag.is_empty() && *tag != "*" {
                filter.tag = Some((*tag).to_string());
            }
        }
        if let Some(model) = parts.get(1) {
            if !model.is_empty() && *model != "*" {
                filter.model = Some(match model.to_lowercase().as_str() {
                    "nb" => ClassifierKind::NaiveBayes,
                    "lr" => ClassifierKind::Logistic,
                    "svm" => ClassifierKind::Svm,
                    "rf" => ClassifierKind::RandomForest,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown model {other:?} (expected nb, lr, svm or rf)"
                        )))
                    }
                });
            }
        }
        if let Some(variant) = parts.get(2) {
            if !variant.is_empty() && *variant != "*" {
                filter.tuned = Some(match variant.to_lowercase().as_str() {
                    "tuned" | "best" => true,
                    "baseline" => false,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown variant {other:?} (expected baseline or tuned)"
                        )))
                    }
                });
            }
        }
        Ok(filter)
    }

    pub fn matches(&self, tag: &str, spec: &CellSpec) -> bool {
        self.tag.as_deref().is_none_or(|t| t.eq_ignore_ascii_case(tag))
            && self.model.is_none_or(|m| m == spec.model)
            && self.tuned.is_none_or(|t| t == spec.tuned)
    }
}

pub fn config_hash(value: &impl Serialize) -> String {
    let json = serde_json::to_string(value).expect("serializable config");
    let digest = Sha256::digest(json.as_bytes());
    hex::encode(&digest[..8])
}

/// A fitted model of any kind plus its scores on a batch.
fn score_batch(model: &ClassifierModel, x: &[smsfraud_core::FeatureVector]) -> Vec<f64> {
    x.iter()
        .map(|xi| model.score(xi).expect("matching dimensions"))
        .collect()
}

fn predictions(model: &ClassifierModel, scores: &[f64]) -> Vec<Label> {
    let threshold = model.threshold();
    scores
        .iter()
        .map(|&s| if s >= threshold { Label::Fraud } else { Label::Normal })
        .collect()
}

pub(crate) fn grid_for(config: &RunConfig, model: ClassifierKind) -> ParamGrid {
    match model {
        ClassifierKind::NaiveBayes => {
            ParamGrid::NaiveBayes(config.models.nb.grid.clone().unwrap_or_default())
        }
        ClassifierKind::Svm => ParamGrid::Svm(config.models.svm.grid.clone().unwrap_or_default()),
        ClassifierKind::RandomForest => {
            ParamGrid::RandomForest(config.models.rf.grid.clone().unwrap_or_default())
        }
        ClassifierKind::Logistic => unreachable!("LR is never tuned"),
    }
}

pub(crate) fn train_from_params(
    params: &TrainParams,
    x: &[smsfraud_core::FeatureVector],
    y: &[Label],
) -> Result<ClassifierModel, String> {
    match params {
        TrainParams::NaiveBayes { var_smoothing } => train_gaussian_nb(x, y, *var_smoothing)
            .map(ClassifierModel::NaiveBayes)
            .map_err(|e| e.to_string()),
        TrainParams::Logistic(cfg) => train_logistic(x, y, cfg)
            .map(ClassifierModel::Logistic)
            .map_err(|e| e.to_string()),
        TrainParams::Svm(cfg) => train_svm(x, y, cfg)
            .map(ClassifierModel::Svm)
            .map_err(|e| e.to_string()),
        TrainParams::RandomForest(cfg) => train_random_forest(x, y, cfg)
            .map(ClassifierModel::RandomForest)
            .map_err(|e| e.to_string()),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub(crate) enum TrainParams {
    NaiveBayes { var_smoothing: f64 },
    Logistic(smsfraud_core::LogisticConfig),
    Svm(smsfraud_core::SvmConfig),
    RandomForest(RandomForestConfig),
}

pub(crate) fn baseline_params(config: &RunConfig, model: ClassifierKind, cell_seed: u64) -> TrainParams {
    match model {
        ClassifierKind::NaiveBayes => TrainParams::NaiveBayes {
            var_smoothing: config.models.nb.baseline_var_smoothing,
        },
        ClassifierKind::Logistic => TrainParams::Logistic(config.models.lr.baseline.clone()),
        ClassifierKind::Svm => TrainParams::Svm(config.models.svm.baseline.clone()),
        ClassifierKind::RandomForest => TrainParams::RandomForest(RandomForestConfig {
            seed: cell_seed,
            ..config.models.rf.baseline.clone()
        }),
    }
}

pub(crate) fn tuned_params(best: &CandidateParams, cell_seed: u64) -> TrainParams {
    match best {
        CandidateParams::NaiveBayes { var_smoothing } => TrainParams::NaiveBayes {
            var_smoothing: *var_smoothing,
        },
        CandidateParams::Svm(cfg) => TrainParams::Svm(cfg.clone()),
        CandidateParams::RandomForest(cfg) => TrainParams::RandomForest(RandomForestConfig {
            seed: cell_seed,
            ..cfg.clone()
        }),
    }
}

/// Everything shared by the cells of one dataset: the split and the raw
/// record views.
pub struct PreparedDataset {
    pub tag: String,
    pub train: Dataset,
    pub test: Dataset,
}

pub fn prepare_dataset(config: &RunConfig, dataset: &Dataset) -> Result<PreparedDataset, CliError> {
    let seed = config.split_seed(&dataset.tag);
    let (train, test) = stratified_split(dataset, config.split.test_fraction, seed)
        .map_err(|e| CliError::data(format!("splitting {:?}: {e}", dataset.tag)))?;
    Ok(PreparedDataset {
        tag: dataset.tag.clone(),
        train,
        test,
    })
}

/// Runs one cell: optional grid search on the training split, refit on
/// the full training split, evaluation on the held-out test split.
pub fn run_cell(
    config: &RunConfig,
    tokenizer_spec: &TokenizerSpec,
    prepared: &PreparedDataset,
    spec: CellSpec,
) -> CellOutcome {
    let tag = prepared.tag.as_str();
    let cell_seed = derive_seed(
        config.master_seed,
        &[tag, spec.model.short_name(), spec.variant_name()],
    );

    let result = (|| -> Result<(EvaluationReport, Option<TuningResult>), String> {
        let tokenizer: TokenizerConfig =
            build_tokenizer(tokenizer_spec, Some(&prepared.train)).map_err(|e| e.to_string())?;
        let train_texts: Vec<String> =
            prepared.train.records.iter().map(|r| r.text.clone()).collect();
        let train_y = prepared.train.labels();

        let (params, tuning) = if spec.tuned {
            let cv = CvConfig {
                k: config.cv.k,
                seed: config.cv_seed(tag, spec.model.short_name()),
                scoring: Scoring::Accuracy,
            };
            let grid = grid_for(config, spec.model);
            let tuning = grid_search(&train_texts, &train_y, &tokenizer, &grid, &cv)
                .map_err(|e| e.to_string())?;
            (tuned_params(&tuning.best_params, cell_seed), Some(tuning))
        } else {
            (baseline_params(config, spec.model, cell_seed), None)
        };

        let tfidf = fit_tfidf(&train_texts, &tokenizer).map_err(|e| e.to_string())?;
        let x_train = transform_all(&tfidf, &train_texts);
        let model = train_from_params(&params, &x_train, &train_y)?;

        let test_texts: Vec<&str> = prepared.test.texts();
        let x_test = transform_all(&tfidf, &test_texts);
        let scores = score_batch(&model, &x_test);
        let preds = predictions(&model, &scores);
        let test_y = prepared.test.labels();
        let ids: Vec<String> = prepared.test.records.iter().map(|r| r.sms_id.clone()).collect();

        let fingerprint = config_hash(&(
            &params,
            config.master_seed,
            cell_seed,
            tag,
            spec.variant_name(),
        ));
        let report = build_report(
            tag,
            spec.model.short_name(),
            spec.tuned,
            serde_json::to_value(&params).expect("params serialize"),
            &ids,
            &test_y,
            &preds,
            &scores,
            &fingerprint,
        )
        .map_err(|e| e.to_string())?;
        Ok((report, tuning))
    })();

    match result {
        Ok((report, tuning)) => CellOutcome {
            dataset_tag: tag.to_string(),
            spec,
            report: Ok(report),
            tuning,
        },
        Err(message) => CellOutcome {
            dataset_tag: tag.to_string(),
            spec,
            report: Err(message),
            tuning: None,
        },
    }
}

/// Runs the full matrix for one tokenizer arm. Per-cell failures are
/// recorded; the run continues.
pub fn run_matrix(
    config: &RunConfig,
    tokenizer_spec: &TokenizerSpec,
    filter: &CellFilter,
) -> Result<MatrixResults, CliError> {
    let datasets = config.load_datasets()?;
    let specs = cell_specs(config);
    let mut jobs: Vec<(PreparedDataset, CellSpec)> = Vec::new();
    for ds_spec in &config.datasets {
        if ds_spec.stats_only {
            continue;
        }
        let dataset = &datasets[&ds_spec.tag];
        let matching: Vec<CellSpec> = specs
            .iter()
            .copied()
            .filter(|s| filter.matches(&ds_spec.tag, s))
            .collect();
        if matching.is_empty() {
            continue;
        }
        let prepared = prepare_dataset(config, dataset)?;
        for spec in matching {
            // split is deterministic per dataset, so cloning it per cell
            // keeps cells independent for the worker pool
            jobs.push((
                PreparedDataset {
                    tag: prepared.tag.clone(),
                    train: prepared.train.clone(),
                    test: prepared.test.clone(),
                },
                spec,
            ));
        }
    }
    if jobs.is_empty() {
        return Err(CliError::usage("no matrix cells match the selector"));
    }
    let cells: Vec<CellOutcome> = jobs
        .par_iter()
        .map(|(prepared, spec)| run_cell(config, tokenizer_spec, prepared, *spec))
        .collect();
    Ok(MatrixResults { cells })
}

/// Paired Raw/Full runs for the tokenization ablation.
pub struct AblationResults {
    pub raw: MatrixResults,
    pub full: MatrixResults,
}

pub fn run_ablation(config: &RunConfig, filter: &CellFilter) -> Result<AblationResults, CliError> {
    let mut arm_config = config.clone();
    if !config.ablation.include_tuned {
        arm_config.models.nb.tune = false;
        arm_config.models.svm.tune = false;
        arm_config.models.rf.tune = false;
    }
    let raw = run_matrix(&arm_config, &config.ablation.raw.clone(), filter)?;
    let full = run_matrix(&arm_config, &config.ablation.full.clone(), filter)?;
    Ok(AblationResults { raw, full })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_filter_parses_selectors() {
        let f = CellFilter::parse("D-CHI/rf/tuned").unwrap();
        assert!(f.matches(
            "D-CHI",
            &CellSpec {
                model: ClassifierKind::RandomForest,
                tuned: true
            }
        ));
        assert!(!f.matches(
            "D-CHI",
            &CellSpec {
                model: ClassifierKind::RandomForest,
                tuned: false
            }
        ));
        assert!(!f.matches(
            "D-HT",
            &CellSpec {
                model: ClassifierKind::RandomForest,
                tuned: true
            }
        ));

        let f = CellFilter::parse("D-CHI").unwrap();
        assert!(f.matches(
            "d-chi",
            &CellSpec {
                model: ClassifierKind::NaiveBayes,
                tuned: false
            }
        ));

        assert!(CellFilter::parse("a/b/c/d").is_err());
        assert!(CellFilter::parse("D-CHI/knn").is_err());
    }

    #[test]
    fn config_hash_is_stable_and_sensitive() {
        let a = config_hash(&("x", 1));
        let b = config_hash(&("x", 1));
        let c = config_hash(&("x", 2));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 16);
    }
}
