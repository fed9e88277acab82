//! Grid-search hyperparameter optimization with stratified k-fold
//! cross-validation.
//!
//! TF-IDF is refit inside each training fold, so no vocabulary or IDF
//! statistics leak from held-out data. Grid points evaluate independently
//! (and in parallel); the trial log is assembled in enumeration order, so
//! output does not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{
    train_gaussian_nb, train_svm_with_gram, svm_decision, ClassifierKind, CscMatrix, GramCache,
    KernelKind, MaxFeatures, RandomForestConfig, SvmConfig,
};
use crate::corpus::Label;
use crate::derive_seed;
use crate::textproc::{fit_tfidf, transform_all, TextError, TokenizerConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scoring {
    Accuracy,
}

/// Cross-validation settings. `k` must not exceed the smallest class count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvConfig {
    pub k: usize,
    pub seed: u64,
    pub scoring: Scoring,
}

impl Default for CvConfig {
    fn default() -> CvConfig {
        CvConfig {
            k: 5,
            seed: 0,
            scoring: Scoring::Accuracy,
        }
    }
}

#[derive(Debug, Error)]
pub enum TuningError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("class {label} has {count} records, fewer than k = {k}")]
    ClassSmallerThanK { label: Label, count: usize, k: usize },
    #[error("parameter grid is empty")]
    EmptyGrid,
    #[error("every grid trial failed; first error: {0}")]
    AllTrialsFailed(String),
    #[error(transparent)]
    Text(#[from] TextError),
}

/// Stratified fold assignment: folds partition `0..n`, per-fold class
/// counts differ by at most one from `class_count / k`, and the +1
/// remainders go to the currently lightest folds so overall fold sizes
/// stay balanced. Deterministic per seed.
pub fn stratified_kfold_indices(
    y: &[Label],
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>, TuningError> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    if k < 2 {
        return Err(TuningError::KTooSmall(k));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for label in [Label::Fraud, Label::Normal] {
        let mut indices: Vec<usize> = y
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == label)
            .map(|(i, _)| i)
            .collect();
        if indices.len() < k {
            return Err(TuningError::ClassSmallerThanK {
                label,
                count: indices.len(),
                k,
            });
        }
        indices.shuffle(&mut rng);
        let base = indices.len() / k;
        let remainder = indices.len() % k;
        // the +1 remainders go to the lightest folds, lowest index first
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&f| (folds[f].len(), f));
        let mut quota = vec![base; k];
        for &f in order.iter().take(remainder) {
            quota[f] += 1;
        }
        let mut cursor = 0;
        for (f, q) in quota.iter().enumerate() {
            folds[f].extend_from_slice(&indices[cursor..cursor + q]);
            cursor += q;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Naive Bayes grid: a list of `var_smoothing` values. The default is 100
/// log-spaced values from 10^0 down to 10^-9.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbGrid {
    pub var_smoothing: Vec<f64>,
}

impl Default for NbGrid {
    fn default() -> NbGrid {
        NbGrid {
            var_smoothing: (0..100)
                .map(|i| 10f64.powf(i as f64 * (-9.0 / 99.0)))
                .collect(),
        }
    }
}

/// SVM grid over kernel, C, gamma and tol (in that enumeration order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmGrid {
    pub kernel: Vec<KernelKind>,
    pub c: Vec<f64>,
    pub gamma: Vec<f64>,
    pub tol: Vec<f64>,
    pub max_passes: usize,
}

impl Default for SvmGrid {
    fn default() -> SvmGrid {
        SvmGrid {
            kernel: vec![KernelKind::Linear, KernelKind::Rbf, KernelKind::Sigmoid],
            c: vec![0.1, 1.0, 10.0, 100.0, 1000.0],
            gamma: vec![0.001, 0.01, 0.1, 1.0],
            tol: vec![1e-3, 1e-4, 1e-6],
            max_passes: 100,
        }
    }
}

/// Random forest grid in the enumeration order n_estimators,
/// min_samples_split, min_samples_leaf, max_features, max_depth, bootstrap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RfGrid {
    pub n_estimators: Vec<usize>,
    pub min_samples_split: Vec<usize>,
    pub min_samples_leaf: Vec<usize>,
    pub max_features: Vec<MaxFeatures>,
    pub max_depth: Vec<Option<u32>>,
    pub bootstrap: Vec<bool>,
}

impl Default for RfGrid {
    fn default() -> RfGrid {
        RfGrid {
            n_estimators: vec![80, 130, 180, 230],
            min_samples_split: vec![2, 5, 10],
            min_samples_leaf: vec![1, 2, 4],
            max_features: vec![MaxFeatures::Count(1), MaxFeatures::Sqrt],
            max_depth: vec![Some(80), Some(110), None],
            bootstrap: vec![true, false],
        }
    }
}

/// A finite parameter lattice for one classifier kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "classifier", rename_all = "snake_case")]
pub enum ParamGrid {
    NaiveBayes(NbGrid),
    Svm(SvmGrid),
    RandomForest(RfGrid),
}

impl ParamGrid {
    pub fn classifier_kind(&self) -> ClassifierKind {
        match self {
            ParamGrid::NaiveBayes(_) => ClassifierKind::NaiveBayes,
            ParamGrid::Svm(_) => ClassifierKind::Svm,
            ParamGrid::RandomForest(_) => ClassifierKind::RandomForest,
        }
    }

    /// Cartesian product in lexicographic order over the declared
    /// parameter order; the first parameter varies slowest.
    pub fn enumerate(&self) -> Vec<CandidateParams> {
        match self {
            ParamGrid::NaiveBayes(g) => g
                .var_smoothing
                .iter()
                .map(|&vs| CandidateParams::NaiveBayes { var_smoothing: vs })
                .collect(),
            ParamGrid::Svm(g) => {
                let mut out = Vec::new();
                for &kernel in &g.kernel {
                    for &c in &g.c {
                        for &gamma in &g.gamma {
                            for &tol in &g.tol {
                                out.push(CandidateParams::Svm(SvmConfig {
                                    kernel,
                                    c,
                                    gamma,
                                    tol,
                                    max_passes: g.max_passes,
                                }));
                            }
                        }
                    }
                }
                out
            }
            ParamGrid::RandomForest(g) => {
                let mut out = Vec::new();
                for &n_estimators in &g.n_estimators {
                    for &min_samples_split in &g.min_samples_split {
                        for &min_samples_leaf in &g.min_samples_leaf {
                            for &max_features in &g.max_features {
                                for &max_depth in &g.max_depth {
                                    for &bootstrap in &g.bootstrap {
                                        out.push(CandidateParams::RandomForest(
                                            RandomForestConfig {
                                                n_estimators,
                                                min_samples_split,
                                                min_samples_leaf,
                                                max_features,
                                                max_depth,
                                                bootstrap,
                                                seed: 0,
                                            },
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

/// One grid point's parameter assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CandidateParams {
    NaiveBayes { var_smoothing: f64 },
    Svm(SvmConfig),
    RandomForest(RandomForestConfig),
}

/// One grid point's outcome: per-fold scores and their mean, or the first
/// training error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub params: CandidateParams,
    pub fold_scores: Vec<f64>,
    pub mean_score: Option<f64>,
    pub error: Option<String>,
}

/// Grid-search outcome: the winner plus the full trial log.
/// `best_params` is the first maximizer in enumeration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningResult {
    pub classifier: ClassifierKind,
    pub cv: CvConfig,
    pub best_params: CandidateParams,
    pub best_score: f64,
    pub trials: Vec<Trial>,
}

fn accuracy(y_true: &[Label], y_pred: &[Label]) -> f64 {
    let correct = y_true
        .iter()
        .zip(y_pred)
        .filter(|(t, p)| t == p)
        .count();
    correct as f64 / y_true.len() as f64
}

/// Scores every random-forest grid point on one fold. Points that differ
/// only in `n_estimators` share per-tree seed substreams, so each group
/// is trained once at its largest size and every prefix is scored from
/// cumulative votes. Results equal training each point independently.
fn rf_fold_scores(
    csc: &CscMatrix,
    train_y: &[Label],
    x_val: &[crate::textproc::FeatureVector],
    val_y: &[Label],
    points: &[CandidateParams],
    fold_seed: u64,
) -> Vec<Result<f64, String>> {
    use std::collections::HashMap;

    let fraud = train_y.iter().filter(|l| **l == Label::Fraud).count();
    if fraud == 0 || fraud == train_y.len() {
        return vec![Err("training set contains a single class".to_string()); points.len()];
    }

    type GroupKey = (usize, usize, MaxFeatures, Option<u32>, bool);
    let mut groups: HashMap<GroupKey, Vec<(usize, usize)>> = HashMap::new();
    for (idx, p) in points.iter().enumerate() {
        let CandidateParams::RandomForest(config) = p else { unreachable!() };
        let key = (
            config.min_samples_split,
            config.min_samples_leaf,
            config.max_features,
            config.max_depth,
            config.bootstrap,
        );
        groups.entry(key).or_default().push((idx, config.n_estimators));
    }
    let is_fraud: Vec<bool> = train_y.iter().map(|l| *l == Label::Fraud).collect();
    let group_list: Vec<(GroupKey, Vec<(usize, usize)>)> = groups.into_iter().collect();

    let scored: Vec<Vec<(usize, Result<f64, String>)>> = group_list
        .par_iter()
        .map(|(key, members)| {
            let max_trees = members.iter().map(|(_, n)| *n).max().unwrap_or(0);
            if max_trees == 0 {
                return members
                    .iter()
                    .map(|(idx, _)| {
                        (*idx, Err("n_estimators must be at least 1".to_string()))
                    })
                    .collect();
            }
            let config = RandomForestConfig {
                n_estimators: max_trees,
                min_samples_split: key.0,
                min_samples_leaf: key.1,
                max_features: key.2,
                max_depth: key.3,
                bootstrap: key.4,
                seed: fold_seed,
            };
            let trees = crate::classifiers::grow_trees(csc, &is_fraud, &config, max_trees);
            // cumulative fraud votes per validation doc over tree order
            let cumulative: Vec<Vec<u32>> = x_val
                .iter()
                .map(|x| {
                    let mut cum = Vec::with_capacity(max_trees);
                    let mut votes = 0u32;
                    for tree in &trees {
                        votes += u32::from(tree.votes_fraud(x));
                        cum.push(votes);
                    }
                    cum
                })
                .collect();
            members
                .iter()
                .map(|(idx, n)| {
                    let correct = cumulative
                        .iter()
                        .zip(val_y)
                        .filter(|(cum, truth)| {
                            // vote fraction >= 0.5 predicts fraud
                            let fraud = 2 * cum[n - 1] as usize >= *n;
                            fraud == (**truth == Label::Fraud)
                        })
                        .count();
                    (*idx, Ok(correct as f64 / val_y.len() as f64))
                })
                .collect()
        })
        .collect();

    let mut results: Vec<Result<f64, String>> =
        vec![Err("unscored grid point".to_string()); points.len()];
    for group in scored {
        for (idx, result) in group {
            results[idx] = result;
        }
    }
    results
}

/// Exhaustive grid search. For each fold, the tokenizer and TF-IDF are
/// fit on the k-1 training folds only; each grid point is trained there
/// and scored on the held-out fold. Failed trials are logged and excluded
/// from the winner.
pub fn grid_search<S: AsRef<str> + Sync>(
    texts: &[S],
    y: &[Label],
    tokenizer: &TokenizerConfig,
    grid: &ParamGrid,
    cv: &CvConfig,
) -> Result<TuningResult, TuningError> {
    let folds = stratified_kfold_indices(y, cv.k, cv.seed)?;
    let points = grid.enumerate();
    if points.is_empty() {
        return Err(TuningError::EmptyGrid);
    }

    let mut fold_results: Vec<Vec<Result<f64, String>>> = Vec::with_capacity(cv.k);
    for (fold_idx, val_fold) in folds.iter().enumerate() {
        let in_val = {
            let mut mask = vec![false; y.len()];
            for &i in val_fold {
                mask[i] = true;
            }
            mask
        };
        let train_texts: Vec<&str> = texts
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_val[*i])
            .map(|(_, t)| t.as_ref())
            .collect();
        let train_y: Vec<Label> = y
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_val[*i])
            .map(|(_, l)| *l)
            .collect();
        let val_texts: Vec<&str> = val_fold.iter().map(|&i| texts[i].as_ref()).collect();
        let val_y: Vec<Label> = val_fold.iter().map(|&i| y[i]).collect();

        let tfidf = fit_tfidf(&train_texts, tokenizer)?;
        let x_train = transform_all(&tfidf, &train_texts);
        let x_val = transform_all(&tfidf, &val_texts);

        let results: Vec<Result<f64, String>> = match grid {
            ParamGrid::NaiveBayes(_) => points
                .par_iter()
                .map(|p| {
                    let CandidateParams::NaiveBayes { var_smoothing } = p else {
                        unreachable!()
                    };
                    train_gaussian_nb(&x_train, &train_y, *var_smoothing)
                        .map(|model| {
                            let preds: Vec<Label> = x_val
                                .iter()
                                .map(|x| {
                                    let (pf, _) = crate::classifiers::nb_posterior(&model, x);
                                    if pf >= 0.5 {
                                        Label::Fraud
                                    } else {
                                        Label::Normal
                                    }
                                })
                                .collect();
                            accuracy(&val_y, &preds)
                        })
                        .map_err(|e| e.to_string())
                })
                .collect(),
            ParamGrid::Svm(_) => {
                let gram = GramCache::new(&x_train);
                points
                    .par_iter()
                    .map(|p| {
                        let CandidateParams::Svm(config) = p else { unreachable!() };
                        train_svm_with_gram(&x_train, &gram, &train_y, config)
                            .map(|model| {
                                let preds: Vec<Label> = x_val
                                    .iter()
                                    .map(|x| {
                                        if svm_decision(&model, x) >= 0.0 {
                                            Label::Fraud
                                        } else {
                                            Label::Normal
                                        }
                                    })
                                    .collect();
                                accuracy(&val_y, &preds)
                            })
                            .map_err(|e| e.to_string())
                    })
                    .collect()
            }
            ParamGrid::RandomForest(_) => {
                let csc = CscMatrix::from_rows(&x_train);
                let fold_seed = derive_seed(cv.seed, &["fold", &fold_idx.to_string()]);
                rf_fold_scores(&csc, &train_y, &x_val, &val_y, &points, fold_seed)
            }
        };
        fold_results.push(results);
    }

    let mut trials: Vec<Trial> = Vec::with_capacity(points.len());
    for (p_idx, params) in points.iter().enumerate() {
        let mut fold_scores = Vec::with_capacity(cv.k);
        let mut error = None;
        for fold in &fold_results {
            match &fold[p_idx] {
                Ok(score) => fold_scores.push(*score),
                Err(e) => {
                    error = Some(e.clone());
                    break;
                }
            }
        }
        let trial = if let Some(e) = error {
            Trial {
                params: params.clone(),
                fold_scores: Vec::new(),
                mean_score: None,
                error: Some(e),
            }
        } else {
            let mean = fold_scores.iter().sum::<f64>() / fold_scores.len() as f64;
            Trial {
                params: params.clone(),
                fold_scores,
                mean_score: Some(mean),
                error: None,
            }
        };
        trials.push(trial);
    }

    let mut best: Option<(usize, f64)> = None;
    for (i, trial) in trials.iter().enumerate() {
        if let Some(mean) = trial.mean_score {
            let better = match best {
                None => true,
                Some((_, best_mean)) => mean > best_mean,
            };
            if better {
                best = Some((i, mean));
            }
        }
    }
    let Some((best_idx, best_score)) = best else {
        let first_error = trials
            .iter()
            .find_map(|t| t.error.clone())
            .unwrap_or_else(|| "no trials".into());
        return Err(TuningError::AllTrialsFailed(first_error));
    };

    Ok(TuningResult {
        classifier: grid.classifier_kind(),
        cv: *cv,
        best_params: trials[best_idx].params.clone(),
        best_score,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn labels(fraud: usize, normal: usize) -> Vec<Label> {
        let mut y = vec![Label::Fraud; fraud];
        y.extend(vec![Label::Normal; normal]);
        y
    }

    #[test]
    fn kfold_exact_divisibility() {
        let y = labels(4, 4);
        let folds = stratified_kfold_indices(&y, 2, 0).unwrap();
        for fold in &folds {
            let fraud = fold.iter().filter(|&&i| y[i] == Label::Fraud).count();
            assert_eq!(fraud, 2);
            assert_eq!(fold.len(), 4);
        }
    }

    #[test]
    fn kfold_remainders_balance_fold_sizes() {
        let y = labels(5, 5);
        let folds = stratified_kfold_indices(&y, 2, 3).unwrap();
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![5, 5]);
        let fraud_counts: Vec<usize> = folds
            .iter()
            .map(|f| f.iter().filter(|&&i| y[i] == Label::Fraud).count())
            .collect();
        let mut sorted = fraud_counts.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 3]);
    }

    #[test]
    fn kfold_partitions_indices() {
        let y = labels(13, 9);
        let folds = stratified_kfold_indices(&y, 3, 11).unwrap();
        let mut seen = HashSet::new();
        for fold in &folds {
            for &i in fold {
                assert!(seen.insert(i), "index {i} appears twice");
            }
        }
        assert_eq!(seen.len(), 22);
    }

    #[test]
    fn kfold_is_deterministic_and_respects_bounds() {
        let y = labels(11, 7);
        let a = stratified_kfold_indices(&y, 4, 5).unwrap();
        let b = stratified_kfold_indices(&y, 4, 5).unwrap();
        assert_eq!(a, b);
        for fold in &a {
            for (label, count) in [(Label::Fraud, 11.0), (Label::Normal, 7.0)] {
                let in_fold = fold.iter().filter(|&&i| y[i] == label).count() as f64;
                assert!(
                    (in_fold - count / 4.0).abs() < 1.0 + 1e-9,
                    "fold class count {in_fold} too far from {}",
                    count / 4.0
                );
            }
        }
    }

    #[test]
    fn kfold_rejects_small_class_or_k() {
        let y = labels(2, 8);
        assert!(matches!(
            stratified_kfold_indices(&y, 3, 0).unwrap_err(),
            TuningError::ClassSmallerThanK { label: Label::Fraud, count: 2, k: 3 }
        ));
        assert!(matches!(
            stratified_kfold_indices(&y, 1, 0).unwrap_err(),
            TuningError::KTooSmall(1)
        ));
    }

    #[test]
    fn default_nb_grid_contains_published_best_values() {
        let grid = NbGrid::default();
        assert_eq!(grid.var_smoothing.len(), 100);
        for expected in [
            1.0,
            0.12328467394420659,
            0.1873817422860384,
            0.005336699231206307,
        ] {
            assert!(
                grid.var_smoothing.contains(&expected),
                "{expected} missing from the default grid"
            );
        }
    }

    #[test]
    fn default_grid_sizes() {
        assert_eq!(ParamGrid::Svm(SvmGrid::default()).enumerate().len(), 180);
        assert_eq!(
            ParamGrid::RandomForest(RfGrid::default()).enumerate().len(),
            432
        );
        assert_eq!(
            ParamGrid::NaiveBayes(NbGrid::default()).enumerate().len(),
            100
        );
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let grid = SvmGrid {
            kernel: vec![KernelKind::Linear, KernelKind::Rbf],
            c: vec![1.0, 2.0],
            gamma: vec![0.5],
            tol: vec![1e-3],
            max_passes: 10,
        };
        let points = ParamGrid::Svm(grid).enumerate();
        let kernels: Vec<KernelKind> = points
            .iter()
            .map(|p| {
                let CandidateParams::Svm(c) = p else { panic!() };
                c.kernel
            })
            .collect();
        assert_eq!(
            kernels,
            vec![
                KernelKind::Linear,
                KernelKind::Linear,
                KernelKind::Rbf,
                KernelKind::Rbf
            ]
        );
    }

    fn toy_texts() -> (Vec<String>, Vec<Label>) {
        let mut texts = Vec::new();
        let mut y = Vec::new();
        for i in 0..10 {
            texts.push(format!("ndalama tumizani agent {i}"));
            y.push(Label::Fraud);
            texts.push(format!("moni bambo tionana mawa {i}"));
            y.push(Label::Normal);
        }
        (texts, y)
    }

    #[test]
    fn single_point_grid_returns_that_point() {
        let (texts, y) = toy_texts();
        let grid = ParamGrid::NaiveBayes(NbGrid {
            var_smoothing: vec![0.1],
        });
        let cv = CvConfig {
            k: 2,
            ..CvConfig::default()
        };
        let result = grid_search(&texts, &y, &TokenizerConfig::raw(), &grid, &cv).unwrap();
        assert_eq!(result.trials.len(), 1);
        assert_eq!(
            result.best_params,
            CandidateParams::NaiveBayes { var_smoothing: 0.1 }
        );
        assert_eq!(result.best_score, result.trials[0].mean_score.unwrap());
    }

    #[test]
    fn grid_search_is_deterministic() {
        let (texts, y) = toy_texts();
        let grid = ParamGrid::Svm(SvmGrid {
            kernel: vec![KernelKind::Linear, KernelKind::Rbf],
            c: vec![1.0, 10.0],
            gamma: vec![0.5],
            tol: vec![1e-3],
            max_passes: 50,
        });
        let cv = CvConfig {
            k: 2,
            seed: 42,
            scoring: Scoring::Accuracy,
        };
        let a = grid_search(&texts, &y, &TokenizerConfig::raw(), &grid, &cv).unwrap();
        let b = grid_search(&texts, &y, &TokenizerConfig::raw(), &grid, &cv).unwrap();
        assert_eq!(a, b);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn failed_trials_are_logged_and_skipped() {
        let (texts, y) = toy_texts();
        // var_smoothing 0 is invalid and must fail per-trial, not globally
        let grid = ParamGrid::NaiveBayes(NbGrid {
            var_smoothing: vec![0.0, 0.1],
        });
        let cv = CvConfig {
            k: 2,
            ..CvConfig::default()
        };
        let result = grid_search(&texts, &y, &TokenizerConfig::raw(), &grid, &cv).unwrap();
        assert_eq!(result.trials.len(), 2);
        assert!(result.trials[0].error.is_some());
        assert!(result.trials[0].mean_score.is_none());
        assert!(result.trials[1].error.is_none());
        assert_eq!(
            result.best_params,
            CandidateParams::NaiveBayes { var_smoothing: 0.1 }
        );

        let all_bad = ParamGrid::NaiveBayes(NbGrid {
            var_smoothing: vec![0.0],
        });
        assert!(matches!(
            grid_search(&texts, &y, &TokenizerConfig::raw(), &all_bad, &cv).unwrap_err(),
            TuningError::AllTrialsFailed(_)
        ));
    }

    #[test]
    fn best_score_is_max_of_trial_means() {
        let (texts, y) = toy_texts();
        let grid = ParamGrid::RandomForest(RfGrid {
            n_estimators: vec![5, 10],
            min_samples_split: vec![2],
            min_samples_leaf: vec![1],
            max_features: vec![MaxFeatures::Sqrt],
            max_depth: vec![None],
            bootstrap: vec![true],
        });
        let cv = CvConfig {
            k: 2,
            ..CvConfig::default()
        };
        let result = grid_search(&texts, &y, &TokenizerConfig::raw(), &grid, &cv).unwrap();
        let max = result
            .trials
            .iter()
            .filter_map(|t| t.mean_score)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(result.best_score, max);
    }
}
