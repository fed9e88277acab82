//! Four supervised classifiers over sparse TF-IDF features, each exposing
//! a label prediction and a real-valued fraud score.
//!
//! Scores are P(fraud) for naive Bayes and logistic regression, the signed
//! margin for the SVM, and the fraud-vote fraction for the random forest.
//! `predict` returns fraud exactly when the score reaches the variant's
//! decision threshold (0.5 for probability-typed scores, 0 for the margin).

mod forest;
mod logistic;
mod naive_bayes;
mod svm;

pub use forest::{
    train_random_forest, CscMatrix, DecisionTree, MaxFeatures, RandomForestConfig,
    RandomForestModel, TreeNode,
};
pub use logistic::{
    gradient as logistic_gradient, loss as logistic_loss, train_logistic, LogisticConfig,
    LogisticModel,
};
pub use naive_bayes::{nb_posterior, train_gaussian_nb, GaussianNbModel};
pub use svm::{kernel_eval, svm_decision, train_svm, GramCache, KernelKind, SvmConfig, SvmModel};

pub(crate) use forest::grow_trees;
pub(crate) use svm::train_svm_with_gram;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::textproc::{transform, FeatureVector, TfidfModel};

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("training set contains a single class")]
    SingleClass,
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Which classifier family a model or grid belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKind {
    NaiveBayes,
    Logistic,
    Svm,
    RandomForest,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] = [
        ClassifierKind::NaiveBayes,
        ClassifierKind::Logistic,
        ClassifierKind::Svm,
        ClassifierKind::RandomForest,
    ];

    /// Short name used in tables, file names and cell selectors.
    pub fn short_name(&self) -> &'static str {
        match self {
            ClassifierKind::NaiveBayes => "nb",
            ClassifierKind::Logistic => "lr",
            ClassifierKind::Svm => "svm",
            ClassifierKind::RandomForest => "rf",
        }
    }

    pub fn display_name(&self) -> &'static str {
        match self {
            ClassifierKind::NaiveBayes => "NB",
            ClassifierKind::Logistic => "LR",
            ClassifierKind::Svm => "SVM",
            ClassifierKind::RandomForest => "RF",
        }
    }
}

/// A fitted model of any of the four families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierModel {
    NaiveBayes(GaussianNbModel),
    Logistic(LogisticModel),
    Svm(SvmModel),
    RandomForest(RandomForestModel),
}

impl ClassifierModel {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            ClassifierModel::NaiveBayes(_) => ClassifierKind::NaiveBayes,
            ClassifierModel::Logistic(_) => ClassifierKind::Logistic,
            ClassifierModel::Svm(_) => ClassifierKind::Svm,
            ClassifierModel::RandomForest(_) => ClassifierKind::RandomForest,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ClassifierModel::NaiveBayes(m) => m.dim(),
            ClassifierModel::Logistic(m) => m.dim(),
            ClassifierModel::Svm(m) => m.dim(),
            ClassifierModel::RandomForest(m) => m.dim(),
        }
    }

    /// Decision threshold on the score scale.
    pub fn threshold(&self) -> f64 {
        match self {
            ClassifierModel::Svm(_) => 0.0,
            _ => 0.5,
        }
    }

    /// Real-valued fraud score: P(fraud), signed margin, or vote fraction.
    pub fn score(&self, x: &FeatureVector) -> Result<f64, ClassifierError> {
        self.check_dim(x)?;
        Ok(match self {
            ClassifierModel::NaiveBayes(m) => nb_posterior(m, x).0,
            ClassifierModel::Logistic(m) => m.probability(x),
            ClassifierModel::Svm(m) => svm_decision(m, x),
            ClassifierModel::RandomForest(m) => m.fraud_vote_fraction(x),
        })
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<Label, ClassifierError> {
        let score = self.score(x)?;
        Ok(if score >= self.threshold() {
            Label::Fraud
        } else {
            Label::Normal
        })
    }

    fn check_dim(&self, x: &FeatureVector) -> Result<(), ClassifierError> {
        if x.dim() != self.dim() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }
}

/// A classifier paired with the TF-IDF model it was fitted on, so raw
/// texts can be classified end to end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedClassifier {
    pub tfidf: TfidfModel,
    pub model: ClassifierModel,
}

impl TrainedClassifier {
    pub fn new(tfidf: TfidfModel, model: ClassifierModel) -> TrainedClassifier {
        debug_assert_eq!(tfidf.dim(), model.dim());
        TrainedClassifier { tfidf, model }
    }

    pub fn score(&self, x: &FeatureVector) -> Result<f64, ClassifierError> {
        self.model.score(x)
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<Label, ClassifierError> {
        self.model.predict(x)
    }

    /// Transforms and classifies a raw text.
    pub fn classify(&self, text: &str) -> Result<(Label, f64), ClassifierError> {
        let x = transform(&self.tfidf, text);
        Ok((self.model.predict(&x)?, self.model.score(&x)?))
    }

    /// Restores lookup indices after deserialization.
    pub fn finalize(&mut self) {
        self.tfidf.finalize();
    }
}

pub(crate) fn check_two_classes(y: &[Label]) -> Result<(), ClassifierError> {
    if y.is_empty() {
        return Err(ClassifierError::EmptyTrainingSet);
    }
    let fraud = y.iter().filter(|l| **l == Label::Fraud).count();
    if fraud == 0 || fraud == y.len() {
        return Err(ClassifierError::SingleClass);
    }
    Ok(())
}

pub(crate) fn check_consistent_dims(x: &[FeatureVector]) -> Result<usize, ClassifierError> {
    let dim = x.first().map_or(0, FeatureVector::dim);
    for v in x {
        if v.dim() != dim {
            return Err(ClassifierError::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    Ok(dim)
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    pub fn fv(dim: usize, entries: &[(u32, f64)]) -> FeatureVector {
        FeatureVector::new(dim, entries.to_vec())
    }

    pub fn labels(fraud: usize, normal: usize) -> Vec<Label> {
        let mut y = vec![Label::Fraud; fraud];
        y.extend(vec![Label::Normal; normal]);
        y
    }
}
