//! Confusion matrices, per-class metrics, rank-based AUC-ROC and
//! structured evaluation reports.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;

/// Binary confusion counts with fraud as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn actual_fraud(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn actual_normal(&self) -> usize {
        self.fp + self.tn
    }

    pub fn incorrect(&self) -> usize {
        self.fp + self.fn_
    }
}

/// Precision, recall and F1 for one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionRecallF1 {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Per-class precision/recall/F1 plus overall accuracy. Zero denominators
/// yield 0 by convention instead of an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub accuracy: f64,
    pub fraud: PrecisionRecallF1,
    pub normal: PrecisionRecallF1,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("label and prediction lists have different lengths ({truth} vs {pred})")]
    LengthMismatch { truth: usize, pred: usize },
    #[error("no records to evaluate")]
    Empty,
    #[error("a class has no records, rates are undefined")]
    DegenerateClass,
    #[error("both classes must be present")]
    SingleClass,
}

/// Counts the confusion matrix of predictions against truth.
pub fn confusion(y_true: &[Label], y_pred: &[Label]) -> Result<ConfusionMatrix, EvalError> {
    if y_true.len() != y_pred.len() {
        return Err(EvalError::LengthMismatch {
            truth: y_true.len(),
            pred: y_pred.len(),
        });
    }
    if y_true.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut cm = ConfusionMatrix {
        tp: 0,
        fp: 0,
        tn: 0,
        fn_: 0,
    };
    for (t, p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (Label::Fraud, Label::Fraud) => cm.tp += 1,
            (Label::Fraud, Label::Normal) => cm.fn_ += 1,
            (Label::Normal, Label::Fraud) => cm.fp += 1,
            (Label::Normal, Label::Normal) => cm.tn += 1,
        }
    }
    Ok(cm)
}

fn prf(tp: f64, fp: f64, fn_: f64) -> PrecisionRecallF1 {
    let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
    let recall = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    PrecisionRecallF1 {
        precision,
        recall,
        f1,
    }
}

/// Per-class precision/recall/F1 and accuracy from a confusion matrix.
pub fn class_metrics(cm: &ConfusionMatrix) -> ClassMetrics {
    let (tp, fp, tn, fn_) = (cm.tp as f64, cm.fp as f64, cm.tn as f64, cm.fn_ as f64);
    ClassMetrics {
        accuracy: (tp + tn) / cm.total() as f64,
        fraud: prf(tp, fp, fn_),
        // the normal block is the mirrored matrix: tn plays tp's role
        normal: prf(tn, fn_, fp),
    }
}

/// Per-class error rates in percent: the share of normal SMSs flagged
/// fraud and the share of fraud SMSs missed.
pub fn rates(cm: &ConfusionMatrix) -> Result<(f64, f64), EvalError> {
    if cm.actual_normal() == 0 || cm.actual_fraud() == 0 {
        return Err(EvalError::DegenerateClass);
    }
    let fp_pct = 100.0 * cm.fp as f64 / cm.actual_normal() as f64;
    let fn_pct = 100.0 * cm.fn_ as f64 / cm.actual_fraud() as f64;
    Ok((fp_pct, fn_pct))
}

/// Rank-based (Mann-Whitney) AUC with average ranks for ties: the
/// probability that a random fraud example scores above a random normal
/// example, counting ties as half.
pub fn auc_roc(y_true: &[Label], scores: &[f64]) -> Result<f64, EvalError> {
    if y_true.len() != scores.len() {
        return Err(EvalError::LengthMismatch {
            truth: y_true.len(),
            pred: scores.len(),
        });
    }
    if y_true.is_empty() {
        return Err(EvalError::Empty);
    }
    let n_fraud = y_true.iter().filter(|l| **l == Label::Fraud).count();
    let n_normal = y_true.len() - n_fraud;
    if n_fraud == 0 || n_normal == 0 {
        return Err(EvalError::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());

    // average ranks over tie groups (ranks are 1-based)
    let mut rank_sum_fraud = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let avg_rank = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            if y_true[idx] == Label::Fraud {
                rank_sum_fraud += avg_rank;
            }
        }
        i = j + 1;
    }
    let nf = n_fraud as f64;
    let nn = n_normal as f64;
    Ok((rank_sum_fraud - nf * (nf + 1.0) / 2.0) / (nf * nn))
}

/// One misclassified record, for error-analysis tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Misclassified {
    pub sms_id: String,
    pub truth: Label,
    pub predicted: Label,
}

/// Full evaluation of one model on one test split. Serializes losslessly
/// to and from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub dataset_tag: String,
    pub model: String,
    pub tuned: bool,
    pub hyperparameters: serde_json::Value,
    pub confusion: ConfusionMatrix,
    pub metrics: ClassMetrics,
    pub auc_roc: f64,
    pub fp_pct: f64,
    pub fn_pct: f64,
    pub misclassified: Vec<Misclassified>,
    pub fingerprint: String,
}

/// Assembles the full metric suite for one evaluated cell.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    dataset_tag: &str,
    model: &str,
    tuned: bool,
    hyperparameters: serde_json::Value,
    sms_ids: &[String],
    y_true: &[Label],
    y_pred: &[Label],
    scores: &[f64],
    fingerprint: &str,
) -> Result<EvaluationReport, EvalError> {
    let cm = confusion(y_true, y_pred)?;
    let metrics = class_metrics(&cm);
    let auc = auc_roc(y_true, scores)?;
    let (fp_pct, fn_pct) = rates(&cm)?;
    let misclassified = sms_ids
        .iter()
        .zip(y_true.iter().zip(y_pred))
        .filter(|(_, (t, p))| t != p)
        .map(|(id, (t, p))| Misclassified {
            sms_id: id.clone(),
            truth: *t,
            predicted: *p,
        })
        .collect();
    Ok(EvaluationReport {
        dataset_tag: dataset_tag.to_string(),
        model: model.to_string(),
        tuned,
        hyperparameters,
        confusion: cm,
        metrics,
        auc_roc: auc,
        fp_pct,
        fn_pct,
        misclassified,
        fingerprint: fingerprint.to_string(),
    })
}
