//! Gaussian naive Bayes over dense per-class feature statistics.

use serde::{Deserialize, Serialize};

use super::{check_consistent_dims, check_two_classes, ClassifierError};
use crate::corpus::Label;
use crate::textproc::FeatureVector;

const LN_2PI: f64 = 1.8378770664093453;

/// Class-conditional Gaussian model with smoothed variances.
///
/// The applied smoothing is `epsilon = var_smoothing * max_j Var(x_j)`,
/// where the variance is taken over the whole training set; epsilon is
/// added to every per-class variance, so all of them stay positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNbModel {
    pub prior_fraud: f64,
    pub prior_normal: f64,
    pub fraud_mean: Vec<f64>,
    pub fraud_var: Vec<f64>,
    pub normal_mean: Vec<f64>,
    pub normal_var: Vec<f64>,
    pub var_smoothing: f64,
    pub epsilon: f64,
}

impl GaussianNbModel {
    pub fn dim(&self) -> usize {
        self.fraud_mean.len()
    }
}

struct ClassAccumulator {
    n: f64,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl ClassAccumulator {
    fn new(dim: usize) -> ClassAccumulator {
        ClassAccumulator {
            n: 0.0,
            sum: vec![0.0; dim],
            sum_sq: vec![0.0; dim],
        }
    }

    fn add(&mut self, x: &FeatureVector) {
        self.n += 1.0;
        for &(i, v) in x.entries() {
            self.sum[i as usize] += v;
            self.sum_sq[i as usize] += v * v;
        }
    }

    fn mean_var(&self) -> (Vec<f64>, Vec<f64>) {
        let mean: Vec<f64> = self.sum.iter().map(|s| s / self.n).collect();
        let var: Vec<f64> = self
            .sum_sq
            .iter()
            .zip(&mean)
            .map(|(sq, m)| (sq / self.n - m * m).max(0.0))
            .collect();
        (mean, var)
    }
}

/// Fits per-class feature means and variances with empirical priors.
pub fn train_gaussian_nb(
    x: &[FeatureVector],
    y: &[Label],
    var_smoothing: f64,
) -> Result<GaussianNbModel, ClassifierError> {
    check_two_classes(y)?;
    if var_smoothing <= 0.0 || var_smoothing.is_nan() {
        return Err(ClassifierError::InvalidConfig(format!(
            "var_smoothing must be positive, got {var_smoothing}"
        )));
    }
    let dim = check_consistent_dims(x)?;
    let mut fraud = ClassAccumulator::new(dim);
    let mut normal = ClassAccumulator::new(dim);
    let mut total = ClassAccumulator::new(dim);
    for (xi, yi) in x.iter().zip(y) {
        total.add(xi);
        match yi {
            Label::Fraud => fraud.add(xi),
            Label::Normal => normal.add(xi),
        }
    }
    let (_, total_var) = total.mean_var();
    let max_total_var = total_var.iter().cloned().fold(0.0, f64::max);
    // all-constant features leave nothing to scale by; fall back to the
    // raw smoothing value so variances stay positive
    let epsilon = if max_total_var > 0.0 {
        var_smoothing * max_total_var
    } else {
        var_smoothing
    };

    let (fraud_mean, mut fraud_var) = fraud.mean_var();
    let (normal_mean, mut normal_var) = normal.mean_var();
    for v in fraud_var.iter_mut().chain(normal_var.iter_mut()) {
        *v += epsilon;
    }
    Ok(GaussianNbModel {
        prior_fraud: fraud.n / total.n,
        prior_normal: normal.n / total.n,
        fraud_mean,
        fraud_var,
        normal_mean,
        normal_var,
        var_smoothing,
        epsilon,
    })
}

/// Log-density of the class-conditional Gaussian at the sparse point `x`.
///
/// Computed as the all-zeros baseline plus per-nonzero corrections, so the
/// cost is O(dim) once plus O(nnz) per correction.
fn class_log_joint(x: &FeatureVector, mean: &[f64], var: &[f64], log_prior: f64) -> f64 {
    let mut log_density = 0.0;
    for (m, v) in mean.iter().zip(var) {
        log_density += -0.5 * (LN_2PI + v.ln()) - m * m / (2.0 * v);
    }
    for &(i, xv) in x.entries() {
        let (m, v) = (mean[i as usize], var[i as usize]);
        let d = xv - m;
        log_density += (m * m - d * d) / (2.0 * v);
    }
    log_prior + log_density
}

/// Posterior class probabilities, normalized in the log domain.
/// The two probabilities sum to 1 within 1e-12.
pub fn nb_posterior(model: &GaussianNbModel, x: &FeatureVector) -> (f64, f64) {
    let lf = class_log_joint(x, &model.fraud_mean, &model.fraud_var, model.prior_fraud.ln());
    let ln = class_log_joint(
        x,
        &model.normal_mean,
        &model.normal_var,
        model.prior_normal.ln(),
    );
    let m = lf.max(ln);
    let ef = (lf - m).exp();
    let en = (ln - m).exp();
    let z = ef + en;
    (ef / z, en / z)
}
