//! Soft-margin SVM trained by sequential minimal optimization.
//!
//! The dual is solved by pairwise alpha updates with an error cache and
//! Platt's second-choice heuristic, until every sample satisfies the KKT
//! conditions within `tol` or the pass budget runs out. Only support
//! vectors (alpha > 1e-9) are stored.

use serde::{Deserialize, Serialize};

use super::{check_consistent_dims, check_two_classes, ClassifierError};
use crate::corpus::Label;
use crate::textproc::FeatureVector;

/// Kernel family. The sigmoid kernel uses coef0 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Linear,
    Rbf,
    Sigmoid,
}

impl KernelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            KernelKind::Linear => "linear",
            KernelKind::Rbf => "rbf",
            KernelKind::Sigmoid => "sigmoid",
        }
    }
}

/// Evaluates the kernel on two sparse vectors.
///
/// Linear: `x.z`; RBF: `exp(-gamma * ||x - z||^2)`;
/// sigmoid: `tanh(gamma * x.z)`. `gamma` must be positive for the RBF and
/// sigmoid kernels.
pub fn kernel_eval(kernel: KernelKind, gamma: f64, x: &FeatureVector, z: &FeatureVector) -> f64 {
    match kernel {
        KernelKind::Linear => x.dot(z),
        KernelKind::Rbf => {
            debug_assert!(gamma > 0.0);
            (-gamma * x.dist_sq(z)).exp()
        }
        KernelKind::Sigmoid => {
            debug_assert!(gamma > 0.0);
            (gamma * x.dot(z)).tanh()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub kernel: KernelKind,
    pub c: f64,
    pub gamma: f64,
    pub tol: f64,
    pub max_passes: usize,
}

impl Default for SvmConfig {
    fn default() -> SvmConfig {
        SvmConfig {
            kernel: KernelKind::Rbf,
            c: 1.0,
            gamma: 1.0,
            tol: 1e-3,
            max_passes: 100,
        }
    }
}

/// Fitted SVM: support vectors with dual coefficients `alpha_i * y_i` and
/// the bias. `0 <= alpha_i <= C` and the coefficients sum to ~0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub kernel: KernelKind,
    pub c: f64,
    pub gamma: f64,
    pub tol: f64,
    pub support_vectors: Vec<FeatureVector>,
    /// alpha_i * y_i per support vector
    pub coefficients: Vec<f64>,
    pub bias: f64,
    dim: usize,
}

impl SvmModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_support(&self) -> usize {
        self.support_vectors.len()
    }
}

/// Signed decision value `f(x) = sum_i alpha_i y_i K(x_i, x) + b`.
/// Fraud is predicted when `f(x) >= 0`.
pub fn svm_decision(model: &SvmModel, x: &FeatureVector) -> f64 {
    let mut f = model.bias;
    for (sv, coef) in model.support_vectors.iter().zip(&model.coefficients) {
        f += coef * kernel_eval(model.kernel, model.gamma, sv, x);
    }
    f
}

/// Kernel-independent pairwise products, reusable across kernel and gamma
/// choices on the same training set.
pub struct GramCache {
    n: usize,
    dot: Vec<f64>,
}

impl GramCache {
    pub fn new(x: &[FeatureVector]) -> GramCache {
        let n = x.len();
        let mut dot = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let d = x[i].dot(&x[j]);
                dot[i * n + j] = d;
                dot[j * n + i] = d;
            }
        }
        GramCache { n, dot }
    }

    /// Materializes the kernel matrix for one (kernel, gamma) choice.
    fn kernel_matrix(&self, kernel: KernelKind, gamma: f64) -> Vec<f64> {
        let n = self.n;
        match kernel {
            KernelKind::Linear => self.dot.clone(),
            KernelKind::Rbf => {
                let norms: Vec<f64> = (0..n).map(|i| self.dot[i * n + i]).collect();
                let mut k = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let d2 = (norms[i] + norms[j] - 2.0 * self.dot[i * n + j]).max(0.0);
                        k[i * n + j] = (-gamma * d2).exp();
                    }
                }
                k
            }
            KernelKind::Sigmoid => self.dot.iter().map(|d| (gamma * d).tanh()).collect(),
        }
    }
}

/// Deterministic scan-offset generator for the SMO fallback heuristics.
struct ScanRng(u64);

impl ScanRng {
    fn next_offset(&mut self, n: usize) -> usize {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        (x.wrapping_mul(0x2545_f491_4f6c_dd1d) % n as u64) as usize
    }
}

struct Smo<'a> {
    k: &'a [f64],
    y: &'a [f64],
    n: usize,
    c: f64,
    tol: f64,
    alpha: Vec<f64>,
    errors: Vec<f64>,
    bias: f64,
    scan: ScanRng,
}

impl<'a> Smo<'a> {
    fn new(k: &'a [f64], y: &'a [f64], c: f64, tol: f64) -> Smo<'a> {
        let n = y.len();
        Smo {
            k,
            y,
            n,
            c,
            tol,
            alpha: vec![0.0; n],
            errors: y.iter().map(|yi| -yi).collect(),
            bias: 0.0,
            scan: ScanRng(0x5eed_0000_0001 ^ n as u64),
        }
    }

    #[inline]
    fn kij(&self, i: usize, j: usize) -> f64 {
        self.k[i * self.n + j]
    }

    fn non_bound(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.alpha[i] > 0.0 && self.alpha[i] < self.c)
            .collect()
    }

    /// Dual objective restricted to the (i1, i2) pair at candidate values,
    /// used when the second derivative along the constraint is not
    /// positive (indefinite kernels).
    fn pair_objective(&self, i1: usize, i2: usize, a1: f64, a2: f64) -> f64 {
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (k11, k12, k22) = (self.kij(i1, i1), self.kij(i1, i2), self.kij(i2, i2));
        let f1 = self.errors[i1] + y1;
        let f2 = self.errors[i2] + y2;
        let alph1 = self.alpha[i1];
        let alph2 = self.alpha[i2];
        let v1 = f1 - self.bias - alph1 * y1 * k11 - alph2 * y2 * k12;
        let v2 = f2 - self.bias - alph1 * y1 * k12 - alph2 * y2 * k22;
        a1 + a2
            - 0.5 * k11 * a1 * a1
            - 0.5 * k22 * a2 * a2
            - y1 * y2 * k12 * a1 * a2
            - y1 * a1 * v1
            - y2 * a2 * v2
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 {
            return false;
        }
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (alph1, alph2) = (self.alpha[i1], self.alpha[i2]);
        let (e1, e2) = (self.errors[i1], self.errors[i2]);
        let s = y1 * y2;
        let (low, high) = if (y1 - y2).abs() > 0.5 {
            ((alph2 - alph1).max(0.0), (self.c + alph2 - alph1).min(self.c))
        } else {
            ((alph2 + alph1 - self.c).max(0.0), (alph2 + alph1).min(self.c))
        };
        if high - low < 1e-12 {
            return false;
        }
        let (k11, k12, k22) = (self.kij(i1, i1), self.kij(i1, i2), self.kij(i2, i2));
        let eta = k11 + k22 - 2.0 * k12;
        let mut a2 = if eta > 0.0 {
            (alph2 + y2 * (e1 - e2) / eta).clamp(low, high)
        } else {
            let a1_at = |a2v: f64| alph1 + s * (alph2 - a2v);
            let obj_low = self.pair_objective(i1, i2, a1_at(low), low);
            let obj_high = self.pair_objective(i1, i2, a1_at(high), high);
            let eps = 1e-12 * (1.0 + obj_low.abs() + obj_high.abs());
            if obj_low > obj_high + eps {
                low
            } else if obj_low < obj_high - eps {
                high
            } else {
                return false;
            }
        };
        if (a2 - alph2).abs() < 1e-12 * (a2 + alph2 + 1e-12) {
            return false;
        }
        let mut a1 = alph1 + s * (alph2 - a2);
        // clear numerical dust at the box boundary
        if a1 < 0.0 {
            a1 = 0.0;
        } else if a1 > self.c {
            a1 = self.c;
        }
        if a2 < 0.0 {
            a2 = 0.0;
        } else if a2 > self.c {
            a2 = self.c;
        }

        let d1 = y1 * (a1 - alph1);
        let d2 = y2 * (a2 - alph2);
        let b1 = self.bias - e1 - d1 * k11 - d2 * k12;
        let b2 = self.bias - e2 - d1 * k12 - d2 * k22;
        let new_bias = if a1 > 0.0 && a1 < self.c {
            b1
        } else if a2 > 0.0 && a2 < self.c {
            b2
        } else {
            (b1 + b2) / 2.0
        };
        let delta_b = new_bias - self.bias;
        self.bias = new_bias;
        self.alpha[i1] = a1;
        self.alpha[i2] = a2;
        for k in 0..self.n {
            self.errors[k] += d1 * self.kij(i1, k) + d2 * self.kij(i2, k) + delta_b;
        }
        true
    }

    fn examine(&mut self, i2: usize) -> bool {
        let y2 = self.y[i2];
        let alph2 = self.alpha[i2];
        let e2 = self.errors[i2];
        let r2 = e2 * y2;
        let violates =
            (r2 < -self.tol && alph2 < self.c) || (r2 > self.tol && alph2 > 0.0);
        if !violates {
            return false;
        }
        let non_bound = self.non_bound();
        if non_bound.len() > 1 {
            let i1 = non_bound
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    let da = (self.errors[a] - e2).abs();
                    let db = (self.errors[b] - e2).abs();
                    da.partial_cmp(&db).unwrap().then(b.cmp(&a))
                })
                .unwrap();
            if self.take_step(i1, i2) {
                return true;
            }
        }
        if !non_bound.is_empty() {
            let start = self.scan.next_offset(non_bound.len());
            for off in 0..non_bound.len() {
                let i1 = non_bound[(start + off) % non_bound.len()];
                if self.take_step(i1, i2) {
                    return true;
                }
            }
        }
        let start = self.scan.next_offset(self.n);
        for off in 0..self.n {
            let i1 = (start + off) % self.n;
            if self.take_step(i1, i2) {
                return true;
            }
        }
        false
    }

    fn solve(&mut self, max_passes: usize) {
        let mut examine_all = true;
        let mut num_changed = 1usize;
        let mut full_sweeps = 0usize;
        let mut bound_sweeps = 0usize;
        while num_changed > 0 || examine_all {
            num_changed = 0;
            if examine_all {
                full_sweeps += 1;
                if full_sweeps > max_passes {
                    break;
                }
                for i in 0..self.n {
                    num_changed += usize::from(self.examine(i));
                }
            } else {
                bound_sweeps += 1;
                if bound_sweeps > max_passes.saturating_mul(50) {
                    break;
                }
                for i in self.non_bound() {
                    num_changed += usize::from(self.examine(i));
                }
            }
            if examine_all {
                examine_all = false;
            } else if num_changed == 0 {
                examine_all = true;
            }
        }
    }
}

/// Trains on a prebuilt [`GramCache`]; used by the grid search to share
/// pairwise products across kernel and gamma choices.
pub(crate) fn train_svm_with_gram(
    x: &[FeatureVector],
    gram: &GramCache,
    y: &[Label],
    config: &SvmConfig,
) -> Result<SvmModel, ClassifierError> {
    check_two_classes(y)?;
    let dim = check_consistent_dims(x)?;
    if config.c <= 0.0 || config.c.is_nan() {
        return Err(ClassifierError::InvalidConfig(format!(
            "C must be positive, got {}",
            config.c
        )));
    }
    if config.kernel != KernelKind::Linear && (config.gamma <= 0.0 || config.gamma.is_nan()) {
        return Err(ClassifierError::InvalidConfig(format!(
            "gamma must be positive for {} kernel, got {}",
            config.kernel.as_str(),
            config.gamma
        )));
    }
    let targets: Vec<f64> = y
        .iter()
        .map(|l| if *l == Label::Fraud { 1.0 } else { -1.0 })
        .collect();
    let k = gram.kernel_matrix(config.kernel, config.gamma);
    let mut smo = Smo::new(&k, &targets, config.c, config.tol);
    smo.solve(config.max_passes);

    let mut support_vectors = Vec::new();
    let mut coefficients = Vec::new();
    for i in 0..x.len() {
        if smo.alpha[i] > 1e-9 {
            support_vectors.push(x[i].clone());
            coefficients.push(smo.alpha[i] * targets[i]);
        }
    }
    Ok(SvmModel {
        kernel: config.kernel,
        c: config.c,
        gamma: config.gamma,
        tol: config.tol,
        support_vectors,
        coefficients,
        bias: smo.bias,
        dim,
    })
}

/// Trains a soft-margin SVM with the SMO solver.
pub fn train_svm(
    x: &[FeatureVector],
    y: &[Label],
    config: &SvmConfig,
) -> Result<SvmModel, ClassifierError> {
    let gram = GramCache::new(x);
    train_svm_with_gram(x, &gram, y, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::test_util::{fv, labels};

    #[test]
    fn kernel_identities() {
        let x = fv(3, &[(0, 0.6), (2, 0.8)]);
        let z = fv(3, &[(1, 1.0)]);
        // RBF of a point with itself is 1 regardless of gamma
        assert_eq!(kernel_eval(KernelKind::Rbf, 2.5, &x, &x), 1.0);
        // linear kernel of orthogonal sparse vectors is 0
        assert_eq!(kernel_eval(KernelKind::Linear, 1.0, &x, &z), 0.0);
        // unit vectors at right angles: ||x-z||^2 = 2
        let e1 = fv(2, &[(0, 1.0)]);
        let e2 = fv(2, &[(1, 1.0)]);
        let expected = (-2.0f64).exp();
        assert!((kernel_eval(KernelKind::Rbf, 1.0, &e1, &e2) - expected).abs() < 1e-15);
    }

    #[test]
    fn sigmoid_kernel_uses_zero_coef0() {
        let x = fv(1, &[(0, 0.5)]);
        let z = fv(1, &[(0, 0.5)]);
        let expected = (0.7f64 * 0.25).tanh();
        assert!((kernel_eval(KernelKind::Sigmoid, 0.7, &x, &z) - expected).abs() < 1e-15);
    }

    #[test]
    fn two_point_problem_has_analytic_solution() {
        // points +1 (fraud) and -1 (normal): boundary at 0, margins +-1
        let x = vec![fv(1, &[(0, 1.0)]), fv(1, &[(0, -1.0)])];
        let y = labels(1, 1);
        let config = SvmConfig {
            kernel: KernelKind::Linear,
            c: 10.0,
            gamma: 1.0,
            tol: 1e-6,
            max_passes: 100,
        };
        let model = train_svm(&x, &y, &config).unwrap();
        assert!((svm_decision(&model, &x[0]) - 1.0).abs() < 1e-6);
        assert!((svm_decision(&model, &x[1]) + 1.0).abs() < 1e-6);
        assert!(svm_decision(&model, &fv(1, &[])).abs() < 1e-6);
        // alpha = 0.5 for both
        assert_eq!(model.n_support(), 2);
        for coef in &model.coefficients {
            assert!((coef.abs() - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn dual_constraints_hold() {
        let x = vec![
            fv(2, &[(0, 1.0)]),
            fv(2, &[(0, 0.8), (1, 0.3)]),
            fv(2, &[(1, 1.0)]),
            fv(2, &[(0, 0.2), (1, 0.9)]),
            fv(2, &[(0, 0.5), (1, 0.5)]),
        ];
        let y = vec![
            Label::Fraud,
            Label::Fraud,
            Label::Normal,
            Label::Normal,
            Label::Fraud,
        ];
        for kernel in [KernelKind::Linear, KernelKind::Rbf, KernelKind::Sigmoid] {
            let config = SvmConfig {
                kernel,
                c: 5.0,
                gamma: 0.5,
                tol: 1e-4,
                max_passes: 200,
            };
            let model = train_svm(&x, &y, &config).unwrap();
            let coef_sum: f64 = model.coefficients.iter().sum();
            assert!(coef_sum.abs() <= 1e-6, "{kernel:?}: sum {coef_sum}");
            for coef in &model.coefficients {
                assert!(coef.abs() <= config.c + 1e-9, "{kernel:?}");
                assert!(coef.abs() > 1e-9);
            }
        }
    }

    #[test]
    fn margin_support_vectors_sit_near_one() {
        let x = vec![
            fv(1, &[(0, 2.0)]),
            fv(1, &[(0, 1.0)]),
            fv(1, &[(0, -1.0)]),
            fv(1, &[(0, -2.0)]),
        ];
        let y = labels(2, 2);
        let config = SvmConfig {
            kernel: KernelKind::Linear,
            c: 100.0,
            gamma: 1.0,
            tol: 1e-6,
            max_passes: 200,
        };
        let model = train_svm(&x, &y, &config).unwrap();
        for (sv, coef) in model.support_vectors.iter().zip(&model.coefficients) {
            let alpha = coef.abs();
            if alpha > 1e-6 && alpha < config.c - 1e-6 {
                assert!(
                    (svm_decision(&model, sv).abs() - 1.0).abs() < 1e-4,
                    "non-bound SV must lie on the margin"
                );
            }
        }
    }

    #[test]
    fn rbf_decision_decays_to_bias_far_from_support() {
        let x = vec![fv(1, &[(0, 1.0)]), fv(1, &[(0, -1.0)])];
        let y = labels(1, 1);
        let config = SvmConfig {
            kernel: KernelKind::Rbf,
            c: 1.0,
            gamma: 1.0,
            tol: 1e-4,
            max_passes: 100,
        };
        let model = train_svm(&x, &y, &config).unwrap();
        let far = fv(1, &[(0, 1e4)]);
        assert!((svm_decision(&model, &far) - model.bias).abs() < 1e-9);
    }

    #[test]
    fn hand_built_model_matches_manual_sum() {
        let sv = vec![
            fv(1, &[(0, 1.0)]),
            fv(1, &[(0, -1.0)]),
            fv(1, &[(0, 0.5)]),
        ];
        let model = SvmModel {
            kernel: KernelKind::Linear,
            c: 1.0,
            gamma: 1.0,
            tol: 1e-3,
            support_vectors: sv,
            coefficients: vec![0.7, -0.5, -0.2],
            bias: 0.1,
            dim: 1,
        };
        let x = fv(1, &[(0, 2.0)]);
        let manual = 0.7 * 2.0 + (-0.5) * -2.0 + (-0.2) * 1.0 + 0.1;
        assert!((svm_decision(&model, &x) - manual).abs() < 1e-15);
    }

    #[test]
    fn training_is_deterministic() {
        let x = vec![
            fv(2, &[(0, 1.0)]),
            fv(2, &[(0, 0.8), (1, 0.2)]),
            fv(2, &[(1, 1.0)]),
            fv(2, &[(1, 0.7)]),
        ];
        let y = labels(2, 2);
        let config = SvmConfig::default();
        let a = train_svm(&x, &y, &config).unwrap();
        let b = train_svm(&x, &y, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_single_class_and_bad_config() {
        let x = vec![fv(1, &[(0, 1.0)]), fv(1, &[(0, 2.0)])];
        assert!(matches!(
            train_svm(&x, &[Label::Fraud, Label::Fraud], &SvmConfig::default()).unwrap_err(),
            ClassifierError::SingleClass
        ));
        let bad = SvmConfig {
            c: 0.0,
            ..SvmConfig::default()
        };
        assert!(matches!(
            train_svm(&x, &labels(1, 1), &bad).unwrap_err(),
            ClassifierError::InvalidConfig(_)
        ));
    }
}
