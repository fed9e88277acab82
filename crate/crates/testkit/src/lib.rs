//! Independent oracles used by the test suites.
//!
//! Everything here recomputes results through a different route than the
//! library: dense arithmetic from first principles, finite differences,
//! projected-gradient quadratic programming and exhaustive pair counting.
//! The oracles touch only the library's public data accessors, never its
//! computation paths.

use smsfraud_core::corpus::Label;
use smsfraud_core::textproc::{FeatureVector, TokenizerConfig};

/// Dense TF-IDF recomputation: tokenize, count, build df, apply
/// `ln((1+N)/(1+df)) + 1`, multiply by raw counts and L2-normalize.
/// Vocabulary order is first-seen, matching the fitted model's contract.
pub fn dense_tfidf(texts: &[&str], tokenizer: &TokenizerConfig) -> Vec<Vec<f64>> {
    let mut vocab: Vec<String> = Vec::new();
    let token_lists: Vec<Vec<String>> = texts.iter().map(|t| tokenizer.tokenize(t)).collect();
    for tokens in &token_lists {
        for token in tokens {
            if !vocab.contains(token) {
                vocab.push(token.clone());
            }
        }
    }
    let n_docs = texts.len() as f64;
    let mut df = vec![0.0; vocab.len()];
    for tokens in &token_lists {
        for (j, term) in vocab.iter().enumerate() {
            if tokens.contains(term) {
                df[j] += 1.0;
            }
        }
    }
    let idf: Vec<f64> = df
        .iter()
        .map(|d| ((1.0 + n_docs) / (1.0 + d)).ln() + 1.0)
        .collect();

    token_lists
        .iter()
        .map(|tokens| {
            let mut row = vec![0.0; vocab.len()];
            for (j, term) in vocab.iter().enumerate() {
                let tf = tokens.iter().filter(|t| *t == term).count() as f64;
                row[j] = tf * idf[j];
            }
            let norm = row.iter().map(|w| w * w).sum::<f64>().sqrt();
            if norm > 0.0 {
                for w in &mut row {
                    *w /= norm;
                }
            }
            row
        })
        .collect()
}

/// Numerical gradient of `f` at `point` by central differences.
pub fn central_difference_gradient<F>(f: F, point: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut grad = vec![0.0; point.len()];
    let mut work = point.to_vec();
    for i in 0..point.len() {
        let original = work[i];
        work[i] = original + h;
        let above = f(&work);
        work[i] = original - h;
        let below = f(&work);
        work[i] = original;
        grad[i] = (above - below) / (2.0 * h);
    }
    grad
}

/// Exhaustive AUC: (wins + half-ties) over all fraud-normal score pairs.
pub fn pair_counting_auc(y: &[Label], scores: &[f64]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, yi) in y.iter().enumerate() {
        if *yi != Label::Fraud {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if *yj != Label::Normal {
                continue;
            }
            pairs += 1.0;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

/// Dense kernel evaluation from first principles on dense vectors.
fn dense_kernel(kind: DenseKernel, gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, z)| x * z).sum();
    match kind {
        DenseKernel::Linear => dot,
        DenseKernel::Rbf => {
            let d2: f64 = a.iter().zip(b).map(|(x, z)| (x - z) * (x - z)).sum();
            (-gamma * d2).exp()
        }
        DenseKernel::Sigmoid => (gamma * dot).tanh(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenseKernel {
    Linear,
    Rbf,
    Sigmoid,
}

/// Solution of the soft-margin SVM dual found by projected gradient
/// ascent on the box with the equality constraint re-projected each step.
pub struct QpSolution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub decision: Vec<f64>,
}

/// Brute-force dual solver for tiny instances. Maximizes
/// `sum(alpha) - 0.5 * alpha' Q alpha` over `0 <= alpha <= C`,
/// `sum(alpha_i y_i) = 0`, by many small projected-gradient steps.
pub fn dense_qp_svm(
    x: &[Vec<f64>],
    y: &[f64],
    kernel: DenseKernel,
    gamma: f64,
    c: f64,
    iterations: usize,
) -> QpSolution {
    let n = x.len();
    assert!(n <= 16, "oracle is for tiny instances");
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = y[i] * y[j] * dense_kernel(kernel, gamma, &x[i], &x[j]);
        }
    }

    let mut alpha = vec![0.0; n];
    let step = 1.0 / (1.0 + q.iter().map(|row| row.iter().sum::<f64>().abs()).fold(0.0, f64::max));
    for _ in 0..iterations {
        // gradient of the dual objective
        let grad: Vec<f64> = (0..n)
            .map(|i| 1.0 - (0..n).map(|j| q[i][j] * alpha[j]).sum::<f64>())
            .collect();
        for i in 0..n {
            alpha[i] += step * grad[i];
        }
        project_box_hyperplane(&mut alpha, y, c);
    }

    let decision_raw = |xi: &[f64]| -> f64 {
        (0..n)
            .map(|j| alpha[j] * y[j] * dense_kernel(kernel, gamma, &x[j], xi))
            .sum()
    };
    // bias from non-bound support vectors, else from the midpoint rule
    let mut bias_sum = 0.0;
    let mut bias_count = 0usize;
    for i in 0..n {
        if alpha[i] > 1e-6 * c && alpha[i] < c * (1.0 - 1e-6) {
            bias_sum += y[i] - decision_raw(&x[i]);
            bias_count += 1;
        }
    }
    let bias = if bias_count > 0 {
        bias_sum / bias_count as f64
    } else {
        // fall back to averaging the KKT-feasible interval endpoints
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for i in 0..n {
            let margin = decision_raw(&x[i]);
            if (y[i] > 0.0 && alpha[i] < c * (1.0 - 1e-6))
                || (y[i] < 0.0 && alpha[i] > 1e-6 * c)
            {
                lo = lo.max(y[i] - margin);
            }
            if (y[i] > 0.0 && alpha[i] > 1e-6 * c)
                || (y[i] < 0.0 && alpha[i] < c * (1.0 - 1e-6))
            {
                hi = hi.min(y[i] - margin);
            }
        }
        if lo.is_finite() && hi.is_finite() {
            (lo + hi) / 2.0
        } else if lo.is_finite() {
            lo
        } else if hi.is_finite() {
            hi
        } else {
            0.0
        }
    };
    let decision = x.iter().map(|xi| decision_raw(xi) + bias).collect();
    QpSolution {
        alpha,
        bias,
        decision,
    }
}

/// Projects onto `{0 <= a <= C} ∩ {sum a_i y_i = 0}` by bisection on the
/// hyperplane multiplier.
fn project_box_hyperplane(alpha: &mut [f64], y: &[f64], c: f64) {
    let clipped_sum = |lambda: f64, alpha: &[f64]| -> f64 {
        alpha
            .iter()
            .zip(y)
            .map(|(&a, &yi)| (a - lambda * yi).clamp(0.0, c) * yi)
            .sum()
    };
    // g is non-increasing in lambda; bracket a root
    let mut lo = -1e3 * (1.0 + c);
    let mut hi = 1e3 * (1.0 + c);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if clipped_sum(mid, alpha) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    for (a, &yi) in alpha.iter_mut().zip(y) {
        *a = (*a - lambda * yi).clamp(0.0, c);
    }
}

/// Converts a sparse feature vector into dense form for oracle use.
pub fn to_dense(x: &FeatureVector) -> Vec<f64> {
    x.to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_restores_constraints() {
        let y = vec![1.0, -1.0, 1.0, -1.0];
        let mut alpha = vec![5.0, 0.2, -3.0, 9.9];
        project_box_hyperplane(&mut alpha, &y, 2.0);
        let sum: f64 = alpha.iter().zip(&y).map(|(a, yi)| a * yi).sum();
        assert!(sum.abs() < 1e-9, "constraint sum {sum}");
        for a in &alpha {
            assert!(*a >= -1e-12 && *a <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn qp_solves_the_two_point_problem() {
        let x = vec![vec![1.0], vec![-1.0]];
        let y = vec![1.0, -1.0];
        let solution = dense_qp_svm(&x, &y, DenseKernel::Linear, 1.0, 10.0, 20_000);
        assert!((solution.alpha[0] - 0.5).abs() < 1e-4);
        assert!((solution.alpha[1] - 0.5).abs() < 1e-4);
        assert!(solution.bias.abs() < 1e-4);
        assert!((solution.decision[0] - 1.0).abs() < 1e-3);
        assert!((solution.decision[1] + 1.0).abs() < 1e-3);
    }

    #[test]
    fn finite_differences_match_a_polynomial() {
        let f = |p: &[f64]| p[0] * p[0] + 3.0 * p[0] * p[1];
        let grad = central_difference_gradient(f, &[2.0, 5.0], 1e-6);
        assert!((grad[0] - (4.0 + 15.0)).abs() < 1e-5);
        assert!((grad[1] - 6.0).abs() < 1e-5);
    }

    #[test]
    fn pair_counting_matches_known_value() {
        let y = vec![Label::Fraud, Label::Normal, Label::Fraud, Label::Normal];
        assert_eq!(pair_counting_auc(&y, &[0.9, 0.8, 0.7, 0.1]), 0.75);
    }
}
