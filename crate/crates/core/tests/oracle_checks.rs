//! Cross-checks against the independent oracles in smsfraud-testkit:
//! dense TF-IDF recomputation, central finite differences, a dense QP
//! solver for the SVM dual, and exhaustive AUC pair counting.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smsfraud_core::classifiers::{
    kernel_eval, logistic_gradient, logistic_loss, nb_posterior, svm_decision, train_gaussian_nb,
    train_logistic, train_svm, KernelKind, LogisticConfig, SvmConfig,
};
use smsfraud_core::corpus::Label;
use smsfraud_core::eval::auc_roc;
use smsfraud_core::textproc::{fit_tfidf, transform, FeatureVector, TokenizerConfig};
use smsfraud_testkit as oracle;

fn fv(dim: usize, entries: &[(u32, f64)]) -> FeatureVector {
    FeatureVector::new(dim, entries.to_vec())
}

// ---------------------------------------------------------------- TF-IDF

#[test]
fn tfidf_matches_dense_oracle_on_small_fixtures() {
    let fixtures: Vec<Vec<&str>> = vec![
        vec!["a b", "a c"],
        vec!["imbani *137# kuti", "imbani foni", "kuti kuti kuti"],
        vec!["moni", "moni moni", "moni bambo abwino", "zikomo kwambiri", "moni zikomo"],
        vec!["one two three four", "two three four five", "three four five six"],
    ];
    for texts in fixtures {
        let tokenizer = TokenizerConfig::raw();
        let model = fit_tfidf(&texts, &tokenizer).unwrap();
        let dense_rows = oracle::dense_tfidf(&texts, &tokenizer);
        for (text, expected) in texts.iter().zip(&dense_rows) {
            let got = transform(&model, text).to_dense();
            assert_eq!(got.len(), expected.len());
            for (g, e) in got.iter().zip(expected) {
                assert!(
                    (g - e).abs() < 1e-12,
                    "mismatch on {text:?}: {g} vs {e}"
                );
            }
        }
    }
}

#[test]
fn nonzero_transforms_are_unit_norm() {
    let texts = vec![
        "ndalama zanu zatumizidwa",
        "imbani *137# lero lero",
        "moni bambo",
    ];
    let model = fit_tfidf(&texts, &TokenizerConfig::raw()).unwrap();
    for text in &texts {
        let v = transform(&model, text);
        assert!((v.norm_sq().sqrt() - 1.0).abs() < 1e-9);
    }
}

// ------------------------------------------------------------- logistic

#[test]
fn logistic_gradient_matches_central_differences_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let dim = 6;
    let x: Vec<FeatureVector> = (0..12)
        .map(|_| {
            let mut entries: Vec<(u32, f64)> = Vec::new();
            for j in 0..dim as u32 {
                if rng.random_range(0..3) == 0 {
                    entries.push((j, rng.random_range(0.1..1.0)));
                }
            }
            FeatureVector::new(dim, entries)
        })
        .collect();
    let y: Vec<f64> = (0..12).map(|i| f64::from(i % 2 == 0)).collect();
    let lambda = 0.05;

    for point in 0..10 {
        let w: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
        let b: f64 = rng.random_range(-1.0..1.0);
        let (gw, gb) = logistic_gradient(&x, &y, &w, b, lambda);

        let mut packed = w.clone();
        packed.push(b);
        let objective = |p: &[f64]| logistic_loss(&x, &y, &p[..dim], p[dim], lambda);
        let numeric = oracle::central_difference_gradient(objective, &packed, 1e-6);

        for (j, (analytic, fd)) in gw.iter().chain(std::iter::once(&gb)).zip(&numeric).enumerate()
        {
            let scale = analytic.abs().max(fd.abs()).max(1e-8);
            let rel = (analytic - fd).abs() / scale;
            assert!(
                rel <= 1e-5,
                "point {point} coord {j}: analytic {analytic} vs fd {fd} (rel {rel})"
            );
        }
    }
}

#[test]
fn logistic_loss_is_non_increasing_along_the_iteration_prefixes() {
    let x = vec![
        fv(3, &[(0, 0.9)]),
        fv(3, &[(0, 0.5), (1, 0.5)]),
        fv(3, &[(1, 0.8)]),
        fv(3, &[(1, 0.3), (2, 0.7)]),
        fv(3, &[(2, 1.0)]),
        fv(3, &[(0, 0.2), (2, 0.4)]),
    ];
    let y = vec![
        Label::Fraud,
        Label::Fraud,
        Label::Normal,
        Label::Normal,
        Label::Fraud,
        Label::Normal,
    ];
    let targets: Vec<f64> = y
        .iter()
        .map(|l| f64::from(*l == Label::Fraud))
        .collect();
    // training is deterministic, so max_iter = k yields the k-th prefix of
    // the same trajectory; accepted losses must never increase
    let mut previous = f64::INFINITY;
    for k in 0..25 {
        let config = LogisticConfig {
            l2_lambda: Some(0.01),
            tol: 1e-12,
            max_iter: k,
        };
        let model = train_logistic(&x, &y, &config).unwrap();
        let loss_k = logistic_loss(&x, &targets, &model.weights, model.bias, 0.01);
        assert!(
            loss_k <= previous + 1e-15,
            "loss rose from {previous} to {loss_k} at prefix {k}"
        );
        previous = loss_k;
    }
}

// ------------------------------------------------------------------ SVM

struct SvmInstance {
    name: &'static str,
    x: Vec<FeatureVector>,
    y: Vec<Label>,
    kernel: KernelKind,
    gamma: f64,
    c: f64,
}

fn svm_fixture_instances() -> Vec<SvmInstance> {
    let mut instances = vec![
        SvmInstance {
            name: "two-point separable",
            x: vec![fv(1, &[(0, 1.0)]), fv(1, &[(0, -1.0)])],
            y: vec![Label::Fraud, Label::Normal],
            kernel: KernelKind::Linear,
            gamma: 1.0,
            c: 10.0,
        },
        SvmInstance {
            name: "overlapping line",
            x: vec![
                fv(1, &[(0, 2.0)]),
                fv(1, &[(0, 0.5)]),
                fv(1, &[(0, -0.4)]),
                fv(1, &[(0, 0.3)]),
                fv(1, &[(0, -0.6)]),
                fv(1, &[(0, -2.0)]),
            ],
            y: vec![
                Label::Fraud,
                Label::Fraud,
                Label::Fraud,
                Label::Normal,
                Label::Normal,
                Label::Normal,
            ],
            kernel: KernelKind::Linear,
            gamma: 1.0,
            c: 1.0,
        },
        SvmInstance {
            name: "2d rbf ring",
            x: vec![
                fv(2, &[(0, 0.1), (1, 0.1)]),
                fv(2, &[(0, 0.2)]),
                fv(2, &[(1, 0.15)]),
                fv(2, &[(0, 1.0), (1, 1.0)]),
                fv(2, &[(0, 1.2)]),
                fv(2, &[(1, 1.1)]),
            ],
            y: vec![
                Label::Fraud,
                Label::Fraud,
                Label::Fraud,
                Label::Normal,
                Label::Normal,
                Label::Normal,
            ],
            kernel: KernelKind::Rbf,
            gamma: 2.0,
            c: 5.0,
        },
        SvmInstance {
            name: "8 points mixed",
            x: vec![
                fv(2, &[(0, 0.9)]),
                fv(2, &[(0, 0.8), (1, 0.2)]),
                fv(2, &[(0, 0.6), (1, 0.1)]),
                fv(2, &[(0, 0.4), (1, 0.45)]),
                fv(2, &[(1, 0.9)]),
                fv(2, &[(0, 0.2), (1, 0.8)]),
                fv(2, &[(0, 0.1), (1, 0.6)]),
                fv(2, &[(0, 0.45), (1, 0.4)]),
            ],
            y: vec![
                Label::Fraud,
                Label::Fraud,
                Label::Fraud,
                Label::Fraud,
                Label::Normal,
                Label::Normal,
                Label::Normal,
                Label::Normal,
            ],
            kernel: KernelKind::Linear,
            gamma: 1.0,
            c: 100.0,
        },
    ];
    // duplicated dataset: each point of the two-point problem twice
    instances.push(SvmInstance {
        name: "duplicated two-point",
        x: vec![
            fv(1, &[(0, 1.0)]),
            fv(1, &[(0, 1.0)]),
            fv(1, &[(0, -1.0)]),
            fv(1, &[(0, -1.0)]),
        ],
        y: vec![Label::Fraud, Label::Fraud, Label::Normal, Label::Normal],
        kernel: KernelKind::Linear,
        gamma: 1.0,
        c: 10.0,
    });
    instances
}

#[test]
fn svm_training_predictions_match_dense_qp_oracle_on_fixture_instances() {
    for instance in svm_fixture_instances() {
        let config = SvmConfig {
            kernel: instance.kernel,
            c: instance.c,
            gamma: instance.gamma,
            tol: 1e-6,
            max_passes: 500,
        };
        let model = train_svm(&instance.x, &instance.y, &config).unwrap();

        let dense_x: Vec<Vec<f64>> = instance.x.iter().map(|v| v.to_dense()).collect();
        let dense_y: Vec<f64> = instance
            .y
            .iter()
            .map(|l| if *l == Label::Fraud { 1.0 } else { -1.0 })
            .collect();
        let dense_kernel = match instance.kernel {
            KernelKind::Linear => oracle::DenseKernel::Linear,
            KernelKind::Rbf => oracle::DenseKernel::Rbf,
            KernelKind::Sigmoid => oracle::DenseKernel::Sigmoid,
        };
        let qp = oracle::dense_qp_svm(
            &dense_x,
            &dense_y,
            dense_kernel,
            instance.gamma,
            instance.c,
            200_000,
        );

        for (i, x) in instance.x.iter().enumerate() {
            let ours = svm_decision(&model, x);
            let oracle_decision = qp.decision[i];
            assert_eq!(
                ours >= 0.0,
                oracle_decision >= 0.0,
                "{}: sample {i} sign mismatch (ours {ours}, oracle {oracle_decision})",
                instance.name
            );
        }

        // dual feasibility of the SMO solution
        let coef_sum: f64 = model.coefficients.iter().sum();
        assert!(
            coef_sum.abs() <= 1e-6,
            "{}: sum alpha_i y_i = {coef_sum}",
            instance.name
        );
        for coef in &model.coefficients {
            assert!(coef.abs() <= instance.c + 1e-9, "{}", instance.name);
        }
    }
}

#[test]
fn svm_duplicated_dataset_keeps_the_sign_pattern_of_the_original() {
    let x = vec![fv(1, &[(0, 1.0)]), fv(1, &[(0, -1.0)])];
    let y = vec![Label::Fraud, Label::Normal];
    let config = SvmConfig {
        kernel: KernelKind::Linear,
        c: 10.0,
        gamma: 1.0,
        tol: 1e-6,
        max_passes: 200,
    };
    let single = train_svm(&x, &y, &config).unwrap();

    let doubled_x: Vec<FeatureVector> =
        x.iter().flat_map(|v| [v.clone(), v.clone()]).collect();
    let doubled_y: Vec<Label> = y.iter().flat_map(|l| [*l, *l]).collect();
    let doubled = train_svm(&doubled_x, &doubled_y, &config).unwrap();

    for xi in &x {
        assert_eq!(
            svm_decision(&single, xi) >= 0.0,
            svm_decision(&doubled, xi) >= 0.0
        );
    }
}

#[test]
fn kernel_eval_matches_dense_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let mut entries_a: Vec<(u32, f64)> = Vec::new();
        let mut entries_b: Vec<(u32, f64)> = Vec::new();
        for j in 0..5u32 {
            if rng.random_range(0..2) == 0 {
                entries_a.push((j, rng.random_range(-1.0..1.0)));
            }
            if rng.random_range(0..2) == 0 {
                entries_b.push((j, rng.random_range(-1.0..1.0)));
            }
        }
        let a = FeatureVector::new(5, entries_a);
        let b = FeatureVector::new(5, entries_b);
        let (da, db) = (a.to_dense(), b.to_dense());
        let dot: f64 = da.iter().zip(&db).map(|(x, z)| x * z).sum();
        let d2: f64 = da.iter().zip(&db).map(|(x, z)| (x - z) * (x - z)).sum();
        let gamma = 0.7;
        assert!((kernel_eval(KernelKind::Linear, gamma, &a, &b) - dot).abs() < 1e-12);
        assert!(
            (kernel_eval(KernelKind::Rbf, gamma, &a, &b) - (-gamma * d2).exp()).abs() < 1e-12
        );
        assert!(
            (kernel_eval(KernelKind::Sigmoid, gamma, &a, &b) - (gamma * dot).tanh()).abs()
                < 1e-12
        );
    }
}

// ------------------------------------------------------------------- NB

#[test]
fn nb_posteriors_sum_to_one_on_random_batches() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dim = 8;
    let x: Vec<FeatureVector> = (0..30)
        .map(|_| {
            let mut entries: Vec<(u32, f64)> = Vec::new();
            for j in 0..dim as u32 {
                if rng.random_range(0..4) == 0 {
                    entries.push((j, rng.random_range(0.0..1.0)));
                }
            }
            FeatureVector::new(dim, entries)
        })
        .collect();
    let y: Vec<Label> = (0..30)
        .map(|i| if i % 3 == 0 { Label::Fraud } else { Label::Normal })
        .collect();
    for vs in [1e-9, 1e-3, 0.12328467394420659, 1.0] {
        let model = train_gaussian_nb(&x, &y, vs).unwrap();
        for xi in &x {
            let (pf, pn) = nb_posterior(&model, xi);
            assert!((pf + pn - 1.0).abs() <= 1e-12);
        }
    }
}

// ------------------------------------------------------------------ AUC

#[test]
fn auc_equals_exhaustive_pair_counting_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..300 {
        let n = rng.random_range(2..=10);
        let mut y: Vec<Label> = (0..n)
            .map(|_| {
                if rng.random_range(0..2) == 0 {
                    Label::Fraud
                } else {
                    Label::Normal
                }
            })
            .collect();
        // force both classes
        y[0] = Label::Fraud;
        if n > 1 {
            y[1] = Label::Normal;
        } else {
            continue;
        }
        // coarse scores so ties actually occur
        let scores: Vec<f64> = (0..n)
            .map(|_| f64::from(rng.random_range(0..5)) / 4.0)
            .collect();
        let fast = auc_roc(&y, &scores).unwrap();
        let slow = oracle::pair_counting_auc(&y, &scores);
        assert_eq!(fast, slow, "trial {trial}: {y:?} {scores:?}");
    }
}
