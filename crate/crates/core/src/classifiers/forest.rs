//! Random forest of Gini-grown decision trees over sparse features.
//!
//! Trees are grown on bootstrap resamples (or the full data) with a
//! per-split random subset of candidate features. Split thresholds sit at
//! midpoints of consecutive distinct feature values, implicit zeros
//! included. Ties in Gini gain break toward the lowest feature index and
//! then the lowest threshold. Per-tree RNG substreams are derived from the
//! forest seed, so results are independent of worker count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{check_consistent_dims, check_two_classes, ClassifierError};
use crate::corpus::Label;
use crate::mix_seed;
use crate::textproc::FeatureVector;

/// Candidate features per split: an explicit count or `ceil(sqrt(V))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxFeatures {
    Sqrt,
    Count(usize),
}

impl MaxFeatures {
    fn resolve(&self, n_features: usize) -> usize {
        match self {
            MaxFeatures::Sqrt => (n_features as f64).sqrt().ceil() as usize,
            MaxFeatures::Count(k) => *k,
        }
        .clamp(1, n_features.max(1))
    }
}

impl Serialize for MaxFeatures {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxFeatures::Sqrt => serializer.serialize_str("sqrt"),
            MaxFeatures::Count(k) => serializer.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for MaxFeatures {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<MaxFeatures, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Name(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(k) if k >= 1 => Ok(MaxFeatures::Count(k)),
            Raw::Count(k) => Err(D::Error::custom(format!("max_features must be >= 1, got {k}"))),
            Raw::Name(s) if s == "sqrt" => Ok(MaxFeatures::Sqrt),
            Raw::Name(s) => Err(D::Error::custom(format!(
                "max_features must be an integer or \"sqrt\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForestConfig {
    pub n_estimators: usize,
    pub min_samples_split: usize,
    pub min_samples_leaf: usize,
    pub max_features: MaxFeatures,
    pub max_depth: Option<u32>,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for RandomForestConfig {
    fn default() -> RandomForestConfig {
        RandomForestConfig {
            n_estimators: 100,
            min_samples_split: 2,
            min_samples_leaf: 1,
            max_features: MaxFeatures::Sqrt,
            max_depth: None,
            bootstrap: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: u32,
        threshold: f64,
        left: u32,
        right: u32,
    },
    Leaf {
        n_fraud: u32,
        n_normal: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<TreeNode>,
}

impl DecisionTree {
    /// Majority vote of the reached leaf; ties go to fraud.
    pub fn votes_fraud(&self, x: &FeatureVector) -> bool {
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x.get(*feature) <= *threshold {
                        *left as usize
                    } else {
                        *right as usize
                    };
                }
                TreeNode::Leaf { n_fraud, n_normal } => return n_fraud >= n_normal,
            }
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForestModel {
    pub config: RandomForestConfig,
    pub trees: Vec<DecisionTree>,
    dim: usize,
}

impl RandomForestModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Fraction of trees voting fraud, in {0, 1/T, ..., 1}.
    pub fn fraud_vote_fraction(&self, x: &FeatureVector) -> f64 {
        let votes = self.trees.iter().filter(|t| t.votes_fraud(x)).count();
        votes as f64 / self.trees.len() as f64
    }
}

/// Column-major sparse matrix: per-feature (row, value) lists sorted by row.
pub struct CscMatrix {
    n_rows: usize,
    n_cols: usize,
    cols: Vec<Vec<(u32, f64)>>,
}

impl CscMatrix {
    pub fn from_rows(x: &[FeatureVector]) -> CscMatrix {
        let n_cols = x.first().map_or(0, FeatureVector::dim);
        let mut cols = vec![Vec::new(); n_cols];
        for (row, xi) in x.iter().enumerate() {
            for &(col, val) in xi.entries() {
                cols[col as usize].push((row as u32, val));
            }
        }
        CscMatrix {
            n_rows: x.len(),
            n_cols,
            cols,
        }
    }
}

/// Per-tree reusable scratch with epoch-stamped row arrays and gather
/// buffers, so node evaluation does not allocate.
struct TreeScratch {
    epoch: u32,
    count_stamp: Vec<u32>,
    count: Vec<u32>,
    value_stamp: Vec<u32>,
    value: Vec<f64>,
    feature_epoch: u32,
    feature_stamp: Vec<u32>,
    gather: Vec<(f64, u32, u32)>,
    groups: Vec<(f64, u32, u32)>,
}

impl TreeScratch {
    fn new(n_rows: usize, n_cols: usize) -> TreeScratch {
        TreeScratch {
            epoch: 0,
            count_stamp: vec![0; n_rows],
            count: vec![0; n_rows],
            value_stamp: vec![0; n_rows],
            value: vec![0.0; n_rows],
            feature_epoch: 0,
            feature_stamp: vec![0; n_cols],
            gather: Vec::new(),
            groups: Vec::new(),
        }
    }
}

struct SplitCandidate {
    gain: f64,
    feature: u32,
    threshold: f64,
}

impl SplitCandidate {
    fn better_than(&self, other: &Option<SplitCandidate>) -> bool {
        match other {
            None => true,
            Some(o) => {
                self.gain > o.gain
                    || (self.gain == o.gain
                        && (self.feature < o.feature
                            || (self.feature == o.feature && self.threshold < o.threshold)))
            }
        }
    }
}

struct TreeBuilder<'a> {
    csc: &'a CscMatrix,
    is_fraud: &'a [bool],
    min_samples_split: usize,
    min_samples_leaf: usize,
    max_features: usize,
    max_depth: Option<u32>,
    scratch: TreeScratch,
    nodes: Vec<TreeNode>,
}

fn gini(n_fraud: f64, n_total: f64) -> f64 {
    if n_total == 0.0 {
        return 0.0;
    }
    let p = n_fraud / n_total;
    2.0 * p * (1.0 - p)
}

impl<'a> TreeBuilder<'a> {
    /// Node sample multiplicities into the stamped count array; returns
    /// (n_samples, n_fraud) of the node.
    fn stamp_node(&mut self, samples: &[u32]) -> (usize, usize) {
        self.scratch.epoch += 1;
        let epoch = self.scratch.epoch;
        let mut n_fraud = 0usize;
        for &s in samples {
            let s = s as usize;
            if self.scratch.count_stamp[s] != epoch {
                self.scratch.count_stamp[s] = epoch;
                self.scratch.count[s] = 0;
            }
            self.scratch.count[s] += 1;
            if self.is_fraud[s] {
                n_fraud += 1;
            }
        }
        (samples.len(), n_fraud)
    }

    /// Best threshold for one feature in the stamped node, or None if the
    /// feature is constant there or no threshold satisfies the leaf bound.
    /// The bool is true when the feature takes at least two distinct values.
    fn evaluate_feature(
        &mut self,
        feature: u32,
        node_len: usize,
        node_fraud: usize,
    ) -> (Option<SplitCandidate>, bool) {
        let min_samples_leaf = self.min_samples_leaf;
        let is_fraud = self.is_fraud;
        let column = &self.csc.cols[feature as usize];
        let TreeScratch {
            epoch,
            count_stamp,
            count,
            gather: nonzero,
            groups,
            ..
        } = &mut self.scratch;
        let epoch = *epoch;

        // gather (value, multiplicity, fraud multiplicity) for nonzero rows;
        // explicitly stored zeros belong to the implicit zero group
        nonzero.clear();
        let mut nnz_count = 0usize;
        let mut nnz_fraud = 0usize;
        for &(row, val) in column {
            let r = row as usize;
            if val != 0.0 && count_stamp[r] == epoch {
                let m = count[r];
                let f = if is_fraud[r] { m } else { 0 };
                nonzero.push((val, m, f));
                nnz_count += m as usize;
                nnz_fraud += f as usize;
            }
        }
        if nnz_count == 0 {
            return (None, false);
        }
        let zeros = node_len - nnz_count;
        let zero_fraud = node_fraud - nnz_fraud;
        nonzero.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        // distinct value groups in ascending order, zeros included
        groups.clear();
        let mut zero_inserted = zeros == 0;
        for &(val, m, f) in nonzero.iter() {
            if !zero_inserted && val > 0.0 {
                groups.push((0.0, zeros as u32, zero_fraud as u32));
                zero_inserted = true;
            }
            match groups.last_mut() {
                Some(last) if last.0 == val => {
                    last.1 += m;
                    last.2 += f;
                }
                _ => groups.push((val, m, f)),
            }
        }
        if !zero_inserted {
            groups.push((0.0, zeros as u32, zero_fraud as u32));
        }
        if groups.len() < 2 {
            return (None, false);
        }

        let total = node_len as f64;
        let parent_impurity = gini(node_fraud as f64, total);
        let mut best: Option<SplitCandidate> = None;
        let mut left_n = 0f64;
        let mut left_fraud = 0f64;
        for window in 0..groups.len() - 1 {
            let (val, m, f) = groups[window];
            left_n += f64::from(m);
            left_fraud += f64::from(f);
            let right_n = total - left_n;
            let right_fraud = node_fraud as f64 - left_fraud;
            if (left_n as usize) < min_samples_leaf || (right_n as usize) < min_samples_leaf {
                continue;
            }
            let next_val = groups[window + 1].0;
            let mut threshold = (val + next_val) / 2.0;
            if threshold >= next_val {
                // midpoint rounded up to the right group; clamp so the
                // partition matches the prefix counts exactly
                threshold = val;
            }
            let children = (left_n * gini(left_fraud, left_n)
                + right_n * gini(right_fraud, right_n))
                / total;
            let gain = parent_impurity - children;
            let candidate = SplitCandidate {
                gain,
                feature,
                threshold,
            };
            if candidate.better_than(&best) {
                best = Some(candidate);
            }
        }
        (best, true)
    }

    /// Draws random candidate features until `max_features` non-constant
    /// ones were evaluated; falls back to a full scan when random draws
    /// fail to produce any usable split.
    fn choose_split(
        &mut self,
        samples: &[u32],
        rng: &mut ChaCha8Rng,
    ) -> Option<SplitCandidate> {
        let (node_len, node_fraud) = self.stamp_node(samples);
        let n_features = self.csc.n_cols;
        let mut best: Option<SplitCandidate> = None;
        let mut evaluated = 0usize;
        let budget = (4 * n_features).max(64);
        self.scratch.feature_epoch += 1;
        let feature_epoch = self.scratch.feature_epoch;
        let mut distinct_visited = 0usize;

        for _ in 0..budget {
            let feature = rng.random_range(0..n_features) as u32;
            if self.scratch.feature_stamp[feature as usize] == feature_epoch {
                continue;
            }
            self.scratch.feature_stamp[feature as usize] = feature_epoch;
            distinct_visited += 1;
            let (candidate, non_constant) = self.evaluate_feature(feature, node_len, node_fraud);
            if non_constant {
                evaluated += 1;
            }
            if let Some(c) = candidate {
                if c.better_than(&best) {
                    best = Some(c);
                }
            }
            if evaluated >= self.max_features && best.is_some() {
                break;
            }
            if distinct_visited == n_features {
                break;
            }
        }
        if best.is_none() {
            // exhaustive fallback keeps max_features=1 trees usable and
            // guarantees a split exists whenever any feature separates
            for feature in 0..n_features as u32 {
                let (candidate, _) = self.evaluate_feature(feature, node_len, node_fraud);
                if let Some(c) = candidate {
                    if c.better_than(&best) {
                        best = Some(c);
                    }
                }
            }
        }
        best
    }

    fn build(&mut self, samples: &mut [u32], depth: u32, rng: &mut ChaCha8Rng) -> u32 {
        let n_fraud = samples.iter().filter(|&&s| self.is_fraud[s as usize]).count();
        let n_total = samples.len();
        let make_leaf = |nodes: &mut Vec<TreeNode>| {
            nodes.push(TreeNode::Leaf {
                n_fraud: n_fraud as u32,
                n_normal: (n_total - n_fraud) as u32,
            });
            (nodes.len() - 1) as u32
        };
        let pure = n_fraud == 0 || n_fraud == n_total;
        let depth_capped = self.max_depth.is_some_and(|d| depth >= d);
        if pure || n_total < self.min_samples_split || depth_capped {
            return make_leaf(&mut self.nodes);
        }
        let Some(split) = self.choose_split(samples, rng) else {
            return make_leaf(&mut self.nodes);
        };

        // dense view of the splitting column for O(1) partition lookups
        self.scratch.epoch += 1;
        let epoch = self.scratch.epoch;
        for &(row, val) in &self.csc.cols[split.feature as usize] {
            self.scratch.value_stamp[row as usize] = epoch;
            self.scratch.value[row as usize] = val;
        }
        let value_of = |scratch: &TreeScratch, row: u32| -> f64 {
            if scratch.value_stamp[row as usize] == epoch {
                scratch.value[row as usize]
            } else {
                0.0
            }
        };
        let mut lo = 0usize;
        let mut hi = samples.len();
        while lo < hi {
            if value_of(&self.scratch, samples[lo]) <= split.threshold {
                lo += 1;
            } else {
                hi -= 1;
                samples.swap(lo, hi);
            }
        }
        debug_assert!(lo > 0 && lo < samples.len());

        let placeholder = self.nodes.len() as u32;
        self.nodes.push(TreeNode::Leaf {
            n_fraud: 0,
            n_normal: 0,
        });
        let (left_samples, right_samples) = samples.split_at_mut(lo);
        let left = self.build(left_samples, depth + 1, rng);
        let right = self.build(right_samples, depth + 1, rng);
        self.nodes[placeholder as usize] = TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        placeholder
    }
}

fn train_one_tree(
    csc: &CscMatrix,
    is_fraud: &[bool],
    config: &RandomForestConfig,
    tree_seed: u64,
) -> DecisionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(tree_seed);
    let n = csc.n_rows;
    let mut samples: Vec<u32> = if config.bootstrap {
        (0..n).map(|_| rng.random_range(0..n) as u32).collect()
    } else {
        (0..n as u32).collect()
    };
    let mut builder = TreeBuilder {
        csc,
        is_fraud,
        min_samples_split: config.min_samples_split.max(2),
        min_samples_leaf: config.min_samples_leaf.max(1),
        max_features: config.max_features.resolve(csc.n_cols),
        max_depth: config.max_depth,
        scratch: TreeScratch::new(n, csc.n_cols),
        nodes: Vec::new(),
    };
    builder.build(&mut samples, 0, &mut rng);
    DecisionTree {
        nodes: builder.nodes,
    }
}

/// Grows `n_trees` trees with per-tree seed substreams derived from the
/// config seed. A tree's substream depends only on its index, so the
/// first k trees of a larger forest equal a k-tree forest exactly; the
/// grid search relies on this to score n_estimators prefixes.
pub(crate) fn grow_trees(
    csc: &CscMatrix,
    is_fraud: &[bool],
    config: &RandomForestConfig,
    n_trees: usize,
) -> Vec<DecisionTree> {
    (0..n_trees)
        .into_par_iter()
        .map(|t| {
            let tree_seed = mix_seed(config.seed ^ mix_seed(t as u64 + 1));
            train_one_tree(csc, is_fraud, config, tree_seed)
        })
        .collect()
}

/// Trains a forest on a prebuilt column-major matrix.
fn train_forest_on_csc(
    csc: &CscMatrix,
    y: &[Label],
    config: &RandomForestConfig,
) -> Result<RandomForestModel, ClassifierError> {
    check_two_classes(y)?;
    if config.n_estimators == 0 {
        return Err(ClassifierError::InvalidConfig(
            "n_estimators must be at least 1".into(),
        ));
    }
    let is_fraud: Vec<bool> = y.iter().map(|l| *l == Label::Fraud).collect();
    let trees = grow_trees(csc, &is_fraud, config, config.n_estimators);
    Ok(RandomForestModel {
        config: config.clone(),
        trees,
        dim: csc.n_cols,
    })
}

/// Trains a random forest; deterministic for a fixed config seed.
pub fn train_random_forest(
    x: &[FeatureVector],
    y: &[Label],
    config: &RandomForestConfig,
) -> Result<RandomForestModel, ClassifierError> {
    check_consistent_dims(x)?;
    let csc = CscMatrix::from_rows(x);
    train_forest_on_csc(&csc, y, config)
}
