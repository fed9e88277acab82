//! Run configuration: datasets, tokenizer, split, CV, model settings and
//! augmentation, all loaded from one JSON file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use smsfraud_core::augment::Transformation;
use smsfraud_core::corpus::{self, ColumnMap, Dataset};
use smsfraud_core::textproc::{
    derive_stop_words, StopWordList, TokenizerConfig, TokenizerMode,
};
use smsfraud_core::tuning::{NbGrid, RfGrid, SvmGrid};
use smsfraud_core::{derive_seed, LogisticConfig, RandomForestConfig, SvmConfig};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub datasets: Vec<DatasetSpec>,
    #[serde(default)]
    pub tokenizer: TokenizerSpec,
    #[serde(default)]
    pub split: SplitSpec,
    #[serde(default)]
    pub cv: CvSpec,
    #[serde(default = "default_master_seed")]
    pub master_seed: u64,
    #[serde(default)]
    pub models: ModelsSpec,
    #[serde(default)]
    pub augmentation: Option<AugmentSpec>,
    #[serde(default)]
    pub ablation: AblationSpec,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_master_seed() -> u64 {
    42
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub tag: String,
    pub path: PathBuf,
    #[serde(default)]
    pub column_map: Option<ColumnMap>,
    /// Merge another file into this dataset (the extended-dataset route).
    #[serde(default)]
    pub extend_with: Option<ExtendSpec>,
    /// Excluded from matrix/ablation cells; still shown by `stats`.
    #[serde(default)]
    pub stats_only: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtendSpec {
    pub path: PathBuf,
    pub tag: String,
    #[serde(default)]
    pub column_map: Option<ColumnMap>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TokenizerSpec {
    #[serde(default = "default_mode")]
    pub mode: TokenizerMode,
    #[serde(default)]
    pub stop_words: StopWordsSpec,
}

fn default_mode() -> TokenizerMode {
    TokenizerMode::Raw
}

impl Default for TokenizerSpec {
    fn default() -> TokenizerSpec {
        TokenizerSpec {
            mode: TokenizerMode::Raw,
            stop_words: StopWordsSpec::default(),
        }
    }
}

/// How to assemble the stop-word list. All parts are unioned; the
/// corpus-derived part is rebuilt from each training split so nothing
/// leaks from held-out data.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct StopWordsSpec {
    #[serde(default)]
    pub english: bool,
    /// Document-frequency threshold for corpus-derived stop words.
    #[serde(default)]
    pub corpus_derived: Option<f64>,
    /// Extra newline-delimited stop-word file.
    #[serde(default)]
    pub file: Option<PathBuf>,
}

impl StopWordsSpec {
    pub fn is_empty(&self) -> bool {
        !self.english && self.corpus_derived.is_none() && self.file.is_none()
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SplitSpec {
    #[serde(default = "default_test_fraction")]
    pub test_fraction: f64,
    /// Fixed split seed; derived from the master seed per dataset when
    /// absent.
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_test_fraction() -> f64 {
    0.2
}

impl Default for SplitSpec {
    fn default() -> SplitSpec {
        SplitSpec {
            test_fraction: 0.2,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CvSpec {
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_k() -> usize {
    5
}

impl Default for CvSpec {
    fn default() -> CvSpec {
        CvSpec { k: 5, seed: None }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ModelsSpec {
    #[serde(default)]
    pub nb: NbSpec,
    #[serde(default)]
    pub lr: LrSpec,
    #[serde(default)]
    pub svm: SvmSpec,
    #[serde(default)]
    pub rf: RfSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NbSpec {
    #[serde(default = "default_var_smoothing")]
    pub baseline_var_smoothing: f64,
    #[serde(default)]
    pub grid: Option<NbGrid>,
    #[serde(default = "default_true")]
    pub tune: bool,
}

fn default_var_smoothing() -> f64 {
    1e-9
}

fn default_true() -> bool {
    true
}

impl Default for NbSpec {
    fn default() -> NbSpec {
        NbSpec {
            baseline_var_smoothing: 1e-9,
            grid: None,
            tune: true,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LrSpec {
    #[serde(default)]
    pub baseline: LogisticConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SvmSpec {
    #[serde(default)]
    pub baseline: SvmConfig,
    #[serde(default)]
    pub grid: Option<SvmGrid>,
    #[serde(default = "default_true")]
    pub tune: bool,
}

impl Default for SvmSpec {
    fn default() -> SvmSpec {
        SvmSpec {
            baseline: SvmConfig::default(),
            grid: None,
            tune: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RfSpec {
    #[serde(default)]
    pub baseline: RandomForestConfig,
    #[serde(default)]
    pub grid: Option<RfGrid>,
    #[serde(default = "default_true")]
    pub tune: bool,
}

impl Default for RfSpec {
    fn default() -> RfSpec {
        RfSpec {
            baseline: RandomForestConfig::default(),
            grid: None,
            tune: true,
        }
    }
}

/// Tokenizer arms compared by the ablation command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AblationSpec {
    #[serde(default)]
    pub raw: TokenizerSpec,
    #[serde(default = "default_full_arm")]
    pub full: TokenizerSpec,
    /// Also ablate tuned variants (doubles the grid-search cost).
    #[serde(default)]
    pub include_tuned: bool,
}

fn default_full_arm() -> TokenizerSpec {
    TokenizerSpec {
        mode: TokenizerMode::Full,
        stop_words: StopWordsSpec {
            english: true,
            corpus_derived: Some(0.5),
            file: None,
        },
    }
}

impl Default for AblationSpec {
    fn default() -> AblationSpec {
        AblationSpec {
            raw: TokenizerSpec::default(),
            full: default_full_arm(),
            include_tuned: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AugmentSpec {
    pub dataset: PathBuf,
    pub tag: String,
    #[serde(default)]
    pub column_map: Option<ColumnMap>,
    pub lexicon: PathBuf,
    #[serde(default = "default_transformations")]
    pub transformations: Vec<Transformation>,
    #[serde(default = "default_max_variants")]
    pub max_variants_per_record: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    pub target_size: usize,
}

fn default_transformations() -> Vec<Transformation> {
    Transformation::ALL.to_vec()
}

fn default_max_variants() -> usize {
    4
}

impl RunConfig {
    pub fn read_file(path: impl AsRef<Path>) -> Result<RunConfig, CliError> {
        let path = path.as_ref();
        let content = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&content)
            .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.datasets.is_empty() {
            return Err(CliError::usage("config lists no datasets"));
        }
        let mut tags = std::collections::HashSet::new();
        for ds in &self.datasets {
            if !tags.insert(&ds.tag) {
                return Err(CliError::usage(format!("duplicate dataset tag {:?}", ds.tag)));
            }
            if !ds.path.exists() {
                return Err(CliError::usage(format!(
                    "dataset file {} does not exist",
                    ds.path.display()
                )));
            }
            if let Some(ext) = &ds.extend_with {
                if !ext.path.exists() {
                    return Err(CliError::usage(format!(
                        "extension file {} does not exist",
                        ext.path.display()
                    )));
                }
            }
        }
        if !(self.split.test_fraction > 0.0 && self.split.test_fraction < 1.0) {
            return Err(CliError::usage(format!(
                "test_fraction {} outside (0, 1)",
                self.split.test_fraction
            )));
        }
        if self.cv.k < 2 {
            return Err(CliError::usage(format!("cv.k must be at least 2, got {}", self.cv.k)));
        }
        Ok(())
    }

    /// Loads every configured dataset, applying extensions.
    pub fn load_datasets(&self) -> Result<BTreeMap<String, Dataset>, CliError> {
        let mut out = BTreeMap::new();
        for spec in &self.datasets {
            let map = spec.column_map.clone().unwrap_or_default();
            let base = corpus::load_dataset(&spec.path, &spec.tag, &map)
                .map_err(|e| CliError::data(format!("loading {:?}: {e}", spec.tag)))?;
            let dataset = match &spec.extend_with {
                Some(ext) => {
                    let ext_map = ext.column_map.clone().unwrap_or_default();
                    let extension = corpus::load_dataset(&ext.path, &ext.tag, &ext_map)
                        .map_err(|e| CliError::data(format!("loading {:?}: {e}", ext.tag)))?;
                    corpus::merge_datasets(&base, &extension, &spec.tag)
                }
                None => base,
            };
            out.insert(spec.tag.clone(), dataset);
        }
        Ok(out)
    }

    pub fn split_seed(&self, tag: &str) -> u64 {
        self.split
            .seed
            .unwrap_or_else(|| derive_seed(self.master_seed, &[tag, "split"]))
    }

    pub fn cv_seed(&self, tag: &str, model: &str) -> u64 {
        self.cv
            .seed
            .unwrap_or_else(|| derive_seed(self.master_seed, &[tag, model, "cv"]))
    }
}

/// Builds the tokenizer for one dataset. The corpus-derived stop words
/// are computed from the training split only.
pub fn build_tokenizer(
    spec: &TokenizerSpec,
    train: Option<&Dataset>,
) -> Result<TokenizerConfig, CliError> {
    if spec.stop_words.is_empty() {
        return Ok(TokenizerConfig {
            mode: spec.mode,
            stop_words: None,
        });
    }
    let mut list: Option<StopWordList> = None;
    let mut add = |more: StopWordList| {
        list = Some(match list.take() {
            Some(current) => current.union(&more),
            None => more,
        });
    };
    if spec.stop_words.english {
        add(StopWordList::english_builtin());
    }
    if let Some(path) = &spec.stop_words.file {
        let from_file = StopWordList::read_file(
            path,
            smsfraud_core::textproc::StopWordProvenance::CorpusDerived,
        )
        .map_err(|e| CliError::data(format!("stop-word file {}: {e}", path.display())))?;
        add(from_file);
    }
    if let Some(threshold) = spec.stop_words.corpus_derived {
        let train = train.ok_or_else(|| {
            CliError::usage("corpus-derived stop words need a training split")
        })?;
        let bare = TokenizerConfig {
            mode: spec.mode,
            stop_words: None,
        };
        let derived = derive_stop_words(train, &bare, threshold)
            .map_err(|e| CliError::data(format!("deriving stop words: {e}")))?;
        add(derived);
    }
    Ok(TokenizerConfig {
        mode: spec.mode,
        stop_words: list,
    })
}
