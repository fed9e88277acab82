//! Tokenization, stop-word derivation and TF-IDF featurization.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Dataset, Label};

/// Tokenization mode.
///
/// `Raw` lowercases and splits on Unicode whitespace, keeping punctuation
/// attached to tokens. `Full` additionally strips every non-alphanumeric
/// character from each token and drops tokens that become empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenizerMode {
    Raw,
    Full,
}

/// Where a stop-word list came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopWordProvenance {
    EnglishBuiltin,
    CorpusDerived,
    Union,
}

/// A set of lowercase stop words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopWordList {
    pub words: BTreeSet<String>,
    pub provenance: StopWordProvenance,
}

const ENGLISH_STOPWORDS: &str = include_str!("../assets/english_stopwords.txt");

impl StopWordList {
    /// The fixed builtin English list shipped with the crate.
    pub fn english_builtin() -> StopWordList {
        StopWordList {
            words: ENGLISH_STOPWORDS
                .lines()
                .map(str::trim)
                .filter(|w| !w.is_empty())
                .map(|w| w.to_lowercase())
                .collect(),
            provenance: StopWordProvenance::EnglishBuiltin,
        }
    }

    pub fn from_words<I, S>(words: I, provenance: StopWordProvenance) -> StopWordList
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopWordList {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
            provenance,
        }
    }

    /// Set union; the result is tagged [`StopWordProvenance::Union`].
    pub fn union(&self, other: &StopWordList) -> StopWordList {
        StopWordList {
            words: self.words.union(&other.words).cloned().collect(),
            provenance: StopWordProvenance::Union,
        }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    /// Reads a newline-delimited UTF-8 token file.
    pub fn read_file(
        path: impl AsRef<Path>,
        provenance: StopWordProvenance,
    ) -> std::io::Result<StopWordList> {
        let content = std::fs::read_to_string(path)?;
        Ok(StopWordList::from_words(content.lines(), provenance))
    }

    /// Writes the list as a newline-delimited UTF-8 token file.
    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(w);
            out.push('\n');
        }
        std::fs::write(path, out)
    }
}

/// Tokenizer configuration. Lowercasing is unconditional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenizerConfig {
    pub mode: TokenizerMode,
    pub stop_words: Option<StopWordList>,
}

impl TokenizerConfig {
    pub fn raw() -> TokenizerConfig {
        TokenizerConfig {
            mode: TokenizerMode::Raw,
            stop_words: None,
        }
    }

    pub fn full(stop_words: Option<StopWordList>) -> TokenizerConfig {
        TokenizerConfig {
            mode: TokenizerMode::Full,
            stop_words,
        }
    }

    /// Splits text into tokens. Empty input yields an empty list.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let lowered = text.to_lowercase();
        let mut tokens: Vec<String> = Vec::new();
        for raw in lowered.split_whitespace() {
            let token = match self.mode {
                TokenizerMode::Raw => raw.to_string(),
                TokenizerMode::Full => raw.chars().filter(|c| c.is_alphanumeric()).collect(),
            };
            if token.is_empty() {
                continue;
            }
            if let Some(stop) = &self.stop_words {
                if stop.contains(&token) {
                    continue;
                }
            }
            tokens.push(token);
        }
        tokens
    }
}

/// Token-to-index map with document frequencies. Indices are assigned in
/// first-seen corpus order, so fitting is reproducible for identical input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    tokens: Vec<String>,
    document_frequency: Vec<u32>,
    #[serde(skip)]
    index: HashMap<String, u32>,
}

impl Vocabulary {
    fn rebuild_index(&mut self) {
        self.index = self
            .tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn token(&self, index: u32) -> &str {
        &self.tokens[index as usize]
    }

    pub fn document_frequency(&self, index: u32) -> u32 {
        self.document_frequency[index as usize]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Sparse feature vector: (index, weight) pairs sorted by strictly
/// increasing index, with an explicit dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    dim: usize,
    entries: Vec<(u32, f64)>,
}

impl FeatureVector {
    /// Builds a vector from entries, validating the invariants.
    pub fn new(dim: usize, entries: Vec<(u32, f64)>) -> FeatureVector {
        for window in entries.windows(2) {
            assert!(window[0].0 < window[1].0, "indices must strictly increase");
        }
        for (i, w) in &entries {
            assert!((*i as usize) < dim, "index {i} out of dimension {dim}");
            assert!(w.is_finite(), "weight at {i} not finite");
        }
        FeatureVector { dim, entries }
    }

    pub fn zero(dim: usize) -> FeatureVector {
        FeatureVector {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> f64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn dot(&self, other: &FeatureVector) -> f64 {
        let mut sum = 0.0;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ia, va) = self.entries[i];
            let (ib, vb) = other.entries[j];
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += va * vb;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum()
    }

    /// Squared Euclidean distance, computed over the sparse union.
    pub fn dist_sq(&self, other: &FeatureVector) -> f64 {
        let mut sum = 0.0;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let a = self.entries.get(i);
            let b = other.entries.get(j);
            match (a, b) {
                (Some(&(ia, va)), Some(&(ib, vb))) => match ia.cmp(&ib) {
                    std::cmp::Ordering::Less => {
                        sum += va * va;
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        sum += vb * vb;
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        let d = va - vb;
                        sum += d * d;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&(_, va)), None) => {
                    sum += va * va;
                    i += 1;
                }
                (None, Some(&(_, vb))) => {
                    sum += vb * vb;
                    j += 1;
                }
                (None, None) => break,
            }
        }
        sum
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.dim];
        for (i, w) in &self.entries {
            dense[*i as usize] = *w;
        }
        dense
    }
}

/// Fitted TF-IDF model: vocabulary, per-token IDF weights and the
/// tokenizer it was fitted with.
///
/// `idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1`, which is strictly
/// positive and never divides by zero. Transform multiplies raw in-document
/// term counts by IDF and L2-normalizes unless the vector is all-zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfModel {
    vocabulary: Vocabulary,
    idf: Vec<f64>,
    n_docs: usize,
    tokenizer: TokenizerConfig,
}

#[derive(Debug, Error)]
pub enum TextError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("every document tokenized to an empty token list")]
    AllTextsEmpty,
    #[error("dataset is empty")]
    EmptyDataset,
}

impl TfidfModel {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn idf(&self, index: u32) -> f64 {
        self.idf[index as usize]
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn tokenizer(&self) -> &TokenizerConfig {
        &self.tokenizer
    }

    /// Restores the lookup index after deserialization.
    pub fn finalize(&mut self) {
        self.vocabulary.rebuild_index();
    }
}

/// Fits a TF-IDF model on training texts only.
pub fn fit_tfidf<S: AsRef<str>>(
    train_texts: &[S],
    tokenizer: &TokenizerConfig,
) -> Result<TfidfModel, TextError> {
    if train_texts.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let mut vocabulary = Vocabulary {
        tokens: Vec::new(),
        document_frequency: Vec::new(),
        index: HashMap::new(),
    };
    for text in train_texts {
        let tokens = tokenizer.tokenize(text.as_ref());
        let mut seen_in_doc: HashSet<u32> = HashSet::new();
        for token in tokens {
            let idx = match vocabulary.index.get(&token) {
                Some(&i) => i,
                None => {
                    let i = vocabulary.tokens.len() as u32;
                    vocabulary.index.insert(token.clone(), i);
                    vocabulary.tokens.push(token);
                    vocabulary.document_frequency.push(0);
                    i
                }
            };
            if seen_in_doc.insert(idx) {
                vocabulary.document_frequency[idx as usize] += 1;
            }
        }
    }
    if vocabulary.is_empty() {
        return Err(TextError::AllTextsEmpty);
    }
    let n_docs = train_texts.len();
    let idf = vocabulary
        .document_frequency
        .iter()
        .map(|&df| ((1.0 + n_docs as f64) / (1.0 + f64::from(df))).ln() + 1.0)
        .collect();
    Ok(TfidfModel {
        vocabulary,
        idf,
        n_docs,
        tokenizer: tokenizer.clone(),
    })
}

/// Maps a text to a sparse TF-IDF vector. Out-of-vocabulary tokens are
/// dropped; an all-OOV text yields the zero vector.
pub fn transform(model: &TfidfModel, text: &str) -> FeatureVector {
    let mut counts: HashMap<u32, f64> = HashMap::new();
    for token in model.tokenizer.tokenize(text) {
        if let Some(idx) = model.vocabulary.index_of(&token) {
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(u32, f64)> = counts
        .into_iter()
        .map(|(idx, tf)| (idx, tf * model.idf[idx as usize]))
        .collect();
    entries.sort_unstable_by_key(|e| e.0);
    let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
    if norm > 0.0 {
        for e in &mut entries {
            e.1 /= norm;
        }
    }
    FeatureVector::new(model.dim(), entries)
}

/// Transforms a batch of texts.
pub fn transform_all<S: AsRef<str>>(model: &TfidfModel, texts: &[S]) -> Vec<FeatureVector> {
    texts
        .iter()
        .map(|t| transform(model, t.as_ref()))
        .collect()
}

/// Derives corpus stop words: tokens whose per-class document frequency is
/// at least `df_threshold` of the class size in BOTH classes. Words that
/// are frequent in only one class are discriminative and are kept out.
pub fn derive_stop_words(
    train: &Dataset,
    tokenizer: &TokenizerConfig,
    df_threshold: f64,
) -> Result<StopWordList, TextError> {
    if train.is_empty() {
        return Err(TextError::EmptyDataset);
    }
    let mut df: HashMap<String, [u32; 2]> = HashMap::new();
    let mut class_counts = [0u32; 2];
    for r in &train.records {
        let class = match r.label {
            Label::Fraud => 0,
            Label::Normal => 1,
        };
        class_counts[class] += 1;
        let unique: HashSet<String> = tokenizer.tokenize(&r.text).into_iter().collect();
        for token in unique {
            df.entry(token).or_default()[class] += 1;
        }
    }
    let words = df
        .into_iter()
        .filter(|(_, counts)| {
            (0..2).all(|c| {
                class_counts[c] > 0
                    && f64::from(counts[c]) >= df_threshold * f64::from(class_counts[c])
            })
        })
        .map(|(token, _)| token);
    Ok(StopWordList::from_words(
        words,
        StopWordProvenance::CorpusDerived,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{SmsRecord, Source};

    #[test]
    fn raw_mode_keeps_punctuation() {
        let cfg = TokenizerConfig::raw();
        assert_eq!(
            cfg.tokenize("Imbani *137# kuti"),
            vec!["imbani", "*137#", "kuti"]
        );
    }

    #[test]
    fn full_mode_strips_non_alphanumeric() {
        let cfg = TokenizerConfig::full(None);
        assert_eq!(
            cfg.tokenize("Imbani *137# kuti"),
            vec!["imbani", "137", "kuti"]
        );
        // a token that is pure punctuation disappears entirely
        assert_eq!(cfg.tokenize("moni !!! bambo"), vec!["moni", "bambo"]);
    }

    #[test]
    fn empty_input_yields_empty_list() {
        assert!(TokenizerConfig::raw().tokenize("").is_empty());
        assert!(TokenizerConfig::raw().tokenize("   \t\n").is_empty());
    }

    #[test]
    fn stop_words_apply_in_both_modes() {
        let stop = StopWordList::from_words(["kuti"], StopWordProvenance::CorpusDerived);
        let raw = TokenizerConfig {
            mode: TokenizerMode::Raw,
            stop_words: Some(stop.clone()),
        };
        assert_eq!(raw.tokenize("imbani kuti lero"), vec!["imbani", "lero"]);
        let full = TokenizerConfig::full(Some(stop));
        assert_eq!(full.tokenize("imbani kuti! lero"), vec!["imbani", "lero"]);
    }

    #[test]
    fn english_builtin_is_lowercase_and_nonempty() {
        let list = StopWordList::english_builtin();
        assert!(list.words.len() > 100);
        assert!(list.contains("the"));
        assert!(list.words.iter().all(|w| w == &w.to_lowercase()));
    }

    #[test]
    fn idf_matches_hand_computation() {
        let model = fit_tfidf(&["a b", "a c"], &TokenizerConfig::raw()).unwrap();
        let a = model.vocabulary().index_of("a").unwrap();
        let b = model.vocabulary().index_of("b").unwrap();
        let c = model.vocabulary().index_of("c").unwrap();
        assert_eq!(model.vocabulary().document_frequency(a), 2);
        assert_eq!(model.vocabulary().document_frequency(b), 1);
        assert!((model.idf(a) - 1.0).abs() < 1e-15);
        let expect = (3.0f64 / 2.0).ln() + 1.0;
        assert!((model.idf(b) - expect).abs() < 1e-15);
        assert!((model.idf(c) - expect).abs() < 1e-15);
    }

    #[test]
    fn single_document_corpus_has_unit_idf() {
        let model = fit_tfidf(&["a b c"], &TokenizerConfig::raw()).unwrap();
        for i in 0..model.dim() as u32 {
            assert!((model.idf(i) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn transform_matches_hand_computation() {
        let model = fit_tfidf(&["a b", "a c"], &TokenizerConfig::raw()).unwrap();
        let v = transform(&model, "a a b");
        let idf_b = (3.0f64 / 2.0).ln() + 1.0;
        let norm = (4.0 + idf_b * idf_b).sqrt();
        let a = model.vocabulary().index_of("a").unwrap();
        let b = model.vocabulary().index_of("b").unwrap();
        assert!((v.get(a) - 2.0 / norm).abs() < 1e-12);
        assert!((v.get(b) - idf_b / norm).abs() < 1e-12);
        assert!((v.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oov_only_text_gives_zero_vector() {
        let model = fit_tfidf(&["a b", "a c"], &TokenizerConfig::raw()).unwrap();
        let v = transform(&model, "zzz yyy");
        assert!(v.is_zero());
        assert_eq!(v.dim(), 3);
    }

    #[test]
    fn transform_is_deterministic() {
        let model = fit_tfidf(&["a b", "a c"], &TokenizerConfig::raw()).unwrap();
        assert_eq!(transform(&model, "a b c"), transform(&model, "a b c"));
    }

    #[test]
    fn fit_rejects_empty_and_all_empty() {
        let texts: [&str; 0] = [];
        assert!(matches!(
            fit_tfidf(&texts, &TokenizerConfig::raw()).unwrap_err(),
            TextError::EmptyCorpus
        ));
        assert!(matches!(
            fit_tfidf(&["", "  "], &TokenizerConfig::raw()).unwrap_err(),
            TextError::AllTextsEmpty
        ));
    }

    #[test]
    fn vocabulary_order_is_first_seen() {
        let model = fit_tfidf(&["b a", "c a"], &TokenizerConfig::raw()).unwrap();
        assert_eq!(model.vocabulary().tokens(), &["b", "a", "c"]);
    }

    fn labelled(text: &str, label: Label, id: &str) -> SmsRecord {
        SmsRecord {
            sms_id: id.into(),
            text: text.into(),
            label,
            source: Source::Crowd,
            parent_id: None,
            dataset_tag: "T".into(),
        }
    }

    #[test]
    fn derive_stop_words_requires_both_classes() {
        let mut d = Dataset::new("T");
        d.records.push(labelled("kuti ndalama", Label::Fraud, "f1"));
        d.records.push(labelled("kuti ndalama foni", Label::Fraud, "f2"));
        d.records.push(labelled("kuti moni", Label::Normal, "n1"));
        d.records.push(labelled("kuti bambo", Label::Normal, "n2"));
        let stops = derive_stop_words(&d, &TokenizerConfig::raw(), 0.5).unwrap();
        assert!(stops.contains("kuti"));
        // "ndalama" is in 100% of fraud docs but 0% of normal: discriminative, kept out
        assert!(!stops.contains("ndalama"));
        assert_eq!(stops.provenance, StopWordProvenance::CorpusDerived);
    }

    #[test]
    fn derive_stop_words_rejects_empty_dataset() {
        assert!(matches!(
            derive_stop_words(&Dataset::new("T"), &TokenizerConfig::raw(), 0.5).unwrap_err(),
            TextError::EmptyDataset
        ));
    }

    #[test]
    fn stop_word_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stops.txt");
        let list = StopWordList::from_words(["kuti", "ndi"], StopWordProvenance::CorpusDerived);
        list.write_file(&path).unwrap();
        let loaded = StopWordList::read_file(&path, StopWordProvenance::CorpusDerived).unwrap();
        assert_eq!(loaded, list);
    }
}
