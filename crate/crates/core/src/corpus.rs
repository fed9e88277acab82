//! SMS dataset handling: loading, validation, deduplication, merging,
//! stratified splitting and token statistics.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textproc::TokenizerConfig;

/// Class label of an SMS. Fraud is the positive class everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Fraud,
    Normal,
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        match s.trim().to_lowercase().as_str() {
            "fraud" => Some(Label::Fraud),
            "normal" => Some(Label::Normal),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Fraud => "fraud",
            Label::Normal => "normal",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Provenance of a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Crowd,
    Telco,
    Augmented,
}

impl Source {
    pub fn parse(s: &str) -> Option<Source> {
        match s.trim().to_lowercase().as_str() {
            "crowd" => Some(Source::Crowd),
            "telco" => Some(Source::Telco),
            "augmented" => Some(Source::Augmented),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Crowd => "crowd",
            Source::Telco => "telco",
            Source::Augmented => "augmented",
        }
    }
}

/// One labelled SMS with provenance.
///
/// Invariants: `text` is non-empty after trimming, and `parent_id` is set
/// if and only if `source` is [`Source::Augmented`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmsRecord {
    pub sms_id: String,
    pub text: String,
    pub label: Label,
    pub source: Source,
    pub parent_id: Option<String>,
    pub dataset_tag: String,
}

/// An ordered collection of SMS records with a dataset tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub tag: String,
    pub records: Vec<SmsRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl Dataset {
    pub fn new(tag: impl Into<String>) -> Dataset {
        Dataset {
            tag: tag.into(),
            records: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn count(&self, label: Label) -> usize {
        self.records.iter().filter(|r| r.label == label).count()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.records.iter().map(|r| r.label).collect()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.text.as_str()).collect()
    }
}

/// Token statistics for a dataset, computed with a given tokenizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub tag: String,
    pub n_total: usize,
    pub n_fraud: usize,
    pub n_normal: usize,
    pub tokens_total: usize,
    pub tokens_fraud: usize,
    pub tokens_normal: usize,
    pub avg_tokens_any: f64,
    pub avg_tokens_fraud: f64,
    pub avg_tokens_normal: f64,
    pub unique_tokens: usize,
}

/// Maps canonical record fields to column names in a CSV file.
///
/// `text` and `label` are mandatory; the rest fall back to generated or
/// default values when unmapped. Mapped columns must exist in the header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnMap {
    pub sms_id: Option<String>,
    pub text: String,
    pub label: String,
    pub source: Option<String>,
    pub parent_id: Option<String>,
    pub dataset_tag: Option<String>,
}

impl Default for ColumnMap {
    /// The canonical schema: `sms_id,text,label,source,parent_id,dataset_tag`.
    fn default() -> ColumnMap {
        ColumnMap {
            sms_id: Some("sms_id".into()),
            text: "text".into(),
            label: "label".into(),
            source: Some("source".into()),
            parent_id: Some("parent_id".into()),
            dataset_tag: Some("dataset_tag".into()),
        }
    }
}

impl ColumnMap {
    /// A minimal map for files that only carry text and label columns.
    pub fn text_label(text: impl Into<String>, label: impl Into<String>) -> ColumnMap {
        ColumnMap {
            sms_id: None,
            text: text.into(),
            label: label.into(),
            source: None,
            parent_id: None,
            dataset_tag: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing column {column:?} in header of {path}")]
    MissingColumn { column: String, path: String },
    #[error("row {row}: bad label {value:?} (expected \"fraud\" or \"normal\")")]
    BadLabel { row: usize, value: String },
    #[error("row {row}: bad source {value:?} (expected crowd, telco or augmented)")]
    BadSource { row: usize, value: String },
    #[error("row {row}: text is empty after trimming")]
    EmptyText { row: usize },
    #[error("row {row}: duplicate sms_id {id:?}")]
    DuplicateId { row: usize, id: String },
    #[error("row {row}: record {id:?} has parent_id set iff source=augmented violated")]
    ProvenanceMismatch { row: usize, id: String },
    #[error("class {label} has {count} records; at least {required} required")]
    ClassTooSmall {
        label: Label,
        count: usize,
        required: usize,
    },
    #[error("test_fraction {0} outside (0, 1)")]
    InvalidFraction(f64),
    #[error("csv error in {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Loads a dataset from a CSV file (UTF-8, comma separated, header row).
///
/// Text is trimmed; labels and sources are parsed case-insensitively.
/// Records without a mapped `sms_id` column get generated ids of the form
/// `{tag}-r{row:04}`.
pub fn load_dataset(
    path: impl AsRef<Path>,
    tag: &str,
    column_map: &ColumnMap,
) -> Result<Dataset, CorpusError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| csv_err(&path_str, e))?;

    let headers = reader
        .headers()
        .map_err(|e| csv_err(&path_str, e))?
        .clone();
    let col = |name: &str| -> Option<usize> { headers.iter().position(|h| h == name) };
    let require = |name: &str| -> Result<usize, CorpusError> {
        col(name).ok_or_else(|| CorpusError::MissingColumn {
            column: name.to_string(),
            path: path_str.clone(),
        })
    };
    let require_opt = |name: &Option<String>| -> Result<Option<usize>, CorpusError> {
        match name {
            Some(n) => require(n).map(Some),
            None => Ok(None),
        }
    };

    let text_idx = require(&column_map.text)?;
    let label_idx = require(&column_map.label)?;
    let id_idx = require_opt(&column_map.sms_id)?;
    let source_idx = require_opt(&column_map.source)?;
    let parent_idx = require_opt(&column_map.parent_id)?;
    let tag_idx = require_opt(&column_map.dataset_tag)?;

    let mut dataset = Dataset::new(tag);
    let mut seen_ids: HashSet<String> = HashSet::new();
    for (i, result) in reader.records().enumerate() {
        let row = i + 1; // 1-based data row, header excluded
        let record = result.map_err(|e| csv_err(&path_str, e))?;
        let field = |idx: usize| record.get(idx).unwrap_or("");

        let text = field(text_idx).trim().to_string();
        if text.is_empty() {
            return Err(CorpusError::EmptyText { row });
        }
        let label_raw = field(label_idx);
        let label = Label::parse(label_raw).ok_or_else(|| CorpusError::BadLabel {
            row,
            value: label_raw.to_string(),
        })?;
        let sms_id = match id_idx {
            Some(idx) => field(idx).trim().to_string(),
            None => String::new(),
        };
        let sms_id = if sms_id.is_empty() {
            format!("{tag}-r{row:04}")
        } else {
            sms_id
        };
        if !seen_ids.insert(sms_id.clone()) {
            return Err(CorpusError::DuplicateId { row, id: sms_id });
        }
        let source = match source_idx {
            Some(idx) => {
                let raw = field(idx).trim();
                if raw.is_empty() {
                    Source::Crowd
                } else {
                    Source::parse(raw).ok_or_else(|| CorpusError::BadSource {
                        row,
                        value: raw.to_string(),
                    })?
                }
            }
            None => Source::Crowd,
        };
        let parent_id = parent_idx
            .map(|idx| field(idx).trim().to_string())
            .filter(|s| !s.is_empty());
        if (source == Source::Augmented) != parent_id.is_some() {
            return Err(CorpusError::ProvenanceMismatch { row, id: sms_id });
        }
        let dataset_tag = match tag_idx {
            Some(idx) if !field(idx).trim().is_empty() => field(idx).trim().to_string(),
            _ => tag.to_string(),
        };
        dataset.records.push(SmsRecord {
            sms_id,
            text,
            label,
            source,
            parent_id,
            dataset_tag,
        });
    }
    Ok(dataset)
}

/// Writes a dataset in the canonical CSV schema.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_err(&path_str, e))?;
    writer
        .write_record(["sms_id", "text", "label", "source", "parent_id", "dataset_tag"])
        .map_err(|e| csv_err(&path_str, e))?;
    for r in &dataset.records {
        writer
            .write_record([
                r.sms_id.as_str(),
                r.text.as_str(),
                r.label.as_str(),
                r.source.as_str(),
                r.parent_id.as_deref().unwrap_or(""),
                r.dataset_tag.as_str(),
            ])
            .map_err(|e| csv_err(&path_str, e))?;
    }
    writer.flush().map_err(|e| CorpusError::Io {
        path: path_str,
        source: e,
    })?;
    Ok(())
}

fn csv_err(path: &str, e: csv::Error) -> CorpusError {
    CorpusError::Csv {
        path: path.to_string(),
        source: e,
    }
}

/// Collapses internal whitespace runs and trims; case is preserved.
fn normalized_text_key(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Removes exact duplicate texts (whitespace-normalized, case-sensitive),
/// keeping the first occurrence. Input order is preserved.
pub fn dedupe(dataset: &Dataset) -> Dataset {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Dataset::new(dataset.tag.clone());
    out.metadata = dataset.metadata.clone();
    for r in &dataset.records {
        if seen.insert(normalized_text_key(&r.text)) {
            out.records.push(r.clone());
        }
    }
    out
}

/// Concatenates two datasets under a new tag. Colliding sms_ids from `b`
/// are prefixed with `b.tag`; if still colliding a numeric suffix is added.
pub fn merge_datasets(a: &Dataset, b: &Dataset, new_tag: &str) -> Dataset {
    let mut out = Dataset::new(new_tag);
    out.records = a.records.clone();
    let mut ids: HashSet<String> = out.records.iter().map(|r| r.sms_id.clone()).collect();
    for r in &b.records {
        let mut rec = r.clone();
        if ids.contains(&rec.sms_id) {
            let mut candidate = format!("{}:{}", b.tag, rec.sms_id);
            let mut n = 1;
            while ids.contains(&candidate) {
                n += 1;
                candidate = format!("{}:{}-{}", b.tag, rec.sms_id, n);
            }
            rec.sms_id = candidate;
        }
        ids.insert(rec.sms_id.clone());
        out.records.push(rec);
    }
    out
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Stratified train/test split. Per-class test counts are
/// `round_half_up(class_count * test_fraction)`; record order within each
/// partition preserves ingest order. Deterministic for a fixed seed.
pub fn stratified_split(
    dataset: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset), CorpusError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(CorpusError::InvalidFraction(test_fraction));
    }
    let mut by_class: HashMap<Label, Vec<usize>> = HashMap::new();
    for (i, r) in dataset.records.iter().enumerate() {
        by_class.entry(r.label).or_default().push(i);
    }
    for label in [Label::Fraud, Label::Normal] {
        let count = by_class.get(&label).map_or(0, Vec::len);
        if count < 2 {
            return Err(CorpusError::ClassTooSmall {
                label,
                count,
                required: 2,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_indices: HashSet<usize> = HashSet::new();
    // Fixed class order keeps the RNG stream stable.
    for label in [Label::Fraud, Label::Normal] {
        let mut indices = by_class.remove(&label).unwrap_or_default();
        let n_test = round_half_up(indices.len() as f64 * test_fraction);
        indices.shuffle(&mut rng);
        test_indices.extend(indices.into_iter().take(n_test));
    }

    let mut train = Dataset::new(format!("{}-train", dataset.tag));
    let mut test = Dataset::new(format!("{}-test", dataset.tag));
    for (i, r) in dataset.records.iter().enumerate() {
        if test_indices.contains(&i) {
            test.records.push(r.clone());
        } else {
            train.records.push(r.clone());
        }
    }
    Ok((train, test))
}

/// Computes token statistics with the given tokenizer. Averages are exact;
/// rounding happens only at display time.
pub fn compute_stats(dataset: &Dataset, tokenizer: &TokenizerConfig) -> DatasetStats {
    let mut tokens_fraud = 0usize;
    let mut tokens_normal = 0usize;
    let mut n_fraud = 0usize;
    let mut n_normal = 0usize;
    let mut unique: HashSet<String> = HashSet::new();
    for r in &dataset.records {
        let tokens = tokenizer.tokenize(&r.text);
        match r.label {
            Label::Fraud => {
                n_fraud += 1;
                tokens_fraud += tokens.len();
            }
            Label::Normal => {
                n_normal += 1;
                tokens_normal += tokens.len();
            }
        }
        unique.extend(tokens);
    }
    let n_total = n_fraud + n_normal;
    let tokens_total = tokens_fraud + tokens_normal;
    let avg = |tokens: usize, n: usize| if n == 0 { 0.0 } else { tokens as f64 / n as f64 };
    DatasetStats {
        tag: dataset.tag.clone(),
        n_total,
        n_fraud,
        n_normal,
        tokens_total,
        tokens_fraud,
        tokens_normal,
        avg_tokens_any: avg(tokens_total, n_total),
        avg_tokens_fraud: avg(tokens_fraud, n_fraud),
        avg_tokens_normal: avg(tokens_normal, n_normal),
        unique_tokens: unique.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn record(id: &str, text: &str, label: Label) -> SmsRecord {
        SmsRecord {
            sms_id: id.to_string(),
            text: text.to_string(),
            label,
            source: Source::Crowd,
            parent_id: None,
            dataset_tag: "T".to_string(),
        }
    }

    fn toy_dataset(n_fraud: usize, n_normal: usize) -> Dataset {
        let mut d = Dataset::new("T");
        for i in 0..n_fraud {
            d.records.push(record(&format!("f{i}"), &format!("fraud text {i}"), Label::Fraud));
        }
        for i in 0..n_normal {
            d.records.push(record(&format!("n{i}"), &format!("normal text {i}"), Label::Normal));
        }
        d
    }

    fn write_temp_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_empty_csv_gives_empty_dataset() {
        let f = write_temp_csv("sms_id,text,label,source,parent_id,dataset_tag\n");
        let d = load_dataset(f.path(), "T", &ColumnMap::default()).unwrap();
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn load_normalizes_label_case_and_whitespace() {
        let f = write_temp_csv("SMS,Label\nMoni bambo,FRAUD \n");
        let map = ColumnMap::text_label("SMS", "Label");
        let d = load_dataset(f.path(), "T", &map).unwrap();
        assert_eq!(d.records[0].label, Label::Fraud);
        assert_eq!(d.records[0].sms_id, "T-r0001");
    }

    #[test]
    fn load_reports_missing_column() {
        let f = write_temp_csv("SMS,Label\nx,fraud\n");
        let err = load_dataset(f.path(), "T", &ColumnMap::default()).unwrap_err();
        assert!(matches!(err, CorpusError::MissingColumn { .. }), "{err}");
    }

    #[test]
    fn load_reports_bad_label_with_row() {
        let f = write_temp_csv("SMS,Label\na,fraud\nb,spam\n");
        let map = ColumnMap::text_label("SMS", "Label");
        match load_dataset(f.path(), "T", &map).unwrap_err() {
            CorpusError::BadLabel { row, value } => {
                assert_eq!(row, 2);
                assert_eq!(value, "spam");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn load_reports_empty_text_and_duplicate_id() {
        let f = write_temp_csv("SMS,Label\n   ,fraud\n");
        let map = ColumnMap::text_label("SMS", "Label");
        assert!(matches!(
            load_dataset(f.path(), "T", &map).unwrap_err(),
            CorpusError::EmptyText { row: 1 }
        ));

        let f = write_temp_csv("sms_id,text,label\nA,x,fraud\nA,y,normal\n");
        let map = ColumnMap {
            source: None,
            parent_id: None,
            dataset_tag: None,
            ..ColumnMap::default()
        };
        assert!(matches!(
            load_dataset(f.path(), "T", &map).unwrap_err(),
            CorpusError::DuplicateId { row: 2, .. }
        ));
    }

    #[test]
    fn load_enforces_parent_source_invariant() {
        let f = write_temp_csv(
            "sms_id,text,label,source,parent_id,dataset_tag\nA,x,fraud,augmented,,T\n",
        );
        assert!(matches!(
            load_dataset(f.path(), "T", &ColumnMap::default()).unwrap_err(),
            CorpusError::ProvenanceMismatch { row: 1, .. }
        ));
    }

    #[test]
    fn csv_roundtrip_preserves_records() {
        let mut d = toy_dataset(2, 2);
        d.records[0].text = "quoted, \"text\" with commas".to_string();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.csv");
        write_csv(&d, &path).unwrap();
        let loaded = load_dataset(&path, "T", &ColumnMap::default()).unwrap();
        assert_eq!(loaded.records, d.records);
    }

    #[test]
    fn dedupe_keeps_first_occurrence() {
        let mut d = Dataset::new("T");
        d.records.push(record("a", "moni  bambo", Label::Fraud));
        d.records.push(record("b", "moni bambo", Label::Fraud));
        d.records.push(record("c", "MONI BAMBO", Label::Fraud));
        let out = dedupe(&d);
        // whitespace-normalized match removes "b"; case differences are kept
        assert_eq!(
            out.records.iter().map(|r| r.sms_id.as_str()).collect::<Vec<_>>(),
            vec!["a", "c"]
        );
    }

    #[test]
    fn dedupe_is_idempotent_and_identity_without_duplicates() {
        let d = toy_dataset(3, 3);
        let once = dedupe(&d);
        assert_eq!(once, d);
        assert_eq!(dedupe(&once), once);
    }

    #[test]
    fn merge_adds_counts_and_renames_collisions() {
        let a = toy_dataset(2, 1);
        let mut b = Dataset::new("B");
        b.records.push(record("f0", "colliding id", Label::Normal));
        let merged = merge_datasets(&a, &b, "AB");
        assert_eq!(merged.len(), 4);
        assert_eq!(merged.tag, "AB");
        assert_eq!(merged.records[3].sms_id, "B:f0");
        assert_eq!(merged.count(Label::Fraud), 2);
        assert_eq!(merged.count(Label::Normal), 2);
    }

    #[test]
    fn merge_with_empty_is_identity_up_to_tag() {
        let a = toy_dataset(2, 2);
        let merged = merge_datasets(&a, &Dataset::new("E"), "A2");
        assert_eq!(merged.records, a.records);
        assert_eq!(merged.tag, "A2");
    }

    #[test]
    fn split_balanced_676_at_point_2_gives_68_per_class() {
        let d = toy_dataset(338, 338);
        let (train, test) = stratified_split(&d, 0.2, 7).unwrap();
        assert_eq!(test.count(Label::Fraud), 68);
        assert_eq!(test.count(Label::Normal), 68);
        assert_eq!(train.len() + test.len(), 676);
    }

    #[test]
    fn split_four_records_at_half() {
        let d = toy_dataset(2, 2);
        let (train, test) = stratified_split(&d, 0.5, 0).unwrap();
        assert_eq!(test.count(Label::Fraud), 1);
        assert_eq!(test.count(Label::Normal), 1);
        assert_eq!(train.count(Label::Fraud), 1);
        assert_eq!(train.count(Label::Normal), 1);
    }

    #[test]
    fn split_is_deterministic_per_seed() {
        let d = toy_dataset(20, 20);
        let (tr1, te1) = stratified_split(&d, 0.2, 9).unwrap();
        let (tr2, te2) = stratified_split(&d, 0.2, 9).unwrap();
        assert_eq!(tr1, tr2);
        assert_eq!(te1, te2);
        let (_, te3) = stratified_split(&d, 0.2, 10).unwrap();
        assert_ne!(te1.records, te3.records);
    }

    #[test]
    fn split_rejects_tiny_class_and_bad_fraction() {
        let d = toy_dataset(1, 5);
        assert!(matches!(
            stratified_split(&d, 0.2, 0).unwrap_err(),
            CorpusError::ClassTooSmall { label: Label::Fraud, count: 1, .. }
        ));
        let d = toy_dataset(3, 3);
        assert!(matches!(
            stratified_split(&d, 1.0, 0).unwrap_err(),
            CorpusError::InvalidFraction(_)
        ));
    }

    #[test]
    fn stats_on_two_record_fixture() {
        let mut d = Dataset::new("T");
        d.records.push(record("a", "a b", Label::Fraud));
        d.records.push(record("b", "a", Label::Normal));
        let stats = compute_stats(&d, &TokenizerConfig::raw());
        assert_eq!(stats.tokens_total, 3);
        assert_eq!(stats.unique_tokens, 2);
        assert_eq!(stats.avg_tokens_any, 1.5);
        assert_eq!(stats.tokens_fraud, 2);
        assert_eq!(stats.tokens_normal, 1);
    }

    #[test]
    fn stats_identities_hold_and_empty_is_zero() {
        let stats = compute_stats(&Dataset::new("E"), &TokenizerConfig::raw());
        assert_eq!(stats.n_total, 0);
        assert_eq!(stats.avg_tokens_any, 0.0);

        let d = toy_dataset(5, 8);
        let s = compute_stats(&d, &TokenizerConfig::raw());
        assert_eq!(s.n_fraud + s.n_normal, s.n_total);
        assert_eq!(s.tokens_fraud + s.tokens_normal, s.tokens_total);
    }
}
