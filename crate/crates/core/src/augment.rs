//! Label-preserving text augmentation.
//!
//! Four transformations enlarge a dataset without changing any record's
//! class: implicit-meaning phrase insertion, synonym substitution,
//! borrowed-to-vernacular replacement and morphological rewriting. All
//! matching is token-boundary and case-insensitive; the surrounding text
//! keeps its case.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Dataset, SmsRecord, Source};

/// Where an inserted phrase or affix goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Prefix,
    Suffix,
}

/// Phrases implied by context that can be prepended or appended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhraseLexicon {
    pub phrases: Vec<(String, Position)>,
}

/// Token or phrase to equivalent replacement phrases. Keys are lowercase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynonymMap {
    pub map: BTreeMap<String, Vec<String>>,
}

/// Borrowed token to vernacular replacement. Keys are lowercase and the
/// mapping is one-to-one, so application is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoanwordMap {
    pub map: BTreeMap<String, String>,
}

/// One morphological rewrite rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphRule {
    #[serde(rename = "match")]
    pub match_token: String,
    pub affix: String,
    pub position: Position,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
}

impl MorphRule {
    fn rewritten(&self) -> String {
        if let Some(result) = &self.result {
            return result.clone();
        }
        match self.position {
            Position::Prefix => format!("{}{}", self.affix, self.match_token),
            Position::Suffix => format!("{}{}", self.match_token, self.affix),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphRuleSet {
    pub rules: Vec<MorphRule>,
}

/// All four lexicons, loaded from one JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lexicons {
    pub phrases: PhraseLexicon,
    pub synonyms: SynonymMap,
    pub loanwords: LoanwordMap,
    pub morph: MorphRuleSet,
}

#[derive(Debug, Serialize, Deserialize)]
struct LexiconFile {
    #[serde(default)]
    phrases: Vec<PhraseEntry>,
    #[serde(default)]
    synonyms: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    loanwords: BTreeMap<String, String>,
    #[serde(default)]
    morph: Vec<MorphRule>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PhraseEntry {
    text: String,
    position: Position,
}

impl Lexicons {
    /// Reads and validates a lexicon JSON file.
    ///
    /// Format: `{"phrases":[{"text":...,"position":"prefix"}],
    /// "synonyms":{key:[...]}, "loanwords":{key:...},
    /// "morph":[{"match":...,"affix":...,"position":...,"result":...}]}`
    pub fn read_file(path: impl AsRef<Path>) -> Result<Lexicons, AugmentError> {
        let content = std::fs::read_to_string(&path).map_err(AugmentError::Io)?;
        let file: LexiconFile = serde_json::from_str(&content).map_err(AugmentError::Json)?;
        let mut synonyms = BTreeMap::new();
        for (key, values) in file.synonyms {
            let key = key.to_lowercase();
            let values: Vec<String> = values.into_iter().filter(|v| *v != key).collect();
            if values.is_empty() {
                return Err(AugmentError::InvalidLexicon(format!(
                    "synonym entry {key:?} maps only to itself"
                )));
            }
            synonyms.insert(key, values);
        }
        let mut loanwords = BTreeMap::new();
        for (key, value) in file.loanwords {
            if value.trim().is_empty() {
                return Err(AugmentError::InvalidLexicon(format!(
                    "loanword entry {key:?} has an empty replacement"
                )));
            }
            loanwords.insert(key.to_lowercase(), value);
        }
        for rule in &file.morph {
            if rule.rewritten() == rule.match_token {
                return Err(AugmentError::InvalidLexicon(format!(
                    "morph rule for {:?} does not change the token",
                    rule.match_token
                )));
            }
        }
        for entry in &file.phrases {
            if entry.text.trim().is_empty() {
                return Err(AugmentError::InvalidLexicon("empty phrase".into()));
            }
        }
        Ok(Lexicons {
            phrases: PhraseLexicon {
                phrases: file
                    .phrases
                    .into_iter()
                    .map(|p| (p.text, p.position))
                    .collect(),
            },
            synonyms: SynonymMap { map: synonyms },
            loanwords: LoanwordMap { map: loanwords },
            morph: MorphRuleSet { rules: file.morph },
        })
    }

    /// Writes the lexicons in the same JSON schema `read_file` accepts.
    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), AugmentError> {
        let file = LexiconFile {
            phrases: self
                .phrases
                .phrases
                .iter()
                .map(|(text, position)| PhraseEntry {
                    text: text.clone(),
                    position: *position,
                })
                .collect(),
            synonyms: self.synonyms.map.clone(),
            loanwords: self.loanwords.map.clone(),
            morph: self.morph.rules.clone(),
        };
        let json = serde_json::to_string_pretty(&file).map_err(AugmentError::Json)?;
        std::fs::write(path, json + "\n").map_err(AugmentError::Io)
    }
}

/// The four transformations, in the order the plan applies them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transformation {
    ExpandImplicit,
    SubstituteSynonyms,
    Vernacularize,
    ApplyMorphology,
}

impl Transformation {
    pub const ALL: [Transformation; 4] = [
        Transformation::ExpandImplicit,
        Transformation::SubstituteSynonyms,
        Transformation::Vernacularize,
        Transformation::ApplyMorphology,
    ];
}

/// Which transformations run, how many variants each record may spawn,
/// and the RNG seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationPlan {
    pub transformations: Vec<Transformation>,
    pub max_variants_per_record: usize,
    pub seed: u64,
}

impl AugmentationPlan {
    pub fn all(max_variants_per_record: usize, seed: u64) -> AugmentationPlan {
        AugmentationPlan {
            transformations: Transformation::ALL.to_vec(),
            max_variants_per_record,
            seed,
        }
    }

    fn validate(&self) -> Result<(), AugmentError> {
        if self.transformations.is_empty() {
            return Err(AugmentError::InvalidPlan(
                "at least one transformation must be enabled".into(),
            ));
        }
        if self.max_variants_per_record == 0 {
            return Err(AugmentError::InvalidPlan(
                "max_variants_per_record must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum AugmentError {
    #[error("phrase lexicon is empty")]
    EmptyLexicon,
    #[error("no lexicon key occurs in the record text")]
    NoMatch,
    #[error("target size {target} below input size {size}")]
    TargetBelowInput { target: usize, size: usize },
    #[error("invalid augmentation plan: {0}")]
    InvalidPlan(String),
    #[error("invalid lexicon: {0}")]
    InvalidLexicon(String),
    #[error(
        "exhausted transformations at {} of {target} records",
        partial.records.len()
    )]
    CannotReachTarget { target: usize, partial: Box<Dataset> },
    #[error("lexicon io error: {0}")]
    Io(#[source] std::io::Error),
    #[error("lexicon parse error: {0}")]
    Json(#[source] serde_json::Error),
}

/// Byte spans of `needle` in `haystack` matched case-insensitively at
/// token boundaries (non-alphanumeric or string edge on both sides).
fn boundary_matches(haystack: &str, needle: &str) -> Vec<(usize, usize)> {
    let needle_chars: Vec<char> = needle.chars().collect();
    if needle_chars.is_empty() {
        return Vec::new();
    }
    let hay: Vec<(usize, char)> = haystack.char_indices().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < hay.len() {
        let boundary_before = i == 0 || !hay[i - 1].1.is_alphanumeric();
        if boundary_before && chars_match(&hay, i, &needle_chars) {
            let end_idx = i + needle_chars.len();
            let boundary_after = end_idx >= hay.len() || !hay[end_idx].1.is_alphanumeric();
            if boundary_after {
                let start = hay[i].0;
                let end = if end_idx < hay.len() {
                    hay[end_idx].0
                } else {
                    haystack.len()
                };
                spans.push((start, end));
                i = end_idx;
                continue;
            }
        }
        i += 1;
    }
    spans
}

fn chars_match(hay: &[(usize, char)], at: usize, needle: &[char]) -> bool {
    if at + needle.len() > hay.len() {
        return false;
    }
    needle.iter().enumerate().all(|(k, &nc)| {
        let hc = hay[at + k].1;
        hc == nc || hc.to_lowercase().eq(nc.to_lowercase())
    })
}

/// Replaces every span (sorted, non-overlapping) with `replacement`.
fn splice(text: &str, spans: &[(usize, usize)], replacement: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for &(start, end) in spans {
        out.push_str(&text[cursor..start]);
        out.push_str(replacement);
        cursor = end;
    }
    out.push_str(&text[cursor..]);
    out
}

fn as_variant(parent: &SmsRecord, text: String) -> SmsRecord {
    SmsRecord {
        sms_id: format!("{}-aug", parent.sms_id),
        text,
        label: parent.label,
        source: Source::Augmented,
        parent_id: Some(parent.sms_id.clone()),
        dataset_tag: parent.dataset_tag.clone(),
    }
}

/// Prepends or appends a context phrase chosen by the RNG.
pub fn expand_implicit(
    record: &SmsRecord,
    lexicon: &PhraseLexicon,
    rng: &mut ChaCha8Rng,
) -> Result<SmsRecord, AugmentError> {
    if lexicon.phrases.is_empty() {
        return Err(AugmentError::EmptyLexicon);
    }
    let (phrase, position) = &lexicon.phrases[rng.random_range(0..lexicon.phrases.len())];
    let text = match position {
        Position::Prefix => format!("{} {}", phrase, record.text),
        Position::Suffix => format!("{} {}", record.text, phrase),
    };
    Ok(as_variant(record, text))
}

/// Replaces every occurrence of each matched synonym key with one mapped
/// phrase. The choice is seeded; all occurrences of a key get the same
/// replacement.
pub fn substitute_synonyms(
    record: &SmsRecord,
    synonyms: &SynonymMap,
    rng: &mut ChaCha8Rng,
) -> Result<SmsRecord, AugmentError> {
    let mut text = record.text.clone();
    let mut matched = false;
    for (key, options) in &synonyms.map {
        let spans = boundary_matches(&text, key);
        if spans.is_empty() {
            continue;
        }
        matched = true;
        let replacement = &options[rng.random_range(0..options.len())];
        text = splice(&text, &spans, replacement);
    }
    if !matched {
        return Err(AugmentError::NoMatch);
    }
    Ok(as_variant(record, text))
}

/// Replaces borrowed words with their vernacular equivalents. No
/// randomness: the map is one-to-one.
pub fn vernacularize(
    record: &SmsRecord,
    loanwords: &LoanwordMap,
) -> Result<SmsRecord, AugmentError> {
    let mut text = record.text.clone();
    let mut matched = false;
    for (key, replacement) in &loanwords.map {
        let spans = boundary_matches(&text, key);
        if spans.is_empty() {
            continue;
        }
        matched = true;
        text = splice(&text, &spans, replacement);
    }
    if !matched {
        return Err(AugmentError::NoMatch);
    }
    Ok(as_variant(record, text))
}

/// Rewrites tokens matched by morphological rules with their affixed form.
pub fn apply_morphology(
    record: &SmsRecord,
    rules: &MorphRuleSet,
) -> Result<SmsRecord, AugmentError> {
    let mut text = record.text.clone();
    let mut matched = false;
    for rule in &rules.rules {
        let spans = boundary_matches(&text, &rule.match_token);
        if spans.is_empty() {
            continue;
        }
        matched = true;
        text = splice(&text, &spans, &rule.rewritten());
    }
    if !matched {
        return Err(AugmentError::NoMatch);
    }
    Ok(as_variant(record, text))
}

fn apply_one(
    record: &SmsRecord,
    transformation: Transformation,
    lexicons: &Lexicons,
    rng: &mut ChaCha8Rng,
) -> Result<SmsRecord, AugmentError> {
    match transformation {
        Transformation::ExpandImplicit => expand_implicit(record, &lexicons.phrases, rng),
        Transformation::SubstituteSynonyms => substitute_synonyms(record, &lexicons.synonyms, rng),
        Transformation::Vernacularize => vernacularize(record, &lexicons.loanwords),
        Transformation::ApplyMorphology => apply_morphology(record, &lexicons.morph),
    }
}

fn text_key(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Grows a dataset to `target_size` by cycling originals through the
/// enabled transformations in plan order. Exact-duplicate texts are
/// discarded; every variant links back to its original via `parent_id`.
/// Fully deterministic for a fixed plan seed.
pub fn augment_dataset(
    dataset: &Dataset,
    plan: &AugmentationPlan,
    lexicons: &Lexicons,
    target_size: usize,
) -> Result<Dataset, AugmentError> {
    plan.validate()?;
    if target_size < dataset.len() {
        return Err(AugmentError::TargetBelowInput {
            target: target_size,
            size: dataset.len(),
        });
    }
    let mut out = dataset.clone();
    let mut seen: HashSet<String> = out.records.iter().map(|r| text_key(&r.text)).collect();
    let mut variants: HashMap<usize, usize> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);

    while out.records.len() < target_size {
        let mut grew = false;
        'records: for idx in 0..dataset.records.len() {
            let original = &dataset.records[idx];
            for &transformation in &plan.transformations {
                if out.records.len() >= target_size {
                    break 'records;
                }
                if variants.get(&idx).copied().unwrap_or(0) >= plan.max_variants_per_record {
                    break;
                }
                let attempt = apply_one(original, transformation, lexicons, &mut rng);
                let candidate = match attempt {
                    Ok(c) => c,
                    Err(AugmentError::NoMatch) => continue,
                    Err(e) => return Err(e),
                };
                if candidate.text == original.text {
                    continue;
                }
                let key = text_key(&candidate.text);
                if seen.contains(&key) {
                    continue;
                }
                let count = variants.entry(idx).or_insert(0);
                *count += 1;
                let mut record = candidate;
                record.sms_id = format!("{}-a{}", original.sms_id, count);
                seen.insert(key);
                out.records.push(record);
                grew = true;
            }
        }
        if out.records.len() >= target_size {
            break;
        }
        if !grew {
            return Err(AugmentError::CannotReachTarget {
                target: target_size,
                partial: Box::new(out),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label;

    fn seed_record(id: &str, text: &str, label: Label) -> SmsRecord {
        SmsRecord {
            sms_id: id.into(),
            text: text.into(),
            label,
            source: Source::Crowd,
            parent_id: None,
            dataset_tag: "T".into(),
        }
    }

    fn fixture_lexicons() -> Lexicons {
        Lexicons {
            phrases: PhraseLexicon {
                phrases: vec![("Mukudziwitsidwa kuti".into(), Position::Prefix)],
            },
            synonyms: SynonymMap {
                map: BTreeMap::from([(
                    "mulemele".to_string(),
                    vec!["mupeze ndalama zankhani nkhani".to_string()],
                )]),
            },
            loanwords: LoanwordMap {
                map: BTreeMap::from([("mujoine".to_string(), "kuti mulowe".to_string())]),
            },
            morph: MorphRuleSet {
                rules: vec![
                    MorphRule {
                        match_token: "ine".into(),
                        affix: "nd".into(),
                        position: Position::Prefix,
                        result: None,
                    },
                    MorphRule {
                        match_token: "patsidwa".into(),
                        affix: "mna".into(),
                        position: Position::Prefix,
                        result: None,
                    },
                ],
            },
        }
    }

    #[test]
    fn expand_implicit_prepends_phrase() {
        let r = seed_record("f1", "mwapambana", Label::Fraud);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = expand_implicit(&r, &fixture_lexicons().phrases, &mut rng).unwrap();
        assert_eq!(out.text, "Mukudziwitsidwa kuti mwapambana");
        assert_eq!(out.label, Label::Fraud);
        assert_eq!(out.source, Source::Augmented);
        assert_eq!(out.parent_id.as_deref(), Some("f1"));
    }

    #[test]
    fn expand_implicit_single_phrase_ignores_seed() {
        let r = seed_record("f1", "moni", Label::Normal);
        let lex = fixture_lexicons().phrases;
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let mut b = ChaCha8Rng::seed_from_u64(999);
        assert_eq!(
            expand_implicit(&r, &lex, &mut a).unwrap().text,
            expand_implicit(&r, &lex, &mut b).unwrap().text
        );
    }

    #[test]
    fn expand_implicit_two_phrases_is_seed_deterministic() {
        let r = seed_record("f1", "moni", Label::Normal);
        let lex = PhraseLexicon {
            phrases: vec![
                ("A".into(), Position::Prefix),
                ("B".into(), Position::Suffix),
            ],
        };
        let pick = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            expand_implicit(&r, &lex, &mut rng).unwrap().text
        };
        assert_eq!(pick(5), pick(5));
    }

    #[test]
    fn empty_phrase_lexicon_errors() {
        let r = seed_record("f1", "moni", Label::Normal);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let lex = PhraseLexicon { phrases: vec![] };
        assert!(matches!(
            expand_implicit(&r, &lex, &mut rng).unwrap_err(),
            AugmentError::EmptyLexicon
        ));
    }

    #[test]
    fn synonyms_replace_all_occurrences_identically() {
        let r = seed_record("f1", "Mulemele lero, mulemele mawa", Label::Fraud);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let out = substitute_synonyms(&r, &fixture_lexicons().synonyms, &mut rng).unwrap();
        assert_eq!(
            out.text,
            "mupeze ndalama zankhani nkhani lero, mupeze ndalama zankhani nkhani mawa"
        );
    }

    #[test]
    fn synonyms_no_match_errors() {
        let r = seed_record("f1", "moni bambo", Label::Fraud);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            substitute_synonyms(&r, &fixture_lexicons().synonyms, &mut rng).unwrap_err(),
            AugmentError::NoMatch
        ));
    }

    #[test]
    fn vernacularize_is_deterministic_and_not_reapplicable() {
        let r = seed_record("f1", "Chonde mujoine gulu lathu", Label::Fraud);
        let out = vernacularize(&r, &fixture_lexicons().loanwords).unwrap();
        assert_eq!(out.text, "Chonde kuti mulowe gulu lathu");
        // the key is gone now, so a second application has nothing to do
        assert!(matches!(
            vernacularize(&out, &fixture_lexicons().loanwords).unwrap_err(),
            AugmentError::NoMatch
        ));
    }

    #[test]
    fn morphology_rewrites_tokens_at_boundaries() {
        let r = seed_record("f1", "ine ndapatsidwa mphatso", Label::Normal);
        let out = apply_morphology(&r, &fixture_lexicons().morph).unwrap();
        // "ine" -> "ndine"; "ndapatsidwa" is not a boundary match for "patsidwa"
        assert_eq!(out.text, "ndine ndapatsidwa mphatso");

        let r2 = seed_record("f2", "patsidwa ndalama", Label::Fraud);
        let out2 = apply_morphology(&r2, &fixture_lexicons().morph).unwrap();
        assert_eq!(out2.text, "mnapatsidwa ndalama");
    }

    #[test]
    fn morphology_without_match_errors() {
        let r = seed_record("f1", "moni bambo", Label::Normal);
        assert!(matches!(
            apply_morphology(&r, &fixture_lexicons().morph).unwrap_err(),
            AugmentError::NoMatch
        ));
    }

    #[test]
    fn matching_is_case_insensitive_and_boundary_aware() {
        assert_eq!(boundary_matches("Mujoine lero", "mujoine"), vec![(0, 7)]);
        assert_eq!(boundary_matches("wamujoine", "mujoine"), Vec::new());
        assert_eq!(boundary_matches("ine, iwe", "ine"), vec![(0, 3)]);
        assert_eq!(boundary_matches("*137# ine", "ine"), vec![(6, 9)]);
    }

    fn seeds(n_fraud: usize, n_normal: usize) -> Dataset {
        let mut d = Dataset::new("T");
        for i in 0..n_fraud {
            d.records.push(seed_record(
                &format!("f{i}"),
                &format!("mulemele msanga {i} mujoine ine patsidwa"),
                Label::Fraud,
            ));
        }
        for i in 0..n_normal {
            d.records.push(seed_record(
                &format!("n{i}"),
                &format!("moni bambo {i} ine ndili bwino"),
                Label::Normal,
            ));
        }
        d
    }

    #[test]
    fn augment_dataset_noop_at_input_size() {
        let d = seeds(3, 3);
        let plan = AugmentationPlan::all(4, 7);
        let out = augment_dataset(&d, &plan, &fixture_lexicons(), d.len()).unwrap();
        assert_eq!(out.records, d.records);
    }

    #[test]
    fn augment_dataset_grows_and_preserves_labels() {
        let d = seeds(4, 4);
        let plan = AugmentationPlan::all(4, 7);
        let out = augment_dataset(&d, &plan, &fixture_lexicons(), 14).unwrap();
        assert_eq!(out.records.len(), 14);
        let originals: HashMap<&str, Label> = d
            .records
            .iter()
            .map(|r| (r.sms_id.as_str(), r.label))
            .collect();
        for r in &out.records {
            if r.source == Source::Augmented {
                let parent = r.parent_id.as_deref().expect("parent id");
                assert_eq!(originals[parent], r.label, "label must be preserved");
            }
        }
        // fraud growth equals number of augmented fraud variants
        let fraud_added = out.count(Label::Fraud) - d.count(Label::Fraud);
        let fraud_variants = out
            .records
            .iter()
            .filter(|r| r.source == Source::Augmented && r.label == Label::Fraud)
            .count();
        assert_eq!(fraud_added, fraud_variants);
    }

    #[test]
    fn augment_dataset_has_no_duplicate_texts() {
        let d = seeds(4, 4);
        let plan = AugmentationPlan::all(4, 7);
        let out = augment_dataset(&d, &plan, &fixture_lexicons(), 16).unwrap();
        let keys: HashSet<String> = out.records.iter().map(|r| text_key(&r.text)).collect();
        assert_eq!(keys.len(), out.records.len());
    }

    #[test]
    fn augment_dataset_is_seed_deterministic() {
        let d = seeds(5, 5);
        let plan = AugmentationPlan::all(4, 11);
        let a = augment_dataset(&d, &plan, &fixture_lexicons(), 20).unwrap();
        let b = augment_dataset(&d, &plan, &fixture_lexicons(), 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn augment_dataset_reports_unreachable_target() {
        let mut d = Dataset::new("T");
        // no lexicon key occurs, so only expand_implicit applies, once per record
        d.records.push(seed_record("a", "zilibe chilichonse", Label::Fraud));
        d.records.push(seed_record("b", "zilibe kanthu", Label::Normal));
        let plan = AugmentationPlan {
            transformations: vec![Transformation::ExpandImplicit],
            max_variants_per_record: 1,
            seed: 0,
        };
        match augment_dataset(&d, &plan, &fixture_lexicons(), 10).unwrap_err() {
            AugmentError::CannotReachTarget { target, partial } => {
                assert_eq!(target, 10);
                assert_eq!(partial.records.len(), 4);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn augment_rejects_bad_plan_or_target() {
        let d = seeds(2, 2);
        let plan = AugmentationPlan {
            transformations: vec![],
            max_variants_per_record: 1,
            seed: 0,
        };
        assert!(matches!(
            augment_dataset(&d, &plan, &fixture_lexicons(), 8).unwrap_err(),
            AugmentError::InvalidPlan(_)
        ));
        let plan = AugmentationPlan::all(1, 0);
        assert!(matches!(
            augment_dataset(&d, &plan, &fixture_lexicons(), 2).unwrap_err(),
            AugmentError::TargetBelowInput { .. }
        ));
    }

    #[test]
    fn lexicon_file_roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lex.json");
        std::fs::write(
            &path,
            r#"{
              "phrases": [{"text": "Mukudziwitsidwa kuti", "position": "prefix"}],
              "synonyms": {"Mulemele": ["mupeze ndalama zankhani nkhani"]},
              "loanwords": {"mujoine": "kuti mulowe"},
              "morph": [{"match": "ine", "affix": "nd", "position": "prefix"}]
            }"#,
        )
        .unwrap();
        let lex = Lexicons::read_file(&path).unwrap();
        assert_eq!(lex.phrases.phrases.len(), 1);
        assert!(lex.synonyms.map.contains_key("mulemele"));

        std::fs::write(&path, r#"{"synonyms": {"x": ["x"]}}"#).unwrap();
        assert!(matches!(
            Lexicons::read_file(&path).unwrap_err(),
            AugmentError::InvalidLexicon(_)
        ));
    }
}
