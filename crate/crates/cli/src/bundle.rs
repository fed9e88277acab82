//! Model persistence: a fitted TF-IDF model plus classifier with a
//! training fingerprint, serialized as versioned JSON. JSON numbers are
//! written in round-trip-safe decimal form, so reloaded models reproduce
//! predictions bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use smsfraud_core::classifiers::{ClassifierModel, TrainedClassifier};
use smsfraud_core::textproc::TfidfModel;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dataset_tag: String,
    pub seed: u64,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub format_version: u32,
    pub tfidf: TfidfModel,
    pub model: ClassifierModel,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("bundle format version {found} (this build reads {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("corrupt bundle: {0}")]
    Corrupt(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ModelBundle {
    pub fn new(tfidf: TfidfModel, model: ClassifierModel, fingerprint: Fingerprint) -> ModelBundle {
        ModelBundle {
            format_version: FORMAT_VERSION,
            tfidf,
            model,
            fingerprint,
        }
    }

    pub fn classifier(&self) -> TrainedClassifier {
        let mut classifier = TrainedClassifier::new(self.tfidf.clone(), self.model.clone());
        classifier.finalize();
        classifier
    }
}

pub fn save_model(bundle: &ModelBundle, path: impl AsRef<Path>) -> Result<(), BundleError> {
    let path = path.as_ref();
    let json = serde_json::to_string_pretty(bundle)
        .map_err(|e| BundleError::Corrupt(e.to_string()))?;
    std::fs::write(path, json + "\n").map_err(|e| BundleError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelBundle, BundleError> {
    let path = path.as_ref();
    let content = std::fs::read_to_string(path).map_err(|e| BundleError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    // check the version before full decoding so a newer format gets the
    // precise error rather than a parse failure
    #[derive(Deserialize)]
    struct VersionProbe {
        format_version: u32,
    }
    let probe: VersionProbe =
        serde_json::from_str(&content).map_err(|e| BundleError::Corrupt(e.to_string()))?;
    if probe.format_version != FORMAT_VERSION {
        return Err(BundleError::VersionMismatch {
            found: probe.format_version,
            expected: FORMAT_VERSION,
        });
    }
    let mut bundle: ModelBundle =
        serde_json::from_str(&content).map_err(|e| BundleError::Corrupt(e.to_string()))?;
    bundle.tfidf.finalize();
    Ok(bundle)
}
