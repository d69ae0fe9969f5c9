//! The persisted ensemble: serialization, deserialization, and inference.
//!
//! Models are stored as human-inspectable structured text: a version line, a
//! checksum line, then a pretty-printed JSON body. Saving is deterministic,
//! so identical ensembles produce byte-identical files. Trees route by raw
//! value against the stored boundary thresholds, so inference needs no
//! re-bucketization table.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::binning::BinBoundaries;
use crate::booster::TrainConfig;
use crate::error::{Error, Result};
use crate::grower::TreeNode;
use crate::loss::softmax;

const FORMAT_HEADER: &str = "vecboost-model v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    num_classes: usize,
    num_features: usize,
    /// Original label for each contiguous class id.
    label_names: Vec<String>,
    boundaries: BinBoundaries,
    trees: Vec<TreeNode>,
    /// Snapshot of the configuration the model was trained with.
    config: TrainConfig,
}

impl Ensemble {
    pub fn new(
        num_classes: usize,
        num_features: usize,
        label_names: Vec<String>,
        boundaries: BinBoundaries,
        trees: Vec<TreeNode>,
        config: TrainConfig,
    ) -> Self {
        Self {
            num_classes,
            num_features,
            label_names,
            boundaries,
            trees,
            config,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn num_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[TreeNode] {
        &self.trees
    }

    pub fn boundaries(&self) -> &BinBoundaries {
        &self.boundaries
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn label_name(&self, class: usize) -> &str {
        &self.label_names[class]
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    /// Sum of every tree's routed leaf vector for one raw feature row.
    pub fn predict_scores(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.num_features {
            return Err(Error::Shape(format!(
                "row has {} features, model expects {}",
                row.len(),
                self.num_features
            )));
        }
        let mut scores = vec![0.0f64; self.num_classes];
        for tree in &self.trees {
            let w = tree.route(row);
            for (s, x) in scores.iter_mut().zip(w) {
                *s += x;
            }
        }
        Ok(scores)
    }

    /// Softmax of [`predict_scores`](Self::predict_scores).
    pub fn predict_proba(&self, row: &[f64]) -> Result<Vec<f64>> {
        Ok(softmax(&self.predict_scores(row)?))
    }

    /// Predicted class id (argmax, ties to the lowest class).
    pub fn predict_class(&self, row: &[f64]) -> Result<usize> {
        let scores = self.predict_scores(row)?;
        let mut arg = 0;
        for (c, &s) in scores.iter().enumerate() {
            if s > scores[arg] {
                arg = c;
            }
        }
        Ok(arg)
    }

    /// Structural invariants every stored model must satisfy.
    pub fn validate(&self) -> Result<()> {
        if self.label_names.len() != self.num_classes {
            return Err(Error::ModelFormat(format!(
                "{} label names for {} classes",
                self.label_names.len(),
                self.num_classes
            )));
        }
        if self.boundaries.num_features() != self.num_features {
            return Err(Error::ModelFormat(
                "boundary table does not match the feature count".into(),
            ));
        }
        self.boundaries.validate()?;
        for (t, tree) in self.trees.iter().enumerate() {
            self.validate_tree(tree)
                .map_err(|e| Error::ModelFormat(format!("tree {t}: {e}")))?;
        }
        Ok(())
    }

    fn validate_tree(&self, node: &TreeNode) -> Result<()> {
        match node {
            TreeNode::Leaf { weight } => {
                if weight.len() != self.num_classes {
                    return Err(Error::ModelFormat(format!(
                        "leaf weight has length {}, expected {}",
                        weight.len(),
                        self.num_classes
                    )));
                }
                Ok(())
            }
            TreeNode::Split {
                feature,
                threshold_index,
                threshold,
                left,
                right,
                internal_weight,
            } => {
                if internal_weight.is_some() {
                    return Err(Error::ModelFormat(
                        "finalized tree still carries an internal weight".into(),
                    ));
                }
                if *feature >= self.num_features {
                    return Err(Error::ModelFormat(format!(
                        "split on feature {feature}, model has {}",
                        self.num_features
                    )));
                }
                let ts = self.boundaries.feature_thresholds(*feature);
                if *threshold_index >= ts.len() || ts[*threshold_index] != *threshold {
                    return Err(Error::ModelFormat(format!(
                        "split threshold {} inconsistent with boundaries of feature {feature}",
                        threshold
                    )));
                }
                self.validate_tree(left)?;
                self.validate_tree(right)
            }
        }
    }

    /// Render the versioned text format: header, checksum, JSON body.
    pub fn to_model_text(&self) -> String {
        let body = serde_json::to_string_pretty(self).expect("ensemble serializes");
        let digest = Sha256::digest(body.as_bytes());
        format!("{FORMAT_HEADER}\nsha256:{:x}\n{body}\n", digest)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_model_text())
            .map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn from_model_text(text: &str) -> Result<Self> {
        let mut lines = text.splitn(3, '\n');
        let header = lines.next().unwrap_or("");
        if header != FORMAT_HEADER {
            return Err(Error::ModelVersion {
                found: header.chars().take(64).collect(),
                expected: FORMAT_HEADER.into(),
            });
        }
        let checksum_line = lines
            .next()
            .ok_or_else(|| Error::ModelFormat("missing checksum line".into()))?;
        let body = lines
            .next()
            .ok_or_else(|| Error::ModelFormat("missing model body".into()))?;
        let body = body.strip_suffix('\n').unwrap_or(body);
        let expected = checksum_line
            .strip_prefix("sha256:")
            .ok_or_else(|| Error::ModelFormat("malformed checksum line".into()))?;
        let actual = format!("{:x}", Sha256::digest(body.as_bytes()));
        if actual != expected {
            return Err(Error::ModelChecksum);
        }
        let ensemble: Ensemble = serde_json::from_str(body)
            .map_err(|e| Error::ModelFormat(format!("body does not parse: {e}")))?;
        ensemble.validate()?;
        Ok(ensemble)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_model_text(&text)
    }
}
