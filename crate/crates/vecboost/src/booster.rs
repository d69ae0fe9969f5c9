//! The training driver: boosting rounds over a maintained n x C prediction
//! matrix, strategy dispatch, and per-round metrics.

use serde::{Deserialize, Serialize};

use crate::binning::{build_boundaries_partitioned, bucketize, BucketizedDataset};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::grower::{
    grow_layer_by_layer, grow_whole_tree, GradientSource, GrowthConfig, GrowthMode,
    LayerShrinkage, Pruning, SingleClassSource, TreeNode, VectorSource,
};
use crate::loss::{loss_by_name, softmax, HessianMode, PROB_CLAMP};
use crate::model::Ensemble;
use crate::solver::{LambdaScale, Regularization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MulticlassStrategy {
    /// One tree per round predicting all C class scores.
    Vector,
    /// C scalar trees per round, one per class logit, with predictions
    /// refreshed after each tree.
    TreePerClass,
}

/// All training hyperparameters. Defaults mirror common boosted-tree
/// defaults: depth 4, learning rate 0.3, lambda 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub num_trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub lambda: f64,
    /// Whether lambda applies once per leaf or once per instance.
    #[serde(default)]
    pub lambda_scale: LambdaScale,
    pub gamma: f64,
    pub hessian_mode: HessianMode,
    pub growth_mode: GrowthMode,
    pub multiclass_strategy: MulticlassStrategy,
    pub pruning: Pruning,
    pub loss: String,
    pub max_buckets: usize,
    pub min_node_weight: f64,
    pub layer_shrinkage: LayerShrinkage,
    /// Instances consumed per layer-by-layer step; `None` = full batch.
    pub examples_per_layer: Option<usize>,
    /// Seeds any tie-free randomness. The default training path has none;
    /// the knob future-proofs subsampling.
    pub seed: u64,
    pub threads: usize,
    /// Rounds between evaluation-set metric computations.
    pub eval_every: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            num_trees: 100,
            max_depth: 4,
            learning_rate: 0.3,
            lambda: 1.0,
            lambda_scale: LambdaScale::default(),
            gamma: 0.0,
            hessian_mode: HessianMode::Diag,
            growth_mode: GrowthMode::WholeTree,
            multiclass_strategy: MulticlassStrategy::Vector,
            pruning: Pruning::Pre,
            loss: "cross_entropy".into(),
            max_buckets: 255,
            min_node_weight: 0.0,
            layer_shrinkage: LayerShrinkage::PerLayer,
            examples_per_layer: None,
            seed: 42,
            threads: 1,
            eval_every: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_trees < 1 {
            return Err(Error::Config("num_trees must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::Config(format!(
                "learning_rate must be in (0, 1], got {}",
                self.learning_rate
            )));
        }
        if self.max_buckets < 2 {
            return Err(Error::Config("max_buckets must be >= 2".into()));
        }
        if self.eval_every < 1 {
            return Err(Error::Config("eval_every must be >= 1".into()));
        }
        if self.threads < 1 {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        if self.examples_per_layer == Some(0) {
            return Err(Error::Config("examples_per_layer must be >= 1".into()));
        }
        self.regularization().validate(self.hessian_mode)?;
        let loss = loss_by_name(&self.loss)?;
        if !loss.supports(self.hessian_mode) {
            return Err(Error::UnsupportedMode(format!(
                "loss '{}' does not support the {} Hessian",
                self.loss, self.hessian_mode
            )));
        }
        if self.growth_mode == GrowthMode::LayerByLayer && self.hessian_mode == HessianMode::Full {
            log::warn!("layer-by-layer growth with the full Hessian is an untested combination");
        }
        Ok(())
    }

    pub fn regularization(&self) -> Regularization {
        Regularization::new(self.lambda, self.gamma).with_lambda_scale(self.lambda_scale)
    }

    fn growth_config(&self) -> GrowthConfig {
        GrowthConfig {
            max_depth: self.max_depth,
            growth_mode: self.growth_mode,
            pruning: self.pruning,
            learning_rate: self.learning_rate,
            min_node_weight: self.min_node_weight,
            layer_shrinkage: self.layer_shrinkage,
            examples_per_layer: self.examples_per_layer,
            threads: self.threads,
        }
    }
}

/// One row of the metrics history, recorded after each tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub tree_index: usize,
    pub train_accuracy: f64,
    pub train_cross_entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eval_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eval_cross_entropy: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalMetrics {
    pub accuracy: f64,
    pub cross_entropy: f64,
}

/// Accuracy (argmax, ties to the lowest class id) and mean clamped
/// cross-entropy over a score matrix.
fn metrics_from_scores(scores: &[f64], labels: &[u32], num_classes: usize) -> EvalMetrics {
    let n = labels.len();
    let mut correct = 0usize;
    let mut xent = 0.0;
    for i in 0..n {
        let row = &scores[i * num_classes..(i + 1) * num_classes];
        let mut arg = 0usize;
        for (c, &s) in row.iter().enumerate() {
            if s > row[arg] {
                arg = c;
            }
        }
        let label = labels[i] as usize;
        if arg == label {
            correct += 1;
        }
        let p = softmax(row)[label].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
        xent -= p.ln();
    }
    EvalMetrics {
        accuracy: correct as f64 / n as f64,
        cross_entropy: xent / n as f64,
    }
}

/// Train an ensemble, returning it with the per-tree metric history.
pub fn train(
    train_data: &LabeledDataset,
    eval_data: Option<&LabeledDataset>,
    config: &TrainConfig,
) -> Result<(Ensemble, Vec<MetricsRecord>)> {
    config.validate()?;
    train_data.validate_for_training()?;
    let n = train_data.num_rows();
    let m = train_data.num_features();
    let c = train_data.num_classes();
    if let Some(e) = eval_data {
        if e.num_features() != m {
            return Err(Error::Shape(format!(
                "eval data has {} features, train has {m}",
                e.num_features()
            )));
        }
        if e.labels().iter().any(|&l| l as usize >= c) {
            return Err(Error::Shape(
                "eval data contains labels outside the training classes".into(),
            ));
        }
    }

    let loss = loss_by_name(&config.loss)?;
    let reg = config.regularization();
    let growth = config.growth_config();
    if let Some(k) = config.examples_per_layer {
        if k != n {
            log::info!(
                "examples_per_layer {k} requested; single-process training consumes the full batch of {n} per layer"
            );
        }
    }
    if config.multiclass_strategy == MulticlassStrategy::TreePerClass
        && !config.num_trees.is_multiple_of(c)
    {
        log::info!(
            "num_trees {} is not a multiple of {c} classes; the final round builds trees for classes 0..{} only",
            config.num_trees,
            config.num_trees % c
        );
    }

    let boundaries = build_boundaries_partitioned(train_data, config.max_buckets, config.threads)?;
    let bucketized = bucketize(train_data, &boundaries)?;

    let mut predictions = vec![0.0f64; n * c];
    let mut eval_predictions = eval_data.map(|e| vec![0.0f64; e.num_rows() * c]);

    let mut trees: Vec<TreeNode> = Vec::with_capacity(config.num_trees);
    let mut history: Vec<MetricsRecord> = Vec::with_capacity(config.num_trees);

    for t in 0..config.num_trees {
        let tree = match config.multiclass_strategy {
            MulticlassStrategy::Vector => {
                let source = VectorSource::new(loss.as_ref(), config.hessian_mode);
                grow_tree(&bucketized, &predictions, &source, &reg, &growth)
            }
            MulticlassStrategy::TreePerClass => {
                // Class order 0..C-1, restarting every C trees; predictions
                // refresh after each tree because the matrix updates below.
                let class = t % c;
                let source = SingleClassSource {
                    loss: loss.as_ref(),
                    class,
                };
                grow_tree(&bucketized, &predictions, &source, &reg, &growth)
                    .map(|tree| expand_to_class_vector(tree, class, c))
            }
        }
        .map_err(|e| round_context(e, t))?;

        apply_tree(&tree, &bucketized, &mut predictions, c);
        if let (Some(e), Some(ep)) = (eval_data, eval_predictions.as_mut()) {
            for i in 0..e.num_rows() {
                let w = tree.route(e.row(i));
                for (s, x) in ep[i * c..(i + 1) * c].iter_mut().zip(w) {
                    *s += x;
                }
            }
        }

        let train_metrics = metrics_from_scores(&predictions, train_data.labels(), c);
        let eval_due = (t + 1) % config.eval_every == 0 || t + 1 == config.num_trees;
        let eval_metrics = match (&eval_predictions, eval_data) {
            (Some(ep), Some(e)) if eval_due => Some(metrics_from_scores(ep, e.labels(), c)),
            _ => None,
        };
        history.push(MetricsRecord {
            tree_index: t,
            train_accuracy: train_metrics.accuracy,
            train_cross_entropy: train_metrics.cross_entropy,
            eval_accuracy: eval_metrics.map(|m| m.accuracy),
            eval_cross_entropy: eval_metrics.map(|m| m.cross_entropy),
        });
        trees.push(tree);
    }

    let ensemble = Ensemble::new(
        c,
        m,
        train_data.label_names().to_vec(),
        boundaries,
        trees,
        config.clone(),
    );
    Ok((ensemble, history))
}

fn grow_tree(
    data: &BucketizedDataset,
    predictions: &[f64],
    source: &dyn GradientSource,
    reg: &Regularization,
    growth: &GrowthConfig,
) -> Result<TreeNode> {
    match growth.growth_mode {
        GrowthMode::WholeTree => grow_whole_tree(data, predictions, source, reg, growth),
        GrowthMode::LayerByLayer => {
            grow_layer_by_layer(data, predictions, source, reg, growth).map(|(tree, _)| tree)
        }
    }
}

fn round_context(e: Error, round: usize) -> Error {
    match e {
        Error::DegenerateLeaf(msg) => Error::DegenerateLeaf(format!("round {round}: {msg}")),
        other => other,
    }
}

/// Add a finalized tree's contribution to every training row.
fn apply_tree(tree: &TreeNode, data: &BucketizedDataset, predictions: &mut [f64], c: usize) {
    for i in 0..data.num_rows() {
        let w = tree.route_buckets(data.bucket_row(i));
        for (s, x) in predictions[i * c..(i + 1) * c].iter_mut().zip(w) {
            *s += x;
        }
    }
}

/// Rewrite a scalar tree's length-1 leaves as length-C vectors with the
/// single nonzero entry at `class`, so one inference path serves both
/// strategies.
fn expand_to_class_vector(tree: TreeNode, class: usize, num_classes: usize) -> TreeNode {
    match tree {
        TreeNode::Leaf { weight } => {
            debug_assert_eq!(weight.len(), 1);
            let mut w = vec![0.0; num_classes];
            w[class] = weight[0];
            TreeNode::Leaf { weight: w }
        }
        TreeNode::Split {
            feature,
            threshold_index,
            threshold,
            left,
            right,
            internal_weight,
        } => TreeNode::Split {
            feature,
            threshold_index,
            threshold,
            left: Box::new(expand_to_class_vector(*left, class, num_classes)),
            right: Box::new(expand_to_class_vector(*right, class, num_classes)),
            internal_weight,
        },
    }
}

/// Accuracy and cross-entropy of an ensemble on a labeled dataset.
pub fn evaluate(ensemble: &Ensemble, data: &LabeledDataset) -> Result<EvalMetrics> {
    if data.num_features() != ensemble.num_features() {
        return Err(Error::Shape(format!(
            "data has {} features, model expects {}",
            data.num_features(),
            ensemble.num_features()
        )));
    }
    let c = ensemble.num_classes();
    if data.labels().iter().any(|&l| l as usize >= c) {
        return Err(Error::Shape(
            "data contains labels outside the model's classes".into(),
        ));
    }
    let n = data.num_rows();
    let mut scores = vec![0.0f64; n * c];
    for i in 0..n {
        let s = ensemble.predict_scores(data.row(i))?;
        scores[i * c..(i + 1) * c].copy_from_slice(&s);
    }
    Ok(metrics_from_scores(&scores, data.labels(), c))
}

/// Serialize the metric history as line-delimited JSON records.
pub fn render_metrics(history: &[MetricsRecord]) -> String {
    let mut out = String::new();
    for record in history {
        out.push_str(&serde_json::to_string(record).expect("metrics serialize"));
        out.push('\n');
    }
    out
}

/// Parse a metrics file produced by [`render_metrics`].
pub fn parse_metrics(text: &str) -> Result<Vec<MetricsRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: 0,
                message: format!("bad metrics record: {e}"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::LabeledDataset;
    use crate::solver::solve_leaf;

    fn blob_dataset(counts: [usize; 3]) -> LabeledDataset {
        // Three well-separated 2-D blobs on a deterministic lattice.
        let centers = [(-4.0, 0.0), (4.0, 0.0), (0.0, 6.0)];
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (k, (cx, cy)) in centers.iter().enumerate() {
            for i in 0..counts[k] {
                let dx = ((i * 13) % 7) as f64 / 7.0 - 0.5;
                let dy = ((i * 29) % 11) as f64 / 11.0 - 0.5;
                features.push(cx + dx);
                features.push(cy + dy);
                labels.push(k as u32);
            }
        }
        LabeledDataset::from_parts(features, 2, labels, 3).unwrap()
    }

    fn three_blob_dataset(n_per: usize) -> LabeledDataset {
        blob_dataset([n_per; 3])
    }

    #[test]
    fn stump_round_matches_closed_form_and_reduces_loss() {
        // Unbalanced class frequencies give the root a nonzero gradient.
        let data = blob_dataset([6, 10, 14]);
        let config = TrainConfig {
            num_trees: 1,
            max_depth: 0,
            ..TrainConfig::default()
        };
        let (ensemble, history) = train(&data, None, &config).unwrap();
        assert_eq!(ensemble.num_trees(), 1);

        // Closed-form stump from class frequencies at zero scores.
        let loss = loss_by_name("cross_entropy").unwrap();
        let mut stats = crate::histogram::NodeStats::zeros(3, HessianMode::Diag);
        for i in 0..data.num_rows() {
            let gh = loss
                .grad_hess(&[0.0, 0.0, 0.0], data.label(i), HessianMode::Diag)
                .unwrap();
            stats.add_grad_hess(&gh);
        }
        let sol = solve_leaf(&stats, &config.regularization()).unwrap();
        let expected: Vec<f64> = sol.weight.iter().map(|w| w * 0.3).collect();
        let scores = ensemble.predict_scores(data.row(0)).unwrap();
        for (s, e) in scores.iter().zip(&expected) {
            assert!((s - e).abs() < 1e-12);
        }

        // Training cross-entropy strictly below the zero-score baseline ln 3.
        assert!(history[0].train_cross_entropy < (3.0f64).ln());
    }

    #[test]
    fn training_is_deterministic() {
        let data = three_blob_dataset(12);
        let config = TrainConfig {
            num_trees: 5,
            max_depth: 2,
            ..TrainConfig::default()
        };
        let (a, ha) = train(&data, Some(&data), &config).unwrap();
        let (b, hb) = train(&data, Some(&data), &config).unwrap();
        assert_eq!(ha, hb);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn cross_entropy_decreases_over_rounds() {
        let data = three_blob_dataset(15);
        let config = TrainConfig {
            num_trees: 10,
            max_depth: 2,
            ..TrainConfig::default()
        };
        let (_, history) = train(&data, None, &config).unwrap();
        for w in history.windows(2) {
            assert!(
                w[1].train_cross_entropy <= w[0].train_cross_entropy + 1e-12,
                "round {}: {} -> {}",
                w[1].tree_index,
                w[0].train_cross_entropy,
                w[1].train_cross_entropy
            );
        }
    }

    #[test]
    fn tree_per_class_builds_one_tree_per_class_in_order() {
        let data = three_blob_dataset(8);
        let config = TrainConfig {
            num_trees: 7, // 2 full rounds of 3 plus classes 0..1
            max_depth: 1,
            multiclass_strategy: MulticlassStrategy::TreePerClass,
            ..TrainConfig::default()
        };
        let (ensemble, history) = train(&data, None, &config).unwrap();
        assert_eq!(ensemble.num_trees(), 7);
        assert_eq!(history.len(), 7);
        // Tree t touches only class t % 3.
        for (t, tree) in ensemble.trees().iter().enumerate() {
            let class = t % 3;
            fn check(node: &TreeNode, class: usize) {
                match node {
                    TreeNode::Leaf { weight } => {
                        for (c, w) in weight.iter().enumerate() {
                            if c != class {
                                assert_eq!(*w, 0.0);
                            }
                        }
                    }
                    TreeNode::Split { left, right, .. } => {
                        check(left, class);
                        check(right, class);
                    }
                }
            }
            check(tree, class);
        }
    }

    #[test]
    fn tree_per_class_refresh_vanishes_at_tiny_learning_rate() {
        // With eta -> 0, refreshing predictions after each tree no longer
        // matters: the C trees of one round approach trees built from the
        // round-start predictions.
        let data = three_blob_dataset(10);
        let eta = 1e-6;
        let config = TrainConfig {
            num_trees: 3,
            max_depth: 1,
            learning_rate: eta,
            multiclass_strategy: MulticlassStrategy::TreePerClass,
            ..TrainConfig::default()
        };
        let (refreshed, _) = train(&data, None, &config).unwrap();

        // Frozen-prediction oracle: grow each class tree from zero scores.
        let loss = loss_by_name("cross_entropy").unwrap();
        let boundaries = build_boundaries_partitioned(&data, 255, 1).unwrap();
        let bucketized = bucketize(&data, &boundaries).unwrap();
        let zeros = vec![0.0; data.num_rows() * 3];
        for class in 0..3 {
            let source = SingleClassSource {
                loss: loss.as_ref(),
                class,
            };
            let frozen = grow_whole_tree(
                &bucketized,
                &zeros,
                &source,
                &Regularization::new(1.0, 0.0),
                &GrowthConfig {
                    max_depth: 1,
                    learning_rate: eta,
                    ..GrowthConfig::default()
                },
            )
            .unwrap();
            let frozen = expand_to_class_vector(frozen, class, 3);
            // Same structure and near-identical leaf weights.
            for i in 0..data.num_rows() {
                let a = refreshed.trees()[class].route(data.row(i));
                let b = frozen.route(data.row(i));
                for (x, y) in a.iter().zip(b) {
                    assert!((x - y).abs() < 1e-4, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn additivity_of_prediction_matrix() {
        let data = three_blob_dataset(9);
        let config = TrainConfig {
            num_trees: 4,
            max_depth: 2,
            ..TrainConfig::default()
        };
        let (ensemble, _) = train(&data, None, &config).unwrap();
        // evaluate(ensemble_k) == evaluate(ensemble_{k-1}) + tree_k for each row.
        for i in 0..data.num_rows() {
            let mut acc = [0.0f64; 3];
            for tree in ensemble.trees() {
                let w = tree.route(data.row(i));
                for (a, b) in acc.iter_mut().zip(w) {
                    *a += b;
                }
            }
            let scores = ensemble.predict_scores(data.row(i)).unwrap();
            for (a, s) in acc.iter().zip(&scores) {
                assert_eq!(a, s);
            }
        }
    }

    #[test]
    fn evaluate_zero_tree_equivalent_and_errors() {
        let data = three_blob_dataset(6);
        let config = TrainConfig {
            num_trees: 3,
            max_depth: 2,
            ..TrainConfig::default()
        };
        let (ensemble, history) = train(&data, Some(&data), &config).unwrap();
        let metrics = evaluate(&ensemble, &data).unwrap();
        let last = history.last().unwrap();
        assert!((metrics.accuracy - last.eval_accuracy.unwrap()).abs() < 1e-12);
        assert!((metrics.cross_entropy - last.eval_cross_entropy.unwrap()).abs() < 1e-9);

        let bad = LabeledDataset::from_parts(vec![1.0, 2.0], 1, vec![0, 1], 2).unwrap();
        assert!(evaluate(&ensemble, &bad).is_err());
    }

    #[test]
    fn zero_tree_ensemble_scores_uniformly() {
        // With no trees every row gets zero scores: argmax ties resolve to
        // class 0 and the cross-entropy is ln C.
        let data = blob_dataset([7, 5, 8]);
        let boundaries = build_boundaries_partitioned(&data, 255, 1).unwrap();
        let empty = crate::model::Ensemble::new(
            3,
            2,
            data.label_names().to_vec(),
            boundaries,
            Vec::new(),
            TrainConfig::default(),
        );
        let metrics = evaluate(&empty, &data).unwrap();
        assert!((metrics.accuracy - 7.0 / 20.0).abs() < 1e-12);
        assert!((metrics.cross_entropy - (3.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn argmax_ties_go_to_lowest_class() {
        let metrics = metrics_from_scores(&[0.0, 0.0, 0.0, 1.0, 0.0, 2.0], &[0, 2], 3);
        // Row 0 ties everywhere -> class 0 (correct); row 1 argmax = 2.
        assert_eq!(metrics.accuracy, 1.0);
        // Uniform row contributes ln 3.
        assert!((metrics.cross_entropy / 2.0) < (3.0f64).ln());
    }

    #[test]
    fn config_validation_rejects_bad_settings() {
        let default = TrainConfig::default;
        let bad = [
            TrainConfig { num_trees: 0, ..default() },
            TrainConfig { learning_rate: 0.0, ..default() },
            TrainConfig { hessian_mode: HessianMode::Full, lambda: 0.0, ..default() },
            TrainConfig {
                loss: "multiclass_exponential".into(),
                hessian_mode: HessianMode::Full,
                ..default()
            },
            TrainConfig { loss: "nope".into(), ..default() },
            TrainConfig { examples_per_layer: Some(0), ..default() },
        ];
        for config in bad {
            assert!(config.validate().is_err(), "{config:?} should be rejected");
        }
        let ok = TrainConfig {
            loss: "multiclass_exponential".into(),
            hessian_mode: HessianMode::Diag,
            ..default()
        };
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn threaded_training_smoke() {
        let data = three_blob_dataset(40);
        let config = TrainConfig {
            num_trees: 4,
            max_depth: 2,
            threads: 3,
            ..TrainConfig::default()
        };
        let (a, ha) = train(&data, None, &config).unwrap();
        let (b, hb) = train(&data, None, &config).unwrap();
        // Deterministic for a fixed thread count.
        assert_eq!(ha, hb);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(ha.last().unwrap().train_accuracy > 0.9);
    }

    #[test]
    fn metrics_roundtrip_through_text() {
        let records = vec![
            MetricsRecord {
                tree_index: 0,
                train_accuracy: 0.5,
                train_cross_entropy: 1.0,
                eval_accuracy: Some(0.4),
                eval_cross_entropy: Some(1.2),
            },
            MetricsRecord {
                tree_index: 1,
                train_accuracy: 0.75,
                train_cross_entropy: 0.5,
                eval_accuracy: None,
                eval_cross_entropy: None,
            },
        ];
        let text = render_metrics(&records);
        assert_eq!(parse_metrics(&text).unwrap(), records);
    }

    #[test]
    fn exponential_loss_trains() {
        let data = three_blob_dataset(8);
        let config = TrainConfig {
            num_trees: 5,
            max_depth: 2,
            loss: "multiclass_exponential".into(),
            ..TrainConfig::default()
        };
        let (ensemble, history) = train(&data, None, &config).unwrap();
        assert_eq!(ensemble.num_trees(), 5);
        // The separable blobs should be learned quickly.
        assert!(history.last().unwrap().train_accuracy > 0.9);
    }
}
