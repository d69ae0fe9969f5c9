//! Multiclass gradient boosted decision trees with vector-valued leaves.
//!
//! One tree per boosting iteration predicts scores for all `C` classes at
//! once: leaves hold length-`C` weight vectors, leaf weights come from a
//! second-order (Newton) step with either the full `C x C` Hessian or its
//! diagonal, and split quality is the children's quadratic gain against the
//! parent's. Compared to the usual one-tree-per-class reduction this needs
//! far fewer trees for the same accuracy.
//!
//! Feature values are quantile-binned once up front and split search scans
//! per-bucket gradient/Hessian histograms. Two growth modes are available:
//! whole-tree (gradients fixed per tree) and layer-by-layer boosting, which
//! recomputes gradients before every tree layer and lets internal nodes
//! contribute immediate weight updates aggregated into the leaves at
//! finalization.
//!
//! # Quick start
//!
//! ```
//! use vecboost::{train, LabeledDataset, TrainConfig};
//!
//! // Tiny 2-feature, 3-class dataset (row-major features).
//! let features = vec![
//!     0.0, 0.0,  0.2, 0.1,  1.0, 1.0,  1.2, 0.9,  2.0, 0.0,  2.1, 0.2,
//! ];
//! let labels = vec![0, 0, 1, 1, 2, 2];
//! let data = LabeledDataset::from_parts(features, 2, labels, 3).unwrap();
//!
//! let config = TrainConfig { num_trees: 5, max_depth: 2, ..Default::default() };
//! let (model, history) = train(&data, None, &config).unwrap();
//! assert_eq!(model.num_trees(), 5);
//! assert!(history.last().unwrap().train_accuracy > 0.9);
//! let probs = model.predict_proba(&[0.1, 0.0]).unwrap();
//! assert_eq!(probs.len(), 3);
//! ```
//!
//! The `examples/` directory walks through each capability: basic training,
//! layer-by-layer boosting, full vs. diagonal Hessians, the tree-per-class
//! baseline, loss pluggability, and model persistence. A thin `vecboost`
//! binary wraps the library with `train`, `predict`, `evaluate`, and
//! `inspect` subcommands.

pub mod binning;
pub mod booster;
pub mod dataset;
pub mod error;
pub mod grower;
pub mod histogram;
pub mod loss;
pub mod model;
pub mod solver;
pub mod sym;

pub use binning::{build_boundaries, bucketize, BinBoundaries, BucketizedDataset};
pub use booster::{
    evaluate, parse_metrics, render_metrics, train, EvalMetrics, MetricsRecord,
    MulticlassStrategy, TrainConfig,
};
pub use dataset::{load_csv, load_libsvm, LabelColumn, LabeledDataset};
pub use error::{Error, Result};
pub use grower::{GrowthMode, LayerShrinkage, Pruning, TreeNode};
pub use loss::{
    loss_by_name, samme_encode, softmax, CrossEntropy, GradHess, HessianMode, LossFunction,
    MulticlassExponential,
};
pub use model::Ensemble;
pub use solver::{solve_leaf, split_gain, LambdaScale, LeafSolution, Regularization, SplitDecision};
