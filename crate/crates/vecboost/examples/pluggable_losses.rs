//! Loss pluggability. Built-in losses are selected by name; anything
//! twice-differentiable can be plugged in by implementing [`LossFunction`]
//! and driving the grower directly.
//!
//! Run with: `cargo run --release --example pluggable_losses`

use vecboost::binning::{build_boundaries, bucketize};
use vecboost::error::Result;
use vecboost::grower::{grow_whole_tree, GrowthConfig, VectorSource};
use vecboost::loss::{samme_encode, GradHess, HessData, HessianMode, LossFunction};
use vecboost::solver::Regularization;
use vecboost::{train, LabeledDataset, TrainConfig};

fn blobs(classes: usize, per_class: usize) -> LabeledDataset {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for k in 0..classes {
        for i in 0..per_class {
            features.push(k as f64 * 3.0 + ((i * 37) % 97) as f64 / 97.0);
            features.push(((i * 53 + k * 7) % 89) as f64 / 89.0);
            labels.push(k as u32);
        }
    }
    LabeledDataset::from_parts(features, 2, labels, classes).unwrap()
}

/// A squared-error loss against the sum-to-zero label encoding: not one of
/// the built-ins, just here to show the trait surface.
struct EncodedSquaredError;

impl LossFunction for EncodedSquaredError {
    fn name(&self) -> &'static str {
        "encoded_squared_error"
    }

    fn eval(&self, scores: &[f64], label: usize) -> f64 {
        let enc = samme_encode(label, scores.len());
        scores
            .iter()
            .zip(&enc)
            .map(|(s, e)| (s - e) * (s - e))
            .sum::<f64>()
            / 2.0
    }

    fn grad_hess(&self, scores: &[f64], label: usize, _mode: HessianMode) -> Result<GradHess> {
        let enc = samme_encode(label, scores.len());
        Ok(GradHess {
            grad: scores.iter().zip(&enc).map(|(s, e)| s - e).collect(),
            hess: HessData::Diag(vec![1.0; scores.len()]),
        })
    }

    fn supports(&self, mode: HessianMode) -> bool {
        mode == HessianMode::Diag
    }
}

fn main() {
    let train_data = blobs(4, 120);
    let eval_data = blobs(4, 30);

    // Built-in losses, selected by configuration name.
    for loss in ["cross_entropy", "multiclass_exponential"] {
        let config = TrainConfig {
            num_trees: 10,
            max_depth: 3,
            loss: loss.into(),
            ..TrainConfig::default()
        };
        let (_, history) = train(&train_data, Some(&eval_data), &config).unwrap();
        println!(
            "{loss:>23}: eval accuracy {:.4}",
            history.last().unwrap().eval_accuracy.unwrap()
        );
    }

    // A custom loss through the grower API: a minimal boosting loop.
    let loss = EncodedSquaredError;
    let boundaries = build_boundaries(&train_data, 255).unwrap();
    let data = bucketize(&train_data, &boundaries).unwrap();
    let source = VectorSource::new(&loss, HessianMode::Diag);
    let reg = Regularization::new(1.0, 0.0);
    let growth = GrowthConfig {
        max_depth: 3,
        ..GrowthConfig::default()
    };

    let n = train_data.num_rows();
    let c = train_data.num_classes();
    let mut predictions = vec![0.0f64; n * c];
    let mut trees = Vec::new();
    for _ in 0..10 {
        let tree = grow_whole_tree(&data, &predictions, &source, &reg, &growth).unwrap();
        for i in 0..n {
            let w = tree.route_buckets(data.bucket_row(i));
            for (s, x) in predictions[i * c..(i + 1) * c].iter_mut().zip(w) {
                *s += x;
            }
        }
        trees.push(tree);
    }
    let correct = (0..eval_data.num_rows())
        .filter(|&i| {
            let mut scores = vec![0.0f64; c];
            for tree in &trees {
                for (s, x) in scores.iter_mut().zip(tree.route(eval_data.row(i))) {
                    *s += x;
                }
            }
            let argmax = (0..c).max_by(|&a, &b| scores[a].total_cmp(&scores[b])).unwrap();
            argmax == eval_data.label(i)
        })
        .count();
    println!(
        "{:>23}: eval accuracy {:.4} (custom loss via the grower API)",
        loss.name(),
        correct as f64 / eval_data.num_rows() as f64
    );
}
