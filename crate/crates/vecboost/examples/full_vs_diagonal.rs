//! Full vs. diagonal Hessian strategies. The full strategy accumulates the
//! whole C x C second-derivative matrix per histogram cell and solves
//! `(lambda*I + H) w = -g` with a column-pivoted QR; the diagonal strategy
//! keeps only the Hessian diagonal, making accumulation and solves O(C).
//! Accuracy is typically comparable, so diagonal is the default.
//!
//! Run with: `cargo run --release --example full_vs_diagonal`

use std::time::Instant;

use vecboost::{train, HessianMode, LabeledDataset, TrainConfig};

/// Ring segments: a 6-class problem with enough class interaction that the
/// off-diagonal Hessian terms carry real information.
fn rings(per_class: usize) -> LabeledDataset {
    let classes = 6;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for k in 0..classes {
        for i in 0..per_class {
            let angle = (i as f64 / per_class as f64 + k as f64 / classes as f64)
                * std::f64::consts::TAU;
            let radius = 2.0 + (k % 3) as f64 + ((i * 31) % 17) as f64 / 17.0;
            features.push(radius * angle.cos());
            features.push(radius * angle.sin());
            features.push(k as f64 / 2.0 + 1.6 * (((i * 13 + k * 5) % 23) as f64 / 23.0 - 0.5));
            labels.push(k as u32);
        }
    }
    LabeledDataset::from_parts(features, 3, labels, classes).unwrap()
}

fn main() {
    let train_data = rings(300);
    let eval_data = rings(80);

    for mode in [HessianMode::Diag, HessianMode::Full] {
        let config = TrainConfig {
            num_trees: 20,
            max_depth: 4,
            hessian_mode: mode,
            ..TrainConfig::default()
        };
        let start = Instant::now();
        let (_, history) = train(&train_data, Some(&eval_data), &config).unwrap();
        let last = history.last().unwrap();
        println!(
            "{mode:>4} hessian: eval accuracy {:.4}, eval cross-entropy {:.4}, {:.2?}",
            last.eval_accuracy.unwrap(),
            last.eval_cross_entropy.unwrap(),
            start.elapsed()
        );
    }
}
