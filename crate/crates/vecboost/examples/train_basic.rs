//! Basic training: one vector-leaf tree per round predicts all class scores
//! at once. Builds a 4-class model on synthetic blobs, tracks metrics, and
//! runs a few predictions.
//!
//! Run with: `cargo run --release --example train_basic`

use vecboost::{train, LabeledDataset, TrainConfig};

/// Deterministic blob data: `classes` clusters in 2-D with lattice jitter.
fn blobs(classes: usize, per_class: usize) -> LabeledDataset {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for k in 0..classes {
        let angle = k as f64 / classes as f64 * std::f64::consts::TAU;
        let (cx, cy) = (4.0 * angle.cos(), 4.0 * angle.sin());
        for i in 0..per_class {
            let jx = ((i * 37 + k * 11) % 97) as f64 / 97.0 - 0.5;
            let jy = ((i * 53 + k * 7) % 89) as f64 / 89.0 - 0.5;
            features.push(cx + 2.0 * jx);
            features.push(cy + 2.0 * jy);
            labels.push(k as u32);
        }
    }
    LabeledDataset::from_parts(features, 2, labels, classes).unwrap()
}

fn main() {
    let train_data = blobs(4, 200);
    let eval_data = blobs(4, 50);

    let config = TrainConfig {
        num_trees: 20,
        max_depth: 3,
        ..TrainConfig::default()
    };
    let (model, history) = train(&train_data, Some(&eval_data), &config).unwrap();

    println!("round  train_acc  train_xent  eval_acc");
    for record in history.iter().step_by(4) {
        println!(
            "{:>5}  {:>9.4}  {:>10.4}  {:>8.4}",
            record.tree_index,
            record.train_accuracy,
            record.train_cross_entropy,
            record.eval_accuracy.unwrap()
        );
    }

    let last = history.last().unwrap();
    println!(
        "\n{} trees, {} classes: eval accuracy {:.4}",
        model.num_trees(),
        model.num_classes(),
        last.eval_accuracy.unwrap()
    );

    // Each prediction is a full probability vector.
    for row in [[4.0, 0.0], [0.0, 4.0], [-4.0, 0.5]] {
        let probs = model.predict_proba(&row).unwrap();
        let class = model.predict_class(&row).unwrap();
        let rendered: Vec<String> = probs.iter().map(|p| format!("{p:.3}")).collect();
        println!("x={row:?} -> class {class}, probabilities [{}]", rendered.join(", "));
    }
}
