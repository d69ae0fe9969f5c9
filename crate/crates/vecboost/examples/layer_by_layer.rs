//! Layer-by-layer boosting treats every tree layer as its own boosting
//! step: gradients are recomputed before each layer, and internal nodes
//! contribute weight updates that descendants refine. The smaller steps in
//! function space usually converge faster than whole-tree growth at the
//! same tree budget.
//!
//! Run with: `cargo run --release --example layer_by_layer`

use vecboost::{train, GrowthMode, LabeledDataset, TrainConfig};

/// Two interleaved spirals plus a center cluster: hard enough that the
/// growth modes separate.
fn spirals(per_class: usize) -> LabeledDataset {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for i in 0..per_class {
        let t = 0.4 + 3.0 * i as f64 / per_class as f64;
        let jitter = ((i * 29) % 13) as f64 / 13.0 - 0.5;
        for (k, phase) in [0.0, std::f64::consts::PI].iter().enumerate() {
            features.push(t * (t + phase).cos() + 0.2 * jitter);
            features.push(t * (t + phase).sin() - 0.2 * jitter);
            labels.push(k as u32);
        }
        features.push(0.3 * jitter);
        features.push(0.3 * ((i * 17) % 11) as f64 / 11.0 - 0.15);
        labels.push(2);
    }
    LabeledDataset::from_parts(features, 2, labels, 3).unwrap()
}

fn main() {
    let train_data = spirals(400);
    let eval_data = spirals(131);

    let base = TrainConfig {
        num_trees: 15,
        max_depth: 4,
        ..TrainConfig::default()
    };

    let (_, whole) = train(&train_data, Some(&eval_data), &base).unwrap();
    let layered_config = TrainConfig {
        growth_mode: GrowthMode::LayerByLayer,
        ..base
    };
    let (_, layered) = train(&train_data, Some(&eval_data), &layered_config).unwrap();

    println!("eval accuracy by round (same tree budget):");
    println!("round  whole_tree  layer_by_layer");
    for (w, l) in whole.iter().zip(&layered).step_by(2) {
        println!(
            "{:>5}  {:>10.4}  {:>14.4}",
            w.tree_index,
            w.eval_accuracy.unwrap(),
            l.eval_accuracy.unwrap()
        );
    }
    let (w, l) = (whole.last().unwrap(), layered.last().unwrap());
    println!(
        "\nfinal: whole-tree {:.4} vs layer-by-layer {:.4} ({} trees each)",
        w.eval_accuracy.unwrap(),
        l.eval_accuracy.unwrap(),
        base.num_trees
    );
}
