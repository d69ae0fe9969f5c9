//! Model persistence and inspection: save to the versioned text format,
//! reload, verify predictions survive bit-exactly, and walk the trees.
//!
//! Run with: `cargo run --release --example save_load_inspect`

use vecboost::{train, Ensemble, LabeledDataset, TrainConfig, TreeNode};

fn moons(per_class: usize) -> LabeledDataset {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for i in 0..per_class {
        let t = std::f64::consts::PI * i as f64 / per_class as f64;
        let j = ((i * 41) % 23) as f64 / 23.0 - 0.5;
        features.extend([t.cos() + 0.2 * j, t.sin() - 0.1 * j]);
        labels.push(0);
        features.extend([1.0 - t.cos() + 0.1 * j, 0.5 - t.sin() + 0.2 * j]);
        labels.push(1);
    }
    LabeledDataset::from_parts(features, 2, labels, 2).unwrap()
}

fn describe(node: &TreeNode, indent: usize) {
    let pad = "  ".repeat(indent);
    match node {
        TreeNode::Leaf { weight } => {
            let ws: Vec<String> = weight.iter().map(|w| format!("{w:+.4}")).collect();
            println!("{pad}leaf [{}]", ws.join(", "));
        }
        TreeNode::Split {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            println!("{pad}feature {feature} <= {threshold:.4}?");
            describe(left, indent + 1);
            describe(right, indent + 1);
        }
    }
}

fn main() {
    let data = moons(200);
    let config = TrainConfig {
        num_trees: 3,
        max_depth: 2,
        ..TrainConfig::default()
    };
    let (model, _) = train(&data, None, &config).unwrap();

    let dir = std::env::temp_dir().join("vecboost_example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("moons.model");
    model.save(&path).unwrap();
    println!("saved {} trees to {}", model.num_trees(), path.display());

    let restored = Ensemble::load(&path).unwrap();
    let mut max_diff = 0.0f64;
    for i in 0..data.num_rows() {
        let a = model.predict_scores(data.row(i)).unwrap();
        let b = restored.predict_scores(data.row(i)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            max_diff = max_diff.max((x - y).abs());
        }
    }
    println!("max prediction difference after reload: {max_diff} (expected exactly 0)");
    assert_eq!(max_diff, 0.0);

    // The text format is made for reading; so is the in-memory tree.
    let text = std::fs::read_to_string(&path).unwrap();
    println!("\nfirst lines of the model file:");
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    println!("\ntree structures:");
    for (t, tree) in restored.trees().iter().enumerate() {
        println!("tree {t} ({} leaves):", tree.num_leaves());
        describe(tree, 1);
    }
}
