//! Shared helpers for the integration test suites: benchmark dataset
//! loading and small synthetic generators.

use std::io::Read;
use std::path::PathBuf;

use vecboost::dataset::{load_csv, LabelColumn, LabeledDataset};

/// Root of the checked-in benchmark data; override with VECBOOST_DATA_DIR.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("VECBOOST_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// The 26-class letter recognition task: 16k train / 4k test rows,
/// 16 integer features, labels A..Z.
pub fn load_letter() -> (LabeledDataset, LabeledDataset) {
    let dir = data_dir().join("letter");
    let train = load_csv(
        dir.join("letter-train.csv"),
        LabelColumn::Name("letter".into()),
        true,
    )
    .expect("letter-train.csv (see scripts/fetch_data.sh)");
    let mut test = load_csv(
        dir.join("letter-test.csv"),
        LabelColumn::Name("letter".into()),
        true,
    )
    .expect("letter-test.csv (see scripts/fetch_data.sh)");
    test.align_labels(train.label_names()).unwrap();
    (train, test)
}

fn read_idx_gz(path: &PathBuf) -> Vec<u8> {
    let f = std::fs::File::open(path)
        .unwrap_or_else(|e| panic!("{} (see scripts/fetch_data.sh): {e}", path.display()));
    let mut decoder = flate2::read::GzDecoder::new(f);
    let mut out = Vec::new();
    decoder.read_to_end(&mut out).expect("gzip idx payload");
    out
}

fn load_idx_pair(images: &PathBuf, labels: &PathBuf) -> LabeledDataset {
    let img = read_idx_gz(images);
    let lab = read_idx_gz(labels);
    assert_eq!(u32::from_be_bytes(img[0..4].try_into().unwrap()), 2051);
    assert_eq!(u32::from_be_bytes(lab[0..4].try_into().unwrap()), 2049);
    let n = u32::from_be_bytes(img[4..8].try_into().unwrap()) as usize;
    let rows = u32::from_be_bytes(img[8..12].try_into().unwrap()) as usize;
    let cols = u32::from_be_bytes(img[12..16].try_into().unwrap()) as usize;
    let m = rows * cols;
    let features: Vec<f64> = img[16..16 + n * m].iter().map(|&b| b as f64).collect();
    let labels: Vec<u32> = lab[8..8 + n].iter().map(|&b| b as u32).collect();
    LabeledDataset::from_parts(features, m, labels, 10).unwrap()
}

/// The 10-digit image task: 60k train / 10k test rows of 28x28 grayscale
/// pixels, stored as the standard idx.gz files.
pub fn load_mnist() -> (LabeledDataset, LabeledDataset) {
    let dir = data_dir().join("mnist");
    let train = load_idx_pair(
        &dir.join("train-images-idx3-ubyte.gz"),
        &dir.join("train-labels-idx1-ubyte.gz"),
    );
    let test = load_idx_pair(
        &dir.join("t10k-images-idx3-ubyte.gz"),
        &dir.join("t10k-labels-idx1-ubyte.gz"),
    );
    (train, test)
}
