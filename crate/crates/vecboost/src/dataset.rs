//! Dataset ingestion: LibSVM and CSV loaders producing a dense feature
//! matrix with contiguous integer class labels.
//!
//! Original labels (numeric or categorical) are remapped to `0..C-1` and the
//! mapping is kept on the dataset so predictions can be reported in the
//! original label space.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};

/// Dense labeled dataset: `n` rows by `m` columns plus a class label per row.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    features: Vec<f64>,
    labels: Vec<u32>,
    num_rows: usize,
    num_features: usize,
    num_classes: usize,
    feature_names: Option<Vec<String>>,
    /// Original label for each contiguous class id, in mapping order.
    label_names: Vec<String>,
}

impl LabeledDataset {
    /// Build a dataset from a row-major feature matrix and contiguous labels.
    pub fn from_parts(
        features: Vec<f64>,
        num_features: usize,
        labels: Vec<u32>,
        num_classes: usize,
    ) -> Result<Self> {
        if num_features == 0 {
            return Err(Error::Shape("num_features must be >= 1".into()));
        }
        if features.len() != labels.len() * num_features {
            return Err(Error::Shape(format!(
                "feature matrix has {} values, expected {} rows x {} columns",
                features.len(),
                labels.len(),
                num_features
            )));
        }
        if let Some(v) = features.iter().find(|v| !v.is_finite()) {
            return Err(Error::Shape(format!("non-finite feature value {v}")));
        }
        if let Some(&l) = labels.iter().find(|&&l| l as usize >= num_classes) {
            return Err(Error::Shape(format!(
                "label {l} out of range for {num_classes} classes"
            )));
        }
        let num_rows = labels.len();
        Ok(Self {
            features,
            labels,
            num_rows,
            num_features,
            num_classes,
            feature_names: None,
            label_names: (0..num_classes).map(|c| c.to_string()).collect(),
        })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.num_features..(i + 1) * self.num_features]
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    /// Original label string for a contiguous class id.
    pub fn label_name(&self, class: usize) -> &str {
        &self.label_names[class]
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    /// Checks the invariants required of a training substrate.
    pub fn validate_for_training(&self) -> Result<()> {
        if self.num_rows == 0 {
            return Err(Error::Shape("dataset has no rows".into()));
        }
        if self.num_classes < 2 {
            return Err(Error::Shape(format!(
                "training needs at least 2 classes, found {}",
                self.num_classes
            )));
        }
        Ok(())
    }

    /// Rewrite this dataset's class ids to match `target` label names, as
    /// when aligning an evaluation set to the training mapping. Fails if a
    /// label here does not appear in `target`.
    pub fn align_labels(&mut self, target: &[String]) -> Result<()> {
        let lookup: std::collections::HashMap<&str, u32> = target
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();
        let mut new_labels = Vec::with_capacity(self.labels.len());
        for &l in &self.labels {
            let name = &self.label_names[l as usize];
            match lookup.get(name.as_str()) {
                Some(&id) => new_labels.push(id),
                None => {
                    return Err(Error::Shape(format!(
                        "label '{name}' not present in the model's label mapping"
                    )))
                }
            }
        }
        self.labels = new_labels;
        self.num_classes = target.len();
        self.label_names = target.to_vec();
        Ok(())
    }
}

/// Sorts distinct raw labels (numerically when every label parses as an
/// integer, lexicographically otherwise) and returns the ordered names plus
/// the contiguous id for each input label.
fn remap_labels(raw: &[String]) -> (Vec<String>, Vec<u32>) {
    let mut distinct: Vec<String> = raw.to_vec();
    distinct.sort();
    distinct.dedup();
    let all_numeric = distinct.iter().all(|s| s.parse::<i64>().is_ok());
    if all_numeric {
        distinct.sort_by_key(|s| s.parse::<i64>().unwrap());
    }
    let lookup: std::collections::HashMap<&str, u32> = distinct
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as u32))
        .collect();
    let ids = raw.iter().map(|s| lookup[s.as_str()]).collect();
    (distinct, ids)
}

fn log_label_mapping(path: &str, names: &[String]) {
    let shown: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(i, n)| format!("{n}->{i}"))
        .collect();
    log::info!("{path}: label mapping [{}]", shown.join(", "));
}

/// Load a LibSVM-format file: each line is `label index:value ...` with
/// 1-based feature indices. Unlisted features are 0.0. Labels must be
/// integers and are remapped to contiguous ids in ascending numeric order.
///
/// `num_features` fixes the column count (e.g. to match a trained model);
/// when `None` the maximum index seen is used.
pub fn load_libsvm(path: impl AsRef<Path>, num_features: Option<usize>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&display, e))?;
    let reader = BufReader::new(file);

    let mut raw_labels: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut max_index = 0usize;

    for (line_no, line) in reader.lines().enumerate() {
        let line_no = line_no + 1;
        let line = line.map_err(|e| Error::io(&display, e))?;
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let mut tokens = line.split_whitespace();
        let Some(label_tok) = tokens.next() else {
            continue; // blank line
        };
        if label_tok.parse::<i64>().is_err() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("non-integer label '{label_tok}'"),
            });
        }
        let mut pairs = Vec::new();
        for tok in tokens {
            let (idx_str, val_str) = tok.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected index:value, found '{tok}'"),
            })?;
            let idx: usize = idx_str.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad feature index '{idx_str}'"),
            })?;
            if idx == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "feature indices are 1-based".into(),
                });
            }
            let val: f64 = val_str.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad feature value '{val_str}'"),
            })?;
            if !val.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite feature value '{val_str}'"),
                });
            }
            max_index = max_index.max(idx);
            pairs.push((idx - 1, val));
        }
        raw_labels.push(label_tok.to_string());
        rows.push(pairs);
    }

    if rows.is_empty() {
        return Err(Error::EmptyData(display));
    }
    let m = match num_features {
        Some(m) => {
            if max_index > m {
                return Err(Error::Shape(format!(
                    "file has feature index {max_index} but num_features is {m}"
                )));
            }
            m
        }
        None => max_index.max(1),
    };

    let mut features = vec![0.0; rows.len() * m];
    for (i, pairs) in rows.iter().enumerate() {
        for &(j, v) in pairs {
            features[i * m + j] = v;
        }
    }
    let (label_names, ids) = remap_labels(&raw_labels);
    log_label_mapping(&display, &label_names);
    let num_classes = label_names.len();
    let num_rows = ids.len();
    Ok(LabeledDataset {
        features,
        labels: ids,
        num_rows,
        num_features: m,
        num_classes,
        feature_names: None,
        label_names,
    })
}

/// Which CSV column holds the label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
    Last,
}

/// Load an RFC-4180 CSV file. Every non-label cell must parse as a finite
/// number. Labels may be numeric or categorical strings; categorical labels
/// map to contiguous ids in lexicographic order, numeric ones in ascending
/// numeric order.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: LabelColumn,
    has_header: bool,
) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&display, e))?;
    load_csv_from(file, &display, label_column, has_header)
}

fn load_csv_from(
    reader: impl Read,
    display: &str,
    label_column: LabelColumn,
    has_header: bool,
) -> Result<LabeledDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true) // width checked manually so ragged rows report their row number
        .from_reader(reader);

    let header: Option<Vec<String>> = if has_header {
        let h = rdr.headers().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        Some(h.iter().map(|s| s.to_string()).collect())
    } else {
        None
    };

    let mut width: Option<usize> = header.as_ref().map(|h| h.len());
    let mut label_idx: Option<usize> = None;
    let mut raw_labels: Vec<String> = Vec::new();
    let mut features: Vec<f64> = Vec::new();
    let mut num_rows = 0usize;

    for (rec_no, record) in rdr.records().enumerate() {
        let line_no = rec_no + 1 + usize::from(has_header);
        let record = record.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let w = *width.get_or_insert(record.len());
        if record.len() != w {
            return Err(Error::Parse {
                line: line_no,
                message: format!("ragged row: {} fields, expected {w}", record.len()),
            });
        }
        let li = match label_idx {
            Some(li) => li,
            None => {
                let li = resolve_label_index(&label_column, header.as_deref(), w)?;
                label_idx = Some(li);
                li
            }
        };
        for (j, cell) in record.iter().enumerate() {
            if j == li {
                raw_labels.push(cell.trim().to_string());
            } else {
                let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("unparseable numeric cell '{cell}' in column {j}"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("non-finite feature value '{cell}' in column {j}"),
                    });
                }
                features.push(v);
            }
        }
        num_rows += 1;
    }

    if num_rows == 0 {
        return Err(Error::EmptyData(display.to_string()));
    }
    let w = width.unwrap();
    if w < 2 {
        return Err(Error::Shape(
            "csv needs at least one feature column plus the label column".into(),
        ));
    }
    let li = label_idx.unwrap();
    let feature_names = header.map(|h| {
        h.iter()
            .enumerate()
            .filter(|(j, _)| *j != li)
            .map(|(_, s)| s.clone())
            .collect()
    });

    let (label_names, ids) = remap_labels(&raw_labels);
    log_label_mapping(display, &label_names);
    let num_classes = label_names.len();
    Ok(LabeledDataset {
        features,
        labels: ids,
        num_rows,
        num_features: w - 1,
        num_classes,
        feature_names,
        label_names,
    })
}

fn resolve_label_index(
    label_column: &LabelColumn,
    header: Option<&[String]>,
    width: usize,
) -> Result<usize> {
    match label_column {
        LabelColumn::Index(i) => {
            if *i >= width {
                Err(Error::Config(format!(
                    "label column index {i} out of range for {width} columns"
                )))
            } else {
                Ok(*i)
            }
        }
        LabelColumn::Last => Ok(width - 1),
        LabelColumn::Name(name) => match header {
            Some(h) => h
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::Config(format!("label column '{name}' not found in header"))),
            None => Err(Error::Config(
                "label column by name requires a header row".into(),
            )),
        },
    }
}
