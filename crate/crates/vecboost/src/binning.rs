//! Quantile binning: per-feature threshold construction and bucketization.
//!
//! Thresholds come from a mergeable quantile summary with rank error
//! `eps = 1/(2B)` for `B` buckets. Summaries built over row partitions merge
//! in ascending partition order, so a distributed builder could reuse the
//! same machinery. Summaries stay exact until they exceed their size cap,
//! which keeps small datasets (and the `#distinct <= B` case) lossless.
//!
//! Bucket semantics: `bucket(v) = |{j : v > t_j}|` over the sorted thresholds
//! `t_j`, i.e. values equal to a threshold go left.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// One retained value with bounds on its rank in the underlying data:
/// `rmin <= #(< value)`, `#(<= value) <= rmax`, and at least `wmin`
/// occurrences of `value` itself. Exact summaries hold these with equality.
#[derive(Debug, Clone, Copy)]
struct SummaryEntry {
    value: f64,
    rmin: f64,
    rmax: f64,
    wmin: f64,
}

/// Streaming-mergeable quantile summary over one feature's values.
#[derive(Debug, Clone)]
pub struct QuantileSummary {
    entries: Vec<SummaryEntry>,
    total: f64,
    cap: usize,
}

impl QuantileSummary {
    /// A summary whose quantile queries stay within `eps * n` rank error.
    pub fn with_rank_error(eps: f64) -> Self {
        assert!(eps > 0.0 && eps < 1.0);
        // Capacity of 4/eps keeps the prune error at eps/4 per side, leaving
        // headroom for merge slack before queries drift past eps.
        let cap = (4.0 / eps).ceil() as usize + 1;
        Self {
            entries: Vec::new(),
            total: 0.0,
            cap,
        }
    }

    pub fn rank_error_for_buckets(max_buckets: usize) -> f64 {
        1.0 / (2.0 * max_buckets as f64)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Absorb a batch of values. The batch is sorted internally; equal values
    /// collapse into one entry.
    pub fn insert(&mut self, values: &[f64]) {
        if values.is_empty() {
            return;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite feature values"));
        let mut entries = Vec::new();
        let mut cum = 0.0;
        let mut i = 0;
        while i < sorted.len() {
            let v = sorted[i];
            let mut count = 1.0;
            while i + 1 < sorted.len() && sorted[i + 1] == v {
                count += 1.0;
                i += 1;
            }
            entries.push(SummaryEntry {
                value: v,
                rmin: cum,
                rmax: cum + count,
                wmin: count,
            });
            cum += count;
            i += 1;
        }
        let batch = QuantileSummary {
            entries,
            total: cum,
            cap: self.cap,
        };
        if self.entries.is_empty() {
            *self = batch;
        } else {
            self.merge(&batch);
        }
        self.prune();
    }

    /// Combine another summary into this one. Rank bounds of each retained
    /// value are widened by the counterpart's local uncertainty, so merging
    /// exact summaries stays exact.
    pub fn merge(&mut self, other: &QuantileSummary) {
        if other.entries.is_empty() {
            return;
        }
        if self.entries.is_empty() {
            self.entries = other.entries.clone();
            self.total = other.total;
            return;
        }
        let a = &self.entries;
        let b = &other.entries;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = match (a.get(i), b.get(j)) {
                (Some(ea), Some(eb)) => ea.value <= eb.value,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_a && j < b.len() && a[i].value == b[j].value {
                out.push(SummaryEntry {
                    value: a[i].value,
                    rmin: a[i].rmin + b[j].rmin,
                    rmax: a[i].rmax + b[j].rmax,
                    wmin: a[i].wmin + b[j].wmin,
                });
                i += 1;
                j += 1;
                continue;
            }
            let (own, other_entries, other_total, pos) = if take_a {
                (&a[i], b, other.total, j)
            } else {
                (&b[j], a, self.total, i)
            };
            // Everything at or below the counterpart's predecessor is below
            // us; everything from its successor's first occurrence is above.
            let below = if pos > 0 {
                let p = &other_entries[pos - 1];
                p.rmin + p.wmin
            } else {
                0.0
            };
            let above_bound = if pos < other_entries.len() {
                let nx = &other_entries[pos];
                nx.rmax - nx.wmin
            } else {
                other_total
            };
            out.push(SummaryEntry {
                value: own.value,
                rmin: own.rmin + below,
                rmax: own.rmax + above_bound,
                wmin: own.wmin,
            });
            if take_a {
                i += 1;
            } else {
                j += 1;
            }
        }
        self.entries = out;
        self.total += other.total;
        self.prune();
    }

    /// Shrink to the size cap by keeping entries nearest to evenly spaced
    /// ranks. Retained entries keep their own rank bounds, which remain
    /// valid, so pruning only widens query gaps.
    fn prune(&mut self) {
        if self.entries.len() <= self.cap {
            return;
        }
        let n = self.entries.len();
        let mut keep = Vec::with_capacity(self.cap);
        keep.push(0);
        let interior = self.cap - 2;
        for k in 1..=interior {
            let target = self.total * k as f64 / (interior + 1) as f64;
            let idx = self.closest_by_rmax(target);
            let idx = idx.clamp(1, n - 2);
            if *keep.last().unwrap() < idx {
                keep.push(idx);
            }
        }
        if *keep.last().unwrap() != n - 1 {
            keep.push(n - 1);
        }
        self.entries = keep.into_iter().map(|i| self.entries[i]).collect();
    }

    /// Index of the entry whose `rmax` is closest to `target`, preferring the
    /// lower entry on ties.
    fn closest_by_rmax(&self, target: f64) -> usize {
        let entries = &self.entries;
        let pp = entries.partition_point(|e| e.rmax < target);
        if pp == 0 {
            return 0;
        }
        if pp >= entries.len() {
            return entries.len() - 1;
        }
        let lo_gap = (target - entries[pp - 1].rmax).abs();
        let hi_gap = (entries[pp].rmax - target).abs();
        if lo_gap <= hi_gap {
            pp - 1
        } else {
            pp
        }
    }

    /// Split thresholds for `max_buckets` buckets. A value equal to a
    /// threshold lands in the left bucket.
    ///
    /// While the summary holds at most `max_buckets` distinct values, every
    /// adjacent pair yields a midpoint threshold, so no raw-value split is
    /// lost. Larger summaries cut exactly at the values nearest the
    /// `B`-quantile ranks; with the tie rule the left count of such a cut is
    /// the entry's own (near-exact) rank.
    pub fn boundaries(&self, max_buckets: usize) -> Vec<f64> {
        assert!(max_buckets >= 2);
        if self.entries.len() <= 1 {
            return Vec::new();
        }
        if self.entries.len() <= max_buckets {
            return self
                .entries
                .windows(2)
                .map(|w| w[0].value + (w[1].value - w[0].value) / 2.0)
                .collect();
        }
        let mut cuts: Vec<f64> = Vec::new();
        for k in 1..max_buckets {
            let target = self.total * k as f64 / max_buckets as f64;
            let idx = self.closest_by_rmax(target);
            if idx + 1 < self.entries.len() {
                cuts.push(self.entries[idx].value);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        cuts
    }
}

/// Per-feature sorted split thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinBoundaries {
    thresholds: Vec<Vec<f64>>,
    max_buckets: usize,
}

impl BinBoundaries {
    pub fn num_features(&self) -> usize {
        self.thresholds.len()
    }

    pub fn max_buckets(&self) -> usize {
        self.max_buckets
    }

    pub fn feature_thresholds(&self, feature: usize) -> &[f64] {
        &self.thresholds[feature]
    }

    /// Number of buckets a feature actually uses (thresholds + 1).
    pub fn num_buckets(&self, feature: usize) -> usize {
        self.thresholds[feature].len() + 1
    }

    /// `|{j : v > t_j}|`: the index of the bucket holding `v`.
    #[inline]
    pub fn bucket_of(&self, feature: usize, value: f64) -> usize {
        self.thresholds[feature].partition_point(|&t| t < value)
    }

    /// Checks thresholds are strictly increasing and within the bucket cap.
    pub fn validate(&self) -> Result<()> {
        for (f, ts) in self.thresholds.iter().enumerate() {
            if ts.len() + 1 > self.max_buckets {
                return Err(Error::Shape(format!(
                    "feature {f} has {} thresholds, exceeding {} buckets",
                    ts.len(),
                    self.max_buckets
                )));
            }
            if ts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Shape(format!(
                    "feature {f} thresholds are not strictly increasing"
                )));
            }
        }
        Ok(())
    }
}

/// Build per-feature quantile thresholds from a single pass over the data.
pub fn build_boundaries(dataset: &LabeledDataset, max_buckets: usize) -> Result<BinBoundaries> {
    build_boundaries_partitioned(dataset, max_buckets, 1)
}

/// Partitioned construction: rows are split into `num_partitions` contiguous
/// chunks, each summarized independently, then merged in ascending partition
/// order. Results are deterministic for a fixed partition count.
pub fn build_boundaries_partitioned(
    dataset: &LabeledDataset,
    max_buckets: usize,
    num_partitions: usize,
) -> Result<BinBoundaries> {
    if max_buckets < 2 {
        return Err(Error::Config(format!(
            "max_buckets must be >= 2, got {max_buckets}"
        )));
    }
    if max_buckets > u16::MAX as usize + 1 {
        return Err(Error::Config(format!(
            "max_buckets must be <= {}, got {max_buckets}",
            u16::MAX as usize + 1
        )));
    }
    let n = dataset.num_rows();
    let m = dataset.num_features();
    let parts = num_partitions.max(1).min(n.max(1));
    let eps = QuantileSummary::rank_error_for_buckets(max_buckets);

    let chunk = n.div_ceil(parts);
    let mut merged: Vec<QuantileSummary> = (0..m)
        .map(|_| QuantileSummary::with_rank_error(eps))
        .collect();
    let mut column = Vec::with_capacity(chunk);
    for p in 0..parts {
        let lo = p * chunk;
        let hi = ((p + 1) * chunk).min(n);
        if lo >= hi {
            break;
        }
        for (f, acc) in merged.iter_mut().enumerate() {
            column.clear();
            for i in lo..hi {
                column.push(dataset.row(i)[f]);
            }
            let mut part = QuantileSummary::with_rank_error(eps);
            part.insert(&column);
            acc.merge(&part);
        }
    }

    let thresholds = merged.iter().map(|s| s.boundaries(max_buckets)).collect();
    let out = BinBoundaries {
        thresholds,
        max_buckets,
    };
    out.validate()?;
    Ok(out)
}

/// Feature matrix rewritten as bucket indices, with labels carried over.
#[derive(Debug, Clone)]
pub struct BucketizedDataset {
    buckets: Vec<u16>,
    num_rows: usize,
    num_features: usize,
    labels: Vec<u32>,
    num_classes: usize,
    boundaries: BinBoundaries,
}

impl BucketizedDataset {
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
    pub fn bucket_row(&self, i: usize) -> &[u16] {
        &self.buckets[i * self.num_features..(i + 1) * self.num_features]
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn boundaries(&self) -> &BinBoundaries {
        &self.boundaries
    }
}

/// Map every feature value to its bucket index under `boundaries`.
pub fn bucketize(dataset: &LabeledDataset, boundaries: &BinBoundaries) -> Result<BucketizedDataset> {
    let m = dataset.num_features();
    if boundaries.num_features() != m {
        return Err(Error::Shape(format!(
            "boundaries built for {} features, dataset has {m}",
            boundaries.num_features()
        )));
    }
    let n = dataset.num_rows();
    let mut buckets = vec![0u16; n * m];
    for i in 0..n {
        let row = dataset.row(i);
        let out = &mut buckets[i * m..(i + 1) * m];
        for (f, (&v, slot)) in row.iter().zip(out.iter_mut()).enumerate() {
            *slot = boundaries.bucket_of(f, v) as u16;
        }
    }
    Ok(BucketizedDataset {
        buckets,
        num_rows: n,
        num_features: m,
        labels: dataset.labels().to_vec(),
        num_classes: dataset.num_classes(),
        boundaries: boundaries.clone(),
    })
}
