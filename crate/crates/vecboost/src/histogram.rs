//! Per-(node, feature, bucket) accumulation of gradient vectors and Hessian
//! blocks, with a deterministic merge for partitioned accumulation.
//!
//! Storage is node-major and contiguous: the split scan walks a feature's
//! buckets sequentially. Each cell holds `[grad.. | hess.. | count]` where the
//! Hessian block is either the diagonal or the packed upper triangle.

use crate::error::{Error, Result};
use crate::loss::{GradHess, HessData, HessianMode};
use crate::sym::{packed_len, PackedSym};

/// Accumulated first- and second-order statistics of one node (or one
/// histogram cell): the gradient-vector sum, the Hessian sum, and the number
/// of instances that contributed.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeStats {
    pub grad: Vec<f64>,
    pub hess: HessData,
    pub count: u64,
}

impl NodeStats {
    pub fn zeros(dim: usize, mode: HessianMode) -> Self {
        let hess = match mode {
            HessianMode::Diag => HessData::Diag(vec![0.0; dim]),
            HessianMode::Full => HessData::Full(PackedSym::zeros(dim)),
        };
        Self {
            grad: vec![0.0; dim],
            hess,
            count: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn mode(&self) -> HessianMode {
        self.hess.mode()
    }

    pub fn add_grad_hess(&mut self, gh: &GradHess) {
        debug_assert_eq!(self.dim(), gh.num_classes());
        debug_assert_eq!(self.mode(), gh.mode());
        for (a, b) in self.grad.iter_mut().zip(&gh.grad) {
            *a += b;
        }
        match (&mut self.hess, &gh.hess) {
            (HessData::Diag(a), HessData::Diag(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            (HessData::Full(a), HessData::Full(b)) => a.add_assign(b),
            _ => unreachable!("mode checked above"),
        }
        self.count += 1;
    }

    pub fn add(&mut self, other: &NodeStats) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.grad.iter_mut().zip(&other.grad) {
            *a += b;
        }
        match (&mut self.hess, &other.hess) {
            (HessData::Diag(a), HessData::Diag(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            (HessData::Full(a), HessData::Full(b)) => a.add_assign(b),
            _ => panic!("hessian mode mismatch"),
        }
        self.count += other.count;
    }

    /// Exact complement: `self - other`, used for right-child stats.
    pub fn minus(&self, other: &NodeStats) -> NodeStats {
        debug_assert!(other.count <= self.count);
        let grad = self
            .grad
            .iter()
            .zip(&other.grad)
            .map(|(a, b)| a - b)
            .collect();
        let hess = match (&self.hess, &other.hess) {
            (HessData::Diag(a), HessData::Diag(b)) => {
                HessData::Diag(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            (HessData::Full(a), HessData::Full(b)) => {
                let mut m = a.clone();
                m.sub_assign(b);
                HessData::Full(m)
            }
            _ => panic!("hessian mode mismatch"),
        };
        NodeStats {
            grad,
            hess,
            count: self.count - other.count,
        }
    }

    /// Total second-order mass: the Hessian trace (or diagonal sum).
    pub fn hess_mass(&self) -> f64 {
        match &self.hess {
            HessData::Diag(d) => d.iter().sum(),
            HessData::Full(m) => m.trace(),
        }
    }

    pub fn grad_is_zero(&self) -> bool {
        self.grad.iter().all(|&g| g == 0.0)
    }
}

/// Histogram of [`NodeStats`] indexed by (node, feature, bucket).
#[derive(Debug, Clone)]
pub struct GradHessHistogram {
    dim: usize,
    mode: HessianMode,
    num_nodes: usize,
    /// Prefix sums of per-feature bucket counts; length `m + 1`.
    feature_offsets: Vec<usize>,
    stats_per_cell: usize,
    hess_len: usize,
    data: Vec<f64>,
    totals: Vec<f64>,
}

impl GradHessHistogram {
    pub fn new(
        num_nodes: usize,
        dim: usize,
        mode: HessianMode,
        bucket_counts: &[usize],
    ) -> Self {
        let mut feature_offsets = Vec::with_capacity(bucket_counts.len() + 1);
        let mut acc = 0usize;
        feature_offsets.push(0);
        for &b in bucket_counts {
            acc += b;
            feature_offsets.push(acc);
        }
        let hess_len = match mode {
            HessianMode::Diag => dim,
            HessianMode::Full => packed_len(dim),
        };
        let stats_per_cell = dim + hess_len + 1;
        Self {
            dim,
            mode,
            num_nodes,
            feature_offsets,
            stats_per_cell,
            hess_len,
            data: vec![0.0; num_nodes * acc * stats_per_cell],
            totals: vec![0.0; num_nodes * stats_per_cell],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_features(&self) -> usize {
        self.feature_offsets.len() - 1
    }

    pub fn num_buckets(&self, feature: usize) -> usize {
        self.feature_offsets[feature + 1] - self.feature_offsets[feature]
    }

    pub fn mode(&self) -> HessianMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn cell_offset(&self, node: usize, feature: usize, bucket: usize) -> usize {
        let cells_per_node = *self.feature_offsets.last().unwrap();
        debug_assert!(bucket < self.num_buckets(feature));
        (node * cells_per_node + self.feature_offsets[feature] + bucket) * self.stats_per_cell
    }

    /// Accumulate instance statistics. Each item routes one instance: the
    /// frontier node it sits in, its bucket indices for every feature, and
    /// its gradient/Hessian.
    pub fn accumulate<'a, I>(&mut self, rows: I) -> Result<()>
    where
        I: IntoIterator<Item = (usize, &'a [u16], &'a GradHess)>,
    {
        let spc = self.stats_per_cell;
        let dim = self.dim;
        let hl = self.hess_len;
        for (node, bucket_row, gh) in rows {
            if node >= self.num_nodes {
                return Err(Error::Shape(format!(
                    "node id {node} out of range for {} nodes",
                    self.num_nodes
                )));
            }
            if gh.mode() != self.mode || gh.num_classes() != dim {
                return Err(Error::Shape(format!(
                    "grad/hess is {}-dim {}, histogram is {}-dim {}",
                    gh.num_classes(),
                    gh.mode(),
                    dim,
                    self.mode
                )));
            }
            let grad = &gh.grad[..];
            let hess = gh.hess.as_slice();
            for (feature, &bucket) in bucket_row.iter().enumerate() {
                let off = self.cell_offset(node, feature, bucket as usize);
                let cell = &mut self.data[off..off + spc];
                for (a, b) in cell[..dim].iter_mut().zip(grad) {
                    *a += b;
                }
                for (a, b) in cell[dim..dim + hl].iter_mut().zip(hess) {
                    *a += b;
                }
                cell[dim + hl] += 1.0;
            }
            let t = &mut self.totals[node * spc..(node + 1) * spc];
            for (a, b) in t[..dim].iter_mut().zip(grad) {
                *a += b;
            }
            for (a, b) in t[dim..dim + hl].iter_mut().zip(hess) {
                *a += b;
            }
            t[dim + hl] += 1.0;
        }
        Ok(())
    }

    /// Cellwise addition of another histogram of identical shape and mode.
    pub fn merge(&mut self, other: &GradHessHistogram) -> Result<()> {
        if self.mode != other.mode
            || self.dim != other.dim
            || self.num_nodes != other.num_nodes
            || self.feature_offsets != other.feature_offsets
        {
            return Err(Error::Shape(
                "histogram shape or mode mismatch in merge".into(),
            ));
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        for (a, b) in self.totals.iter_mut().zip(&other.totals) {
            *a += b;
        }
        Ok(())
    }

    fn stats_from_slice(&self, s: &[f64]) -> NodeStats {
        let dim = self.dim;
        let hl = self.hess_len;
        let hess = match self.mode {
            HessianMode::Diag => HessData::Diag(s[dim..dim + hl].to_vec()),
            HessianMode::Full => {
                HessData::Full(PackedSym::from_data(dim, s[dim..dim + hl].to_vec()))
            }
        };
        NodeStats {
            grad: s[..dim].to_vec(),
            hess,
            count: s[dim + hl] as u64,
        }
    }

    pub fn cell(&self, node: usize, feature: usize, bucket: usize) -> NodeStats {
        let off = self.cell_offset(node, feature, bucket);
        self.stats_from_slice(&self.data[off..off + self.stats_per_cell])
    }

    /// All statistics accumulated into a node, regardless of feature.
    pub fn node_total(&self, node: usize) -> NodeStats {
        let spc = self.stats_per_cell;
        self.stats_from_slice(&self.totals[node * spc..(node + 1) * spc])
    }

    /// Add one cell into a running accumulator without allocating.
    pub fn add_cell_into(&self, node: usize, feature: usize, bucket: usize, acc: &mut NodeStats) {
        let dim = self.dim;
        let hl = self.hess_len;
        let off = self.cell_offset(node, feature, bucket);
        let cell = &self.data[off..off + self.stats_per_cell];
        for (a, b) in acc.grad.iter_mut().zip(&cell[..dim]) {
            *a += b;
        }
        match &mut acc.hess {
            HessData::Diag(d) => {
                for (a, b) in d.iter_mut().zip(&cell[dim..dim + hl]) {
                    *a += b;
                }
            }
            HessData::Full(m) => {
                for (a, b) in m.data_mut().iter_mut().zip(&cell[dim..dim + hl]) {
                    *a += b;
                }
            }
        }
        acc.count += cell[dim + hl] as u64;
    }

    /// Ordered prefix sums over a feature's buckets: `prefix[k]` holds the
    /// stats of buckets `0..=k`, and the last prefix equals the node total.
    pub fn cumulate(&self, node: usize, feature: usize) -> Vec<NodeStats> {
        let nb = self.num_buckets(feature);
        let mut out = Vec::with_capacity(nb);
        let mut acc = NodeStats::zeros(self.dim, self.mode);
        for bucket in 0..nb {
            self.add_cell_into(node, feature, bucket, &mut acc);
            out.push(acc.clone());
        }
        out
    }
}
