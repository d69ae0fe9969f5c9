//! Greedy tree growth from histograms.
//!
//! Trees grow breadth-first one layer at a time. Whole-tree mode computes
//! per-instance gradients once per tree against the prediction snapshot;
//! layer-by-layer mode recomputes them before every layer and lets each
//! frontier node contribute an immediate weight update, so deeper layers fit
//! residuals of shallower ones. Finalization collapses a layer-by-layer
//! tree's internal contributions into ordinary leaf vectors.

use serde::{Deserialize, Serialize};

use crate::binning::BucketizedDataset;
use crate::error::{Error, Result};
use crate::histogram::{GradHessHistogram, NodeStats};
use crate::loss::{GradHess, HessianMode, LossFunction};
use crate::solver::{evaluate_split, solve_leaf, LeafSolution, Regularization, SplitDecision};

/// Marks rows whose node is finished growing.
const INACTIVE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMode {
    WholeTree,
    LayerByLayer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pruning {
    /// Only accept splits with positive net gain.
    Pre,
    /// Accept the best split regardless of sign, then remove subtrees whose
    /// accumulated gain is non-positive.
    Post,
}

/// When the learning rate is applied in layer-by-layer mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerShrinkage {
    /// Shrink each layer's contribution as it is applied (default).
    PerLayer,
    /// Grow with full Newton steps and scale once at finalization.
    AtFinalization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthConfig {
    pub max_depth: usize,
    pub growth_mode: GrowthMode,
    pub pruning: Pruning,
    pub learning_rate: f64,
    /// Minimum Hessian mass required of both children of a split.
    pub min_node_weight: f64,
    pub layer_shrinkage: LayerShrinkage,
    /// Instances consumed per layer. The single-process trainer always uses
    /// the full batch; `None` means exactly that.
    pub examples_per_layer: Option<usize>,
    pub threads: usize,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        Self {
            max_depth: 4,
            growth_mode: GrowthMode::WholeTree,
            pruning: Pruning::Pre,
            learning_rate: 0.3,
            min_node_weight: 0.0,
            layer_shrinkage: LayerShrinkage::PerLayer,
            examples_per_layer: None,
            threads: 1,
        }
    }
}

impl GrowthConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::Config(format!(
                "learning_rate must be in (0, 1], got {}",
                self.learning_rate
            )));
        }
        if self.min_node_weight < 0.0 {
            return Err(Error::Config("min_node_weight must be >= 0".into()));
        }
        Ok(())
    }
}

/// A finalized decision tree node. Splits route by raw value against the
/// bucket threshold (ties go left); leaves hold a score-vector contribution.
///
/// `internal_weight` is populated only on in-progress layer-by-layer trees
/// and is always absent after finalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold_index: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        internal_weight: Option<Vec<f64>>,
    },
    Leaf {
        weight: Vec<f64>,
    },
}

impl TreeNode {
    /// Route a raw feature row to its leaf weight vector.
    pub fn route(&self, row: &[f64]) -> &[f64] {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { weight } => return weight,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if row[*feature] <= *threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    /// Route a bucketized row to its leaf weight vector; equivalent to
    /// [`route`](Self::route) by the bucketization tie rule.
    pub fn route_buckets(&self, bucket_row: &[u16]) -> &[f64] {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { weight } => return weight,
                TreeNode::Split {
                    feature,
                    threshold_index,
                    left,
                    right,
                    ..
                } => {
                    node = if (bucket_row[*feature] as usize) <= *threshold_index {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => left.num_leaves() + right.num_leaves(),
        }
    }

    pub fn num_splits(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.num_splits() + right.num_splits(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn has_internal_weights(&self) -> bool {
        match self {
            TreeNode::Leaf { .. } => false,
            TreeNode::Split {
                internal_weight,
                left,
                right,
                ..
            } => {
                internal_weight.is_some()
                    || left.has_internal_weights()
                    || right.has_internal_weights()
            }
        }
    }
}

/// Produces per-instance gradients for the statistic space a tree is grown
/// in: the full class-score vector, or a single logit for per-class trees.
pub trait GradientSource: Sync {
    /// Gradient and Hessian at a full length-C score vector.
    fn grad_hess(&self, scores: &[f64], label: usize) -> Result<GradHess>;
    /// Add a stat-dimension weight vector into a full score vector.
    fn apply_weight(&self, scores: &mut [f64], weight: &[f64]);
}

/// Gradients of the full C-dimensional loss: vector-leaf trees.
pub struct VectorSource<'a> {
    pub loss: &'a dyn LossFunction,
    pub mode: HessianMode,
}

impl GradientSource for VectorSource<'_> {
    fn grad_hess(&self, scores: &[f64], label: usize) -> Result<GradHess> {
        self.loss.grad_hess(scores, label, self.mode)
    }

    fn apply_weight(&self, scores: &mut [f64], weight: &[f64]) {
        for (s, w) in scores.iter_mut().zip(weight) {
            *s += w;
        }
    }
}

impl VectorSource<'_> {
    pub fn new(loss: &dyn LossFunction, mode: HessianMode) -> VectorSource<'_> {
        VectorSource { loss, mode }
    }
}

/// Gradients of the full loss restricted to one logit: per-class scalar trees.
pub struct SingleClassSource<'a> {
    pub loss: &'a dyn LossFunction,
    pub class: usize,
}

impl GradientSource for SingleClassSource<'_> {
    fn grad_hess(&self, scores: &[f64], label: usize) -> Result<GradHess> {
        let full = self.loss.grad_hess(scores, label, HessianMode::Diag)?;
        Ok(GradHess {
            grad: vec![full.grad[self.class]],
            hess: crate::loss::HessData::Diag(vec![full.hess.as_slice()[self.class]]),
        })
    }

    fn apply_weight(&self, scores: &mut [f64], weight: &[f64]) {
        scores[self.class] += weight[0];
    }
}

struct ArenaSplit {
    feature: usize,
    threshold_index: usize,
    gain: f64,
    left: usize,
    right: usize,
}

struct ArenaNode {
    stats: Option<NodeStats>,
    solution: Option<LeafSolution>,
    internal_weight: Option<Vec<f64>>,
    split: Option<ArenaSplit>,
}

impl ArenaNode {
    fn new() -> Self {
        Self {
            stats: None,
            solution: None,
            internal_weight: None,
            split: None,
        }
    }
}

/// Scan every feature's cumulative bucket stats for the highest-gain split
/// of one frontier node. Ties break toward the lower feature id, then the
/// lower threshold index. Candidates leaving either side empty (or under the
/// minimum Hessian mass) are skipped; pre-pruning additionally requires a
/// strictly positive net gain.
pub fn best_split_for_node(
    hist: &GradHessHistogram,
    node_slot: usize,
    node_stats: &NodeStats,
    parent_gain: f64,
    reg: &Regularization,
    config: &GrowthConfig,
) -> Result<Option<SplitDecision>> {
    if node_stats.count == 0 {
        return Ok(None);
    }
    let mut best: Option<SplitDecision> = None;
    for feature in 0..hist.num_features() {
        let buckets = hist.num_buckets(feature);
        if buckets < 2 {
            continue;
        }
        let mut left = NodeStats::zeros(node_stats.dim(), node_stats.mode());
        for threshold_index in 0..buckets - 1 {
            hist.add_cell_into(node_slot, feature, threshold_index, &mut left);
            if left.count == 0 {
                continue;
            }
            if left.count == node_stats.count {
                break; // right side is empty from here on
            }
            let right = node_stats.minus(&left);
            if config.min_node_weight > 0.0
                && (left.hess_mass() < config.min_node_weight
                    || right.hess_mass() < config.min_node_weight)
            {
                continue;
            }
            let (gain, left_sol, right_sol) = evaluate_split(parent_gain, &left, &right, reg)?;
            if config.pruning == Pruning::Pre && gain <= 0.0 {
                continue;
            }
            if best.as_ref().is_none_or(|b| gain > b.split_gain) {
                best = Some(SplitDecision {
                    feature,
                    threshold_index,
                    split_gain: gain,
                    left: left_sol,
                    right: right_sol,
                    left_stats: left.clone(),
                    right_stats: right,
                });
            }
        }
    }
    Ok(Some(best).flatten())
}

/// Accumulate the layer histogram over active rows, partitioned into
/// `threads` contiguous chunks merged in ascending order.
fn build_layer_histogram(
    data: &BucketizedDataset,
    row_node: &[u32],
    grad_hess: &[GradHess],
    num_nodes: usize,
    dim: usize,
    mode: HessianMode,
    threads: usize,
) -> Result<GradHessHistogram> {
    let bucket_counts: Vec<usize> = (0..data.num_features())
        .map(|f| data.boundaries().num_buckets(f))
        .collect();
    let n = data.num_rows();
    let threads = threads.max(1).min(n.max(1));

    let rows_of = |lo: usize, hi: usize| {
        (lo..hi).filter_map(move |i| {
            let slot = row_node[i];
            (slot != INACTIVE).then(|| (slot as usize, data.bucket_row(i), &grad_hess[i]))
        })
    };

    if threads == 1 {
        let mut hist = GradHessHistogram::new(num_nodes, dim, mode, &bucket_counts);
        hist.accumulate(rows_of(0, n))?;
        return Ok(hist);
    }

    let chunk = n.div_ceil(threads);
    let mut parts: Vec<Result<GradHessHistogram>> = Vec::with_capacity(threads);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(n);
            let bucket_counts = &bucket_counts;
            handles.push(scope.spawn(move || {
                let mut hist = GradHessHistogram::new(num_nodes, dim, mode, bucket_counts);
                hist.accumulate(rows_of(lo, hi)).map(|()| hist)
            }));
        }
        for h in handles {
            parts.push(h.join().expect("histogram worker panicked"));
        }
    });

    let mut iter = parts.into_iter();
    let mut merged = iter.next().unwrap()?;
    for part in iter {
        merged.merge(&part?)?;
    }
    Ok(merged)
}

/// Node totals without per-bucket cells, for layers that only need weights.
fn node_totals(
    row_node: &[u32],
    grad_hess: &[GradHess],
    num_nodes: usize,
    dim: usize,
    mode: HessianMode,
) -> Vec<NodeStats> {
    let mut totals = vec![NodeStats::zeros(dim, mode); num_nodes];
    for (i, &slot) in row_node.iter().enumerate() {
        if slot != INACTIVE {
            totals[slot as usize].add_grad_hess(&grad_hess[i]);
        }
    }
    totals
}

fn solve_node(stats: &NodeStats, reg: &Regularization, node: usize) -> Result<LeafSolution> {
    solve_leaf(stats, reg).map_err(|e| match e {
        Error::DegenerateLeaf(msg) => Error::DegenerateLeaf(format!("node {node}: {msg}")),
        other => other,
    })
}

/// Grow one tree against fixed predictions: per-instance gradients are
/// computed once from the snapshot and reused for every layer.
pub fn grow_whole_tree(
    data: &BucketizedDataset,
    predictions: &[f64],
    source: &dyn GradientSource,
    reg: &Regularization,
    config: &GrowthConfig,
) -> Result<TreeNode> {
    config.validate()?;
    let n = data.num_rows();
    let c = data.num_classes();
    if n == 0 {
        return Err(Error::Shape("cannot grow a tree on zero rows".into()));
    }
    debug_assert_eq!(predictions.len(), n * c);

    let grad_hess = compute_grad_hess(data, predictions, source)?;
    let dim = grad_hess[0].num_classes();
    let mode = grad_hess[0].mode();

    let mut arena = vec![ArenaNode::new()];
    let mut row_node = vec![0u32; n];
    let mut frontier: Vec<usize> = vec![0];

    for _depth in 0..config.max_depth {
        if frontier.is_empty() {
            break;
        }
        let hist = build_layer_histogram(
            data,
            &row_node,
            &grad_hess,
            frontier.len(),
            dim,
            mode,
            config.threads,
        )?;
        for (slot, &node_id) in frontier.iter().enumerate() {
            if arena[node_id].stats.is_none() {
                // Root: adopt the first histogram pass totals.
                let stats = hist.node_total(slot);
                arena[node_id].solution = Some(solve_node(&stats, reg, node_id)?);
                arena[node_id].stats = Some(stats);
            }
        }

        let mut decisions: Vec<Option<SplitDecision>> = Vec::with_capacity(frontier.len());
        for (slot, &node_id) in frontier.iter().enumerate() {
            let stats = arena[node_id].stats.as_ref().unwrap();
            let parent_gain = arena[node_id].solution.as_ref().unwrap().gain;
            decisions.push(best_split_for_node(
                &hist,
                slot,
                stats,
                parent_gain,
                reg,
                config,
            )?);
        }
        if decisions.iter().all(Option::is_none) {
            break;
        }
        frontier = apply_layer_splits(&mut arena, &mut row_node, data, &frontier, decisions);
    }

    // Degenerate root that never saw a histogram pass (max_depth = 0).
    if arena[0].stats.is_none() {
        let stats = node_totals(&row_node, &grad_hess, 1, dim, mode).pop().unwrap();
        arena[0].solution = Some(solve_node(&stats, reg, 0)?);
        arena[0].stats = Some(stats);
    }

    if config.pruning == Pruning::Post {
        post_prune(&mut arena, 0);
    }
    Ok(finalize_whole_tree(&arena, 0, data, config.learning_rate))
}

/// Grow one tree layer-by-layer against live predictions.
///
/// Per layer: gradients are recomputed from the running scores, every
/// frontier node immediately contributes a solved (and, by default, shrunk)
/// weight update, and only then are splits chosen and applied. Returns the
/// finalized tree plus the per-row score deltas accumulated during growth;
/// with per-layer shrinkage the finalized tree reproduces those deltas
/// bit-exactly.
pub fn grow_layer_by_layer(
    data: &BucketizedDataset,
    predictions: &[f64],
    source: &dyn GradientSource,
    reg: &Regularization,
    config: &GrowthConfig,
) -> Result<(TreeNode, Vec<f64>)> {
    config.validate()?;
    let n = data.num_rows();
    let c = data.num_classes();
    if n == 0 {
        return Err(Error::Shape("cannot grow a tree on zero rows".into()));
    }
    debug_assert_eq!(predictions.len(), n * c);

    let mut live = predictions.to_vec();
    let mut arena = vec![ArenaNode::new()];
    let mut row_node = vec![0u32; n];
    let mut frontier: Vec<usize> = vec![0];
    let mut deltas: Option<Vec<f64>> = None;

    for layer in 0..=config.max_depth {
        let grad_hess = compute_grad_hess(data, &live, source)?;
        let dim = grad_hess[0].num_classes();
        let mode = grad_hess[0].mode();
        let delta = deltas.get_or_insert_with(|| vec![0.0; n * dim]);

        let last_layer = layer == config.max_depth || frontier.is_empty();
        let hist = if last_layer {
            None
        } else {
            Some(build_layer_histogram(
                data,
                &row_node,
                &grad_hess,
                frontier.len(),
                dim,
                mode,
                config.threads,
            )?)
        };

        // (a) stats for the current frontier from the recomputed gradients,
        // (b) immediate internal weight per frontier node.
        let totals: Vec<NodeStats> = match &hist {
            Some(h) => (0..frontier.len()).map(|s| h.node_total(s)).collect(),
            None => node_totals(&row_node, &grad_hess, frontier.len(), dim, mode),
        };
        let mut weights: Vec<Vec<f64>> = Vec::with_capacity(frontier.len());
        for (slot, &node_id) in frontier.iter().enumerate() {
            let solution = solve_node(&totals[slot], reg, node_id)?;
            let weight: Vec<f64> = match config.layer_shrinkage {
                LayerShrinkage::PerLayer => solution
                    .weight
                    .iter()
                    .map(|w| w * config.learning_rate)
                    .collect(),
                LayerShrinkage::AtFinalization => solution.weight.clone(),
            };
            arena[node_id].internal_weight = Some(weight.clone());
            arena[node_id].solution = Some(solution);
            arena[node_id].stats = Some(totals[slot].clone());
            weights.push(weight);
        }
        for (i, &slot) in row_node.iter().enumerate() {
            if slot == INACTIVE {
                continue;
            }
            let w = &weights[slot as usize];
            source.apply_weight(&mut live[i * c..(i + 1) * c], w);
            for (d, x) in delta[i * dim..(i + 1) * dim].iter_mut().zip(w) {
                *d += x;
            }
        }

        // (c) choose and apply splits from this layer's (pre-update) stats.
        let Some(hist) = hist else { break };
        let mut decisions: Vec<Option<SplitDecision>> = Vec::with_capacity(frontier.len());
        for (slot, &node_id) in frontier.iter().enumerate() {
            let parent_gain = arena[node_id].solution.as_ref().unwrap().gain;
            decisions.push(best_split_for_node(
                &hist,
                slot,
                &totals[slot],
                parent_gain,
                reg,
                config,
            )?);
        }
        if decisions.iter().all(Option::is_none) {
            break;
        }
        frontier = apply_layer_splits_lbl(&mut arena, &mut row_node, data, &frontier, decisions);
    }

    if config.pruning == Pruning::Post {
        post_prune(&mut arena, 0);
    }
    let eta = match config.layer_shrinkage {
        LayerShrinkage::PerLayer => 1.0,
        LayerShrinkage::AtFinalization => config.learning_rate,
    };
    let dim = arena[0].internal_weight.as_ref().unwrap().len();
    let tree = finalize_layered(&arena, 0, data, &vec![0.0; dim], eta);
    Ok((tree, deltas.unwrap()))
}

fn compute_grad_hess(
    data: &BucketizedDataset,
    predictions: &[f64],
    source: &dyn GradientSource,
) -> Result<Vec<GradHess>> {
    let c = data.num_classes();
    (0..data.num_rows())
        .map(|i| source.grad_hess(&predictions[i * c..(i + 1) * c], data.label(i)))
        .collect()
}

/// Attach children for split decisions, reroute rows, and retire unsplit
/// nodes. Whole-tree children carry the stats and solutions already computed
/// by the split evaluation.
fn apply_layer_splits(
    arena: &mut Vec<ArenaNode>,
    row_node: &mut [u32],
    data: &BucketizedDataset,
    frontier: &[usize],
    decisions: Vec<Option<SplitDecision>>,
) -> Vec<usize> {
    enum Action {
        Terminal,
        Split {
            feature: usize,
            threshold_index: usize,
            left_slot: u32,
            right_slot: u32,
        },
    }

    let mut next_frontier = Vec::new();
    let mut actions = Vec::with_capacity(frontier.len());
    for (&node_id, decision) in frontier.iter().zip(decisions) {
        match decision {
            None => actions.push(Action::Terminal),
            Some(d) => {
                let left_id = arena.len();
                arena.push(ArenaNode {
                    stats: Some(d.left_stats),
                    solution: Some(d.left),
                    internal_weight: None,
                    split: None,
                });
                let right_id = arena.len();
                arena.push(ArenaNode {
                    stats: Some(d.right_stats),
                    solution: Some(d.right),
                    internal_weight: None,
                    split: None,
                });
                arena[node_id].split = Some(ArenaSplit {
                    feature: d.feature,
                    threshold_index: d.threshold_index,
                    gain: d.split_gain,
                    left: left_id,
                    right: right_id,
                });
                let left_slot = next_frontier.len() as u32;
                next_frontier.push(left_id);
                let right_slot = next_frontier.len() as u32;
                next_frontier.push(right_id);
                actions.push(Action::Split {
                    feature: d.feature,
                    threshold_index: d.threshold_index,
                    left_slot,
                    right_slot,
                });
            }
        }
    }

    for (i, slot) in row_node.iter_mut().enumerate() {
        if *slot == INACTIVE {
            continue;
        }
        match &actions[*slot as usize] {
            Action::Terminal => *slot = INACTIVE,
            Action::Split {
                feature,
                threshold_index,
                left_slot,
                right_slot,
            } => {
                let bucket = data.bucket_row(i)[*feature] as usize;
                *slot = if bucket <= *threshold_index {
                    *left_slot
                } else {
                    *right_slot
                };
            }
        }
    }
    next_frontier
}

/// Layer-by-layer variant: children start empty; their stats and weights are
/// computed at their own layer from recomputed gradients.
fn apply_layer_splits_lbl(
    arena: &mut Vec<ArenaNode>,
    row_node: &mut [u32],
    data: &BucketizedDataset,
    frontier: &[usize],
    decisions: Vec<Option<SplitDecision>>,
) -> Vec<usize> {
    let stripped: Vec<Option<SplitDecision>> = decisions
        .into_iter()
        .map(|d| {
            d.map(|mut d| {
                // Discard carried solutions: stale next layer.
                d.left = LeafSolution {
                    weight: Vec::new(),
                    gain: 0.0,
                    diagonal_fallback: false,
                };
                d.right = d.left.clone();
                d
            })
        })
        .collect();
    let next = apply_layer_splits(arena, row_node, data, frontier, stripped);
    for &id in &next {
        arena[id].stats = None;
        arena[id].solution = None;
    }
    next
}

/// Bottom-up pruning: a split survives only if its own gain plus the
/// retained gain of its descendants is positive. Returns the retained gain.
fn post_prune(arena: &mut Vec<ArenaNode>, node: usize) -> f64 {
    let Some(split) = &arena[node].split else {
        return 0.0;
    };
    let (gain, left, right) = (split.gain, split.left, split.right);
    let retained = gain + post_prune(arena, left) + post_prune(arena, right);
    if retained <= 0.0 {
        arena[node].split = None;
        0.0
    } else {
        retained
    }
}

fn finalize_whole_tree(
    arena: &[ArenaNode],
    node: usize,
    data: &BucketizedDataset,
    eta: f64,
) -> TreeNode {
    match &arena[node].split {
        Some(split) => TreeNode::Split {
            feature: split.feature,
            threshold_index: split.threshold_index,
            threshold: data.boundaries().feature_thresholds(split.feature)[split.threshold_index],
            left: Box::new(finalize_whole_tree(arena, split.left, data, eta)),
            right: Box::new(finalize_whole_tree(arena, split.right, data, eta)),
            internal_weight: None,
        },
        None => {
            let solution = arena[node].solution.as_ref().expect("solved leaf");
            TreeNode::Leaf {
                weight: solution.weight.iter().map(|w| w * eta).collect(),
            }
        }
    }
}

/// Collapse ancestor contributions into leaf weights, summing root-to-leaf
/// so the result matches the order the deltas were accumulated in.
fn finalize_layered(
    arena: &[ArenaNode],
    node: usize,
    data: &BucketizedDataset,
    path_sum: &[f64],
    eta: f64,
) -> TreeNode {
    let own = arena[node]
        .internal_weight
        .as_ref()
        .expect("every grown node has an internal weight");
    let sum: Vec<f64> = path_sum.iter().zip(own).map(|(p, w)| p + w).collect();
    match &arena[node].split {
        Some(split) => TreeNode::Split {
            feature: split.feature,
            threshold_index: split.threshold_index,
            threshold: data.boundaries().feature_thresholds(split.feature)[split.threshold_index],
            left: Box::new(finalize_layered(arena, split.left, data, &sum, eta)),
            right: Box::new(finalize_layered(arena, split.right, data, &sum, eta)),
            internal_weight: None,
        },
        None => TreeNode::Leaf {
            weight: sum.iter().map(|w| w * eta).collect(),
        },
    }
}
