//! Leaf weight and gain computation from accumulated node statistics.
//!
//! A leaf's optimal weight solves `(lambda*I + H) w = -g` for the node's
//! summed gradient `g` and Hessian `H`; adding the leaf improves the
//! quadratic model by `gain = -g.w / 2`. The full-Hessian strategy solves the
//! dense system with a column-pivoted Householder QR; the diagonal strategy
//! reduces to elementwise division. Split quality is the children's gain
//! minus the parent's, net of the per-leaf penalty.

use crate::error::{Error, Result};
use crate::histogram::NodeStats;
use crate::loss::{HessData, HessianMode};

/// Relative pivot threshold below which the full system is treated as
/// numerically singular and the solve falls back to the diagonal path.
const RANK_TOL: f64 = 1e-12;

/// How the L2 penalty relates to leaf size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaScale {
    /// One `lambda * I` per leaf regardless of its population (default;
    /// matches the quadratic-objective algebra directly).
    #[default]
    Absolute,
    /// Charge the L2 penalty per instance: the effective ridge becomes
    /// `lambda * count`, keeping the data-vs-penalty balance constant as
    /// leaves grow.
    PerInstance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regularization {
    /// L2 penalty on leaf weight vectors.
    pub lambda: f64,
    /// Per-leaf penalty charged by every split.
    pub gamma: f64,
    pub lambda_scale: LambdaScale,
}

impl Regularization {
    pub fn new(lambda: f64, gamma: f64) -> Self {
        Self {
            lambda,
            gamma,
            lambda_scale: LambdaScale::Absolute,
        }
    }

    pub fn with_lambda_scale(mut self, scale: LambdaScale) -> Self {
        self.lambda_scale = scale;
        self
    }

    /// The ridge actually added to a node's Hessian.
    fn effective_lambda(&self, count: u64) -> f64 {
        match self.lambda_scale {
            LambdaScale::Absolute => self.lambda,
            LambdaScale::PerInstance => self.lambda * count as f64,
        }
    }

    pub fn validate(&self, mode: HessianMode) -> Result<()> {
        if self.lambda < 0.0 || !self.lambda.is_finite() {
            return Err(Error::Config(format!("lambda must be >= 0, got {}", self.lambda)));
        }
        if self.gamma < 0.0 || !self.gamma.is_finite() {
            return Err(Error::Config(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        if mode == HessianMode::Full && self.lambda == 0.0 {
            return Err(Error::Config(
                "full Hessian mode requires lambda > 0 to guarantee positive definiteness".into(),
            ));
        }
        Ok(())
    }
}

/// Optimal weight vector and quadratic-model improvement for one leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafSolution {
    pub weight: Vec<f64>,
    pub gain: f64,
    /// Set when a numerically singular full system was solved diagonally.
    pub diagonal_fallback: bool,
}

impl LeafSolution {
    fn zero(dim: usize) -> Self {
        Self {
            weight: vec![0.0; dim],
            gain: 0.0,
            diagonal_fallback: false,
        }
    }
}

/// A chosen split: the feature/threshold pair, its net gain, and the solved
/// children.
#[derive(Debug, Clone)]
pub struct SplitDecision {
    pub feature: usize,
    pub threshold_index: usize,
    pub split_gain: f64,
    pub left: LeafSolution,
    pub right: LeafSolution,
    pub left_stats: NodeStats,
    pub right_stats: NodeStats,
}

/// Solve for a leaf's weight vector and gain from its accumulated stats.
pub fn solve_leaf(stats: &NodeStats, reg: &Regularization) -> Result<LeafSolution> {
    let dim = stats.dim();
    if stats.grad_is_zero() {
        return Ok(LeafSolution::zero(dim));
    }
    let lambda = reg.effective_lambda(stats.count);
    match &stats.hess {
        HessData::Diag(h) => solve_diag(&stats.grad, h, lambda),
        HessData::Full(h) => {
            let mut a = h.to_dense();
            for i in 0..dim {
                a[i * dim + i] += lambda;
            }
            let b: Vec<f64> = stats.grad.iter().map(|g| -g).collect();
            match qr_solve_col_pivot(a, dim, b) {
                Some(w) => {
                    let gain = -0.5 * dot(&stats.grad, &w);
                    Ok(LeafSolution {
                        weight: w,
                        gain,
                        diagonal_fallback: false,
                    })
                }
                None => {
                    log::warn!("singular full-Hessian system, falling back to diagonal solve");
                    let mut sol = solve_diag(&stats.grad, &h.diagonal(), lambda)?;
                    sol.diagonal_fallback = true;
                    Ok(sol)
                }
            }
        }
    }
}

fn solve_diag(grad: &[f64], hess_diag: &[f64], lambda: f64) -> Result<LeafSolution> {
    let mut weight = Vec::with_capacity(grad.len());
    let mut gain = 0.0;
    for (&g, &h) in grad.iter().zip(hess_diag) {
        let denom = h + lambda;
        if denom == 0.0 {
            return Err(Error::DegenerateLeaf(
                "zero curvature with no regularization".into(),
            ));
        }
        weight.push(-g / denom);
        gain += g * g / denom;
    }
    Ok(LeafSolution {
        weight,
        gain: 0.5 * gain,
        diagonal_fallback: false,
    })
}

/// Net gain of replacing a parent leaf with two children:
/// `gain_left + gain_right - gain_parent - gamma`.
///
/// `parent_gain` comes from a prior [`solve_leaf`] on the parent so split
/// scans do not recompute it per candidate.
pub fn evaluate_split(
    parent_gain: f64,
    left_stats: &NodeStats,
    right_stats: &NodeStats,
    reg: &Regularization,
) -> Result<(f64, LeafSolution, LeafSolution)> {
    let left = solve_leaf(left_stats, reg)?;
    let right = solve_leaf(right_stats, reg)?;
    let gain = left.gain + right.gain - parent_gain - reg.gamma;
    Ok((gain, left, right))
}

/// Split gain from parent and left stats; the right child is the exact
/// complement `parent - left`.
pub fn split_gain(
    parent: &NodeStats,
    left: &NodeStats,
    reg: &Regularization,
) -> Result<(f64, LeafSolution, LeafSolution)> {
    let parent_solution = solve_leaf(parent, reg)?;
    let right = parent.minus(left);
    evaluate_split(parent_solution.gain, left, &right, reg)
}

/// The per-leaf quadratic model `w.g + (w.(H + lambda I).w) / 2` that
/// [`solve_leaf`] minimizes. The solved leaf satisfies
/// `gain = objective(0) - objective(w) = -objective(w)`.
pub fn quadratic_objective(stats: &NodeStats, reg: &Regularization, w: &[f64]) -> f64 {
    let lambda = reg.effective_lambda(stats.count);
    let linear = dot(&stats.grad, w);
    let quad = match &stats.hess {
        HessData::Diag(h) => w
            .iter()
            .zip(h)
            .map(|(&wi, &hi)| wi * wi * (hi + lambda))
            .sum::<f64>(),
        HessData::Full(h) => {
            let dim = w.len();
            let mut acc = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    let a = h.get(i, j) + if i == j { lambda } else { 0.0 };
                    acc += w[i] * a * w[j];
                }
            }
            acc
        }
    };
    linear + 0.5 * quad
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve `A x = b` for square `A` (row-major) via Householder QR with column
/// pivoting. Returns `None` when the rank-revealing diagonal of `R` indicates
/// numerical singularity.
fn qr_solve_col_pivot(mut a: Vec<f64>, n: usize, mut b: Vec<f64>) -> Option<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut v = vec![0.0; n];

    for k in 0..n {
        // Pivot: bring the remaining column with the largest trailing norm
        // into position k.
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let norm: f64 = (k..n).map(|i| a[i * n + j] * a[i * n + j]).sum();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        if best != k {
            for i in 0..n {
                a.swap(i * n + k, i * n + best);
            }
            perm.swap(k, best);
        }

        // Householder reflector zeroing column k below the diagonal.
        let norm_x = best_norm.max(0.0).sqrt();
        if norm_x == 0.0 {
            continue; // column already zero; R diagonal stays 0
        }
        let alpha = if a[k * n + k] >= 0.0 { -norm_x } else { norm_x };
        v[k] = a[k * n + k] - alpha;
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        let beta: f64 = (k..n).map(|i| v[i] * v[i]).sum();
        a[k * n + k] = alpha;
        for i in k + 1..n {
            a[i * n + k] = 0.0;
        }
        if beta == 0.0 {
            continue;
        }
        for j in k + 1..n {
            let s: f64 = (k..n).map(|i| v[i] * a[i * n + j]).sum();
            let f = 2.0 * s / beta;
            for i in k..n {
                a[i * n + j] -= f * v[i];
            }
        }
        let s: f64 = (k..n).map(|i| v[i] * b[i]).sum();
        let f = 2.0 * s / beta;
        for i in k..n {
            b[i] -= f * v[i];
        }
    }

    let max_pivot = (0..n).map(|k| a[k * n + k].abs()).fold(0.0, f64::max);
    let min_pivot = (0..n).map(|k| a[k * n + k].abs()).fold(f64::INFINITY, f64::min);
    if max_pivot == 0.0 || min_pivot < RANK_TOL * max_pivot {
        return None;
    }

    // Back-substitution, then undo the column permutation.
    let mut z = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k * n + j] * z[j];
        }
        z[k] = s / a[k * n + k];
    }
    let mut x = vec![0.0; n];
    for k in 0..n {
        x[perm[k]] = z[k];
    }
    Some(x)
}
