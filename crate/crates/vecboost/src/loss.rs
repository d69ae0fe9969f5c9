//! Pluggable twice-differentiable multiclass losses.
//!
//! Every loss maps a length-`C` score vector and a class label to a scalar
//! loss plus its gradient and Hessian with respect to the scores. The Hessian
//! is produced either in full (`C x C`, stored packed) or as its diagonal,
//! depending on the configured [`HessianMode`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sym::PackedSym;

/// Probability floor applied when reporting cross-entropy, so the metric
/// stays finite. Gradients and Hessians are never clamped.
pub const PROB_CLAMP: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HessianMode {
    Full,
    Diag,
}

impl std::fmt::Display for HessianMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HessianMode::Full => write!(f, "full"),
            HessianMode::Diag => write!(f, "diag"),
        }
    }
}

/// Second-derivative payload of a [`GradHess`].
#[derive(Debug, Clone, PartialEq)]
pub enum HessData {
    Full(PackedSym),
    Diag(Vec<f64>),
}

impl HessData {
    pub fn mode(&self) -> HessianMode {
        match self {
            HessData::Full(_) => HessianMode::Full,
            HessData::Diag(_) => HessianMode::Diag,
        }
    }

    /// Raw storage: packed upper triangle for full, the diagonal for diag.
    pub fn as_slice(&self) -> &[f64] {
        match self {
            HessData::Full(m) => m.data(),
            HessData::Diag(d) => d,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        match self {
            HessData::Full(m) => m.diagonal(),
            HessData::Diag(d) => d.clone(),
        }
    }
}

/// Per-instance gradient vector and Hessian of the loss with respect to the
/// class scores.
#[derive(Debug, Clone, PartialEq)]
pub struct GradHess {
    pub grad: Vec<f64>,
    pub hess: HessData,
}

impl GradHess {
    pub fn num_classes(&self) -> usize {
        self.grad.len()
    }

    pub fn mode(&self) -> HessianMode {
        self.hess.mode()
    }
}

/// Numerically stable softmax: positive entries summing to one, invariant
/// under adding a constant to all scores.
pub fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = scores.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = out.iter().sum();
    for p in &mut out {
        *p /= sum;
    }
    out
}

/// Label encoding with `1` at the true class and `-1/(C-1)` elsewhere.
/// Entries sum to zero.
pub fn samme_encode(label: usize, num_classes: usize) -> Vec<f64> {
    assert!(num_classes >= 2);
    assert!(label < num_classes);
    let off = -1.0 / (num_classes as f64 - 1.0);
    let mut enc = vec![off; num_classes];
    enc[label] = 1.0;
    enc
}

/// A twice-differentiable multiclass loss over length-`C` score vectors.
///
/// Implementations must be pure: `grad_hess` is called from parallel row
/// partitions during training.
pub trait LossFunction: Send + Sync {
    fn name(&self) -> &'static str;

    /// Scalar loss for one instance.
    fn eval(&self, scores: &[f64], label: usize) -> f64;

    /// Gradient and Hessian of [`eval`](Self::eval) at `scores`.
    fn grad_hess(&self, scores: &[f64], label: usize, mode: HessianMode) -> Result<GradHess>;

    /// Whether the loss can produce the given Hessian mode.
    fn supports(&self, mode: HessianMode) -> bool {
        let _ = mode;
        true
    }
}

/// Softmax cross-entropy: scores go through softmax and the resulting
/// probabilities are scored with `-ln p[label]`.
///
/// Closed forms: `g = p - onehot(label)`, `H = diag(p) - p p^T`,
/// diagonal `h_c = p_c (1 - p_c)`.
#[derive(Debug, Default, Clone, Copy)]
pub struct CrossEntropy;

impl LossFunction for CrossEntropy {
    fn name(&self) -> &'static str {
        "cross_entropy"
    }

    fn eval(&self, scores: &[f64], label: usize) -> f64 {
        let p = softmax(scores)[label].clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
        -p.ln()
    }

    fn grad_hess(&self, scores: &[f64], label: usize, mode: HessianMode) -> Result<GradHess> {
        debug_assert!(label < scores.len());
        let p = softmax(scores);
        let c = p.len();
        let mut grad = p.clone();
        grad[label] -= 1.0;
        let hess = match mode {
            HessianMode::Diag => HessData::Diag(p.iter().map(|&pc| pc * (1.0 - pc)).collect()),
            HessianMode::Full => {
                let mut m = PackedSym::zeros(c);
                for i in 0..c {
                    for j in i..c {
                        let v = if i == j {
                            p[i] * (1.0 - p[i])
                        } else {
                            -p[i] * p[j]
                        };
                        m.add_at(i, j, v);
                    }
                }
                HessData::Full(m)
            }
        };
        Ok(GradHess { grad, hess })
    }
}

/// Multiclass exponential loss over sum-to-zero label encodings:
/// `exp(-(1/C) * enc(label) . scores)` with `enc` from [`samme_encode`].
///
/// Only the diagonal Hessian is supported.
#[derive(Debug, Default, Clone, Copy)]
pub struct MulticlassExponential;

impl LossFunction for MulticlassExponential {
    fn name(&self) -> &'static str {
        "multiclass_exponential"
    }

    fn eval(&self, scores: &[f64], label: usize) -> f64 {
        let c = scores.len() as f64;
        let enc = samme_encode(label, scores.len());
        let inner: f64 = enc.iter().zip(scores).map(|(e, s)| e * s).sum();
        (-inner / c).exp()
    }

    fn grad_hess(&self, scores: &[f64], label: usize, mode: HessianMode) -> Result<GradHess> {
        if mode == HessianMode::Full {
            return Err(Error::UnsupportedMode(
                "multiclass_exponential supports only the diagonal Hessian".into(),
            ));
        }
        let c = scores.len() as f64;
        let enc = samme_encode(label, scores.len());
        let loss = self.eval(scores, label);
        let grad: Vec<f64> = enc.iter().map(|&e| -e / c * loss).collect();
        let hess = enc.iter().map(|&e| (e / c) * (e / c) * loss).collect();
        Ok(GradHess {
            grad,
            hess: HessData::Diag(hess),
        })
    }

    fn supports(&self, mode: HessianMode) -> bool {
        mode == HessianMode::Diag
    }
}

/// Look up a loss by its configuration name.
pub fn loss_by_name(name: &str) -> Result<Box<dyn LossFunction>> {
    match name {
        "cross_entropy" => Ok(Box::new(CrossEntropy)),
        "multiclass_exponential" => Ok(Box::new(MulticlassExponential)),
        other => Err(Error::UnknownLoss(other.into())),
    }
}
