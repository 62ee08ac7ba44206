//! Fusion rings: structure constants, axioms, FP dimensions, subrings,
//! universal grading and invertible objects.

mod fpdim;
mod grading;
mod maximal;
mod subring;
mod validate;

pub use fpdim::{fp_identity_holds, fpdims, global_fpdim, FpDim, FpDimVector};
pub use grading::{adjoint_and_grading, fixes, invertibles, GradingData, InvertibleGroup};
pub use maximal::detect_mr;
pub use subring::{closure, is_subring, subrings, subrings_brute_force, DEFAULT_SUBRING_BOUND};
pub use validate::{ValidationReport, Violation};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid fusion ring: {0}")]
    Invalid(ValidationReport),
    #[error("rank {rank} exceeds the subring enumeration bound {bound}")]
    BoundExceeded { rank: usize, bound: usize },
    #[error("base ring is not integral: {0}")]
    NonIntegral(String),
    #[error("inconsistent maximal-rank data: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Precondition(String),
}

/// Unvalidated ring data as read from a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRing {
    pub labels: Vec<String>,
    /// `N[i][j][k]`, the multiplicity of `X_k` in `X_i ⊗ X_j`.
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<usize>>,
}

impl RawRing {
    pub fn new(labels: Vec<String>, n: Vec<Vec<Vec<u32>>>, dual: Option<Vec<usize>>) -> Self {
        RawRing { labels, n, dual }
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn into_ring(self) -> Result<FusionRing, RingError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(RingError::Invalid(report));
        }
        let rank = self.labels.len();
        let mut flat = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                flat.extend_from_slice(&self.n[i][j]);
            }
        }
        let dual = validate::infer_dual(&self.n).expect("validated ring has a duality");
        let mut ring = FusionRing { labels: self.labels, rank, n: flat, dual, commutative: true };
        ring.commutative = ring.compute_commutative();
        Ok(ring)
    }
}

/// A validated fusion ring with basis `0..rank`, unit at index 0.
///
/// `n(i, j, k)` is the multiplicity of `X_k` in `X_i ⊗ X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
    commutative: bool,
}

impl FusionRing {
    pub fn new(labels: Vec<String>, n: Vec<Vec<Vec<u32>>>) -> Result<Self, RingError> {
        RawRing::new(labels, n, None).into_ring()
    }

    /// Builds a ring from a coefficient function.
    pub fn from_fn(labels: Vec<String>, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self, RingError> {
        let r = labels.len();
        let n = (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| f(i, j, k)).collect()).collect()).collect();
        Self::new(labels, n)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn dual_perm(&self) -> &[usize] {
        &self.dual
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn compute_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| (0..self.rank).all(|k| self.n(i, j, k) == self.n(j, i, k))))
    }

    /// Coefficients of `X_i ⊗ X_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<u32> {
        (0..self.rank).map(|k| self.n(i, j, k)).collect()
    }

    /// Indices `k` with `N[i][j][k] > 0`.
    pub fn support(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&k| self.n(i, j, k) > 0)
    }

    /// Product of two elements given in the basis.
    pub fn mul_vec(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += a * b * self.n(i, j, k) as i64;
                }
            }
        }
        out
    }

    /// Left multiplication by `X_i`, oriented as `M[k][j] = N[i][j][k]`:
    /// column `j` holds `X_i ⊗ X_j`. Then `M_{dual(i)} = M_iᵀ`.
    pub fn left_matrix(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rank, self.rank);
        for j in 0..self.rank {
            for k in 0..self.rank {
                m[(k, j)] = self.n(i, j, k) as i64;
            }
        }
        m
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.product(i, j)).collect()).collect()
    }

    pub fn to_raw(&self) -> RawRing {
        RawRing::new(self.labels.clone(), self.tensor(), Some(self.dual.clone()))
    }

    /// Relabels the basis: new index `t` is old index `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> FusionRing {
        assert_eq!(perm.len(), self.rank);
        assert_eq!(perm[0], 0, "the unit must stay first");
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        FusionRing::from_fn(labels, |i, j, k| self.n(perm[i], perm[j], perm[k])).expect("relabeling preserves validity")
    }

    /// Basis sorted by unit first, then FP dimension, then label.
    pub fn canonicalize(&self) -> FusionRing {
        let dims = fpdims(self);
        let mut order: Vec<usize> = (1..self.rank).collect();
        order.sort_by(|&a, &b| dims.cmp_entries(a, b).then_with(|| self.labels[a].cmp(&self.labels[b])));
        let mut perm = vec![0];
        perm.extend(order);
        self.permuted(&perm)
    }

    /// Restriction to a subring given by its sorted basis indices.
    pub fn restrict(&self, basis: &[usize]) -> Result<FusionRing, RingError> {
        if basis.first() != Some(&0) || !is_subring(self, basis) {
            return Err(RingError::Precondition("basis is not a subring".into()));
        }
        let labels = basis.iter().map(|&b| self.labels[b].clone()).collect();
        FusionRing::from_fn(labels, |i, j, k| self.n(basis[i], basis[j], basis[k]))
    }
}
