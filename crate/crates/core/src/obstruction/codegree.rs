use serde::{Deserialize, Serialize};

use super::ObstructionError;
use crate::matrix::IntMatrix;
use crate::ring::FusionRing;
use crate::scalar::{charpoly, factor_linear_quadratic, IntPoly, QuadExt, Rational};

/// `M = Σ_T M_T · M_Tᵀ`, the regular representation of `Σ_T T ⊗ T*`.
pub fn codegree_matrix(ring: &FusionRing) -> IntMatrix {
    let r = ring.rank();
    let mut m = IntMatrix::zeros(r, r);
    for t in 0..r {
        let mt = ring.left_matrix(t);
        m = &m + &(&mt * &mt.transpose());
    }
    m
}

/// `I + Σ_{T≠1} M_T²`, the form written for self-dual examples.
pub fn squares_codegree_matrix(ring: &FusionRing) -> IntMatrix {
    let r = ring.rank();
    let mut m = IntMatrix::identity(r);
    for t in 1..r {
        let mt = ring.left_matrix(t);
        m = &m + &(&mt * &mt);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codegrees {
    pub matrix: IntMatrix,
    pub charpoly: IntPoly,
    /// Roots of the characteristic polynomial, largest first.
    pub values: Vec<QuadExt>,
}

/// Exact codegrees; fails when a factor of degree above two remains.
pub fn codegrees(ring: &FusionRing) -> Result<Codegrees, ObstructionError> {
    let matrix = codegree_matrix(ring);
    let cp = charpoly(&matrix);
    let f = factor_linear_quadratic(&cp);
    if !f.is_complete() {
        return Err(ObstructionError::NonQuadratic { residual: f.residual.to_string() });
    }
    let mut values: Vec<QuadExt> = f.root_list().into_iter().map(|r| QuadExt::from_rational(Rational::from_integer(r))).collect();
    for q in &f.quadratics {
        let c = q.coeffs();
        let (hi, lo) = QuadExt::quadratic_roots(&c[1], &c[0])
            .ok_or_else(|| ObstructionError::Exactness(format!("complex codegree from {q}")))?;
        values.push(hi);
        values.push(lo);
    }
    values.sort_by(|a, b| b.cmp_real(a));
    Ok(Codegrees { matrix, charpoly: cp, values })
}
