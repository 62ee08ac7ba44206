use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;
use crate::ring::FusionRing;

/// `FI[V][W]` is the multiplicity of `X_W` in `F(I(X_V)) = ⊕_Y Y ⊗ X_V ⊗ Y*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionImages {
    pub fi: IntMatrix,
    /// `FI = FIᵀ`, checked rather than assumed.
    pub symmetric: bool,
    /// First `(U, V)` with `FI[U][V] != FI[V][U]`.
    pub asymmetry: Option<(usize, usize)>,
}

pub fn induction_images(ring: &FusionRing) -> InductionImages {
    let r = ring.rank();
    let mut fi = IntMatrix::zeros(r, r);
    for v in 0..r {
        for y in 0..r {
            let ys = ring.dual(y);
            for m in ring.support(y, v).collect::<Vec<_>>() {
                let c = ring.n(y, v, m) as i64;
                for w in 0..r {
                    fi[(v, w)] += c * ring.n(m, ys, w) as i64;
                }
            }
        }
    }
    let mut asymmetry = None;
    'outer: for u in 0..r {
        for v in u + 1..r {
            if fi[(u, v)] != fi[(v, u)] {
                asymmetry = Some((u, v));
                break 'outer;
            }
        }
    }
    InductionImages { symmetric: asymmetry.is_none(), fi, asymmetry }
}
