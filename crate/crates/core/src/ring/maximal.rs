use super::{is_subring, FusionRing, RingError};
use crate::mr::MrData;

/// Finds the rank-(n−1) subring, if any, and checks the rules it forces:
/// `X_n ⊗ X_i = d_i X_n` and `X_n ⊗ X_n = Σ d_i X_i + κ X_n`.
///
/// Such a subring is unique: `X_n ⊗ X_n` contains every base object, so a
/// second one would have to contain everything.
pub fn detect_mr(ring: &FusionRing) -> Result<Option<MrData>, RingError> {
    let r = ring.rank();
    if r < 2 {
        return Ok(None);
    }
    let Some(x) = (1..r).rev().find(|&x| {
        let rest: Vec<usize> = (0..r).filter(|&i| i != x).collect();
        is_subring(ring, &rest)
    }) else {
        return Ok(None);
    };
    let base: Vec<usize> = (0..r).filter(|&i| i != x).collect();
    let bad = |msg: String| Err(RingError::Inconsistent(msg));

    if ring.dual(x) != x {
        return bad(format!("{} is not self-dual", ring.label(x)));
    }
    let mut d = Vec::with_capacity(base.len());
    for &i in &base {
        let di = ring.n(x, i, x);
        if di == 0 {
            return bad(format!("{}⊗{} does not contain {}", ring.label(x), ring.label(i), ring.label(x)));
        }
        for k in 0..r {
            let want = if k == x { di } else { 0 };
            if ring.n(x, i, k) != want || ring.n(i, x, k) != want {
                return bad(format!("{}⊗{} is not a multiple of {}", ring.label(x), ring.label(i), ring.label(x)));
            }
        }
        if ring.n(x, x, i) != di {
            return bad(format!("multiplicity of {} in {}⊗{} differs from its dimension", ring.label(i), ring.label(x), ring.label(x)));
        }
        d.push(di as u64);
    }
    // d restricted to the base is its FP dimension vector.
    for (a, &i) in base.iter().enumerate() {
        for (b, &j) in base.iter().enumerate() {
            let lhs: u64 = base.iter().enumerate().map(|(c, &k)| ring.n(i, j, k) as u64 * d[c]).sum();
            if lhs != d[a] * d[b] {
                return bad("base multiplicities are not FP dimensions".into());
            }
        }
    }
    let kappa = ring.n(x, x, x) as u64;
    let a = d.iter().map(|v| v * v).sum();
    Ok(Some(MrData { base, extra: x, kappa, d, a }))
}
