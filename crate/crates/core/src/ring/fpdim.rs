use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::FusionRing;
use crate::scalar::{charpoly, factor_linear_quadratic, QuadExt, Rational};

/// Certified width required of approximate entries.
const MAX_WIDTH: f64 = 1e-9;

/// One FP dimension: exact in a quadratic field, or a certified interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FpDim {
    Exact(QuadExt),
    Approx {
        #[serde(with = "crate::doc::rational")]
        lo: Rational,
        #[serde(with = "crate::doc::rational")]
        hi: Rational,
    },
}

impl FpDim {
    pub fn exact(&self) -> Option<&QuadExt> {
        match self {
            FpDim::Exact(q) => Some(q),
            FpDim::Approx { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }

    /// Rational enclosure of the value.
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            FpDim::Exact(q) => q.enclosure(64),
            FpDim::Approx { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FpDim::Exact(q) => q.to_f64(),
            FpDim::Approx { lo, hi } => ((lo + hi) / Rational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for FpDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpDim::Exact(q) => write!(f, "{q}"),
            FpDim::Approx { .. } => write!(f, "≈{:.12}", self.to_f64()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpDimVector {
    pub dims: Vec<FpDim>,
}

impl FpDimVector {
    pub fn all_exact(&self) -> bool {
        self.dims.iter().all(FpDim::is_exact)
    }

    /// Exact dims if every entry is exact and they share one quadratic field.
    pub fn exact(&self) -> Option<Vec<QuadExt>> {
        let v: Option<Vec<QuadExt>> = self.dims.iter().map(|d| d.exact().cloned()).collect();
        let v = v?;
        let common = v.iter().all(|a| v.iter().all(|b| a.compatible(b)));
        common.then_some(v)
    }

    /// Integer dims if the ring is integral.
    pub fn integers(&self) -> Option<Vec<u64>> {
        self.dims.iter().map(|d| d.exact().and_then(|q| q.as_integer()).and_then(|b| b.to_u64())).collect()
    }

    pub(crate) fn cmp_entries(&self, a: usize, b: usize) -> Ordering {
        match (&self.dims[a], &self.dims[b]) {
            (FpDim::Exact(x), FpDim::Exact(y)) => x.cmp_real(y),
            (x, y) => {
                let (xl, xh) = x.bounds();
                let (yl, yh) = y.bounds();
                if xh < yl {
                    Ordering::Less
                } else if yh < xl {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
        }
    }
}

/// FP dimensions via Perron roots of the left multiplication matrices.
pub fn fpdims(ring: &FusionRing) -> FpDimVector {
    let roots: Vec<PerronRoot> = (0..ring.rank()).map(|i| exact_perron_root(ring, i)).collect();
    let mut dims: Vec<Option<QuadExt>> = roots
        .iter()
        .map(|r| match r {
            PerronRoot::Exact(q) => Some(q.clone()),
            PerronRoot::Partial(_) => None,
        })
        .collect();
    dims[0] = Some(QuadExt::one());
    let mut approx = None;
    if dims.iter().any(Option::is_none) {
        if let Some(v) = largest_candidates(ring, &dims, &roots) {
            dims = v.into_iter().map(Some).collect();
        } else {
            let iv = certified_intervals(ring);
            if let Some(v) = snap(ring, &dims, &roots, &iv) {
                dims = v.into_iter().map(Some).collect();
            }
            approx = Some(iv);
        }
    }
    let dims = dims
        .into_iter()
        .enumerate()
        .map(|(i, d)| match d {
            Some(q) => FpDim::Exact(q),
            None => {
                let (lo, hi) = approx.as_ref().unwrap()[i].clone();
                FpDim::Approx { lo, hi }
            }
        })
        .collect();
    FpDimVector { dims }
}

enum PerronRoot {
    Exact(QuadExt),
    /// Roots of the linear and quadratic factors of an incomplete split.
    Partial(Vec<QuadExt>),
}

/// Largest real root of charpoly(M_i), when that polynomial splits into
/// linear and quadratic factors. By Perron–Frobenius it is `d_i`.
fn exact_perron_root(ring: &FusionRing, i: usize) -> PerronRoot {
    let f = factor_linear_quadratic(&charpoly(&ring.left_matrix(i)));
    let mut roots: Vec<QuadExt> = f.root_list().into_iter().map(|r| QuadExt::from_rational(Rational::from_integer(r))).collect();
    for q in &f.quadratics {
        let c = q.coeffs();
        if let Some((hi, lo)) = QuadExt::quadratic_roots(&c[1], &c[0]) {
            roots.push(hi);
            roots.push(lo);
        }
    }
    if !f.is_complete() {
        roots.sort_by(|a, b| a.cmp_real(b));
        roots.dedup();
        return PerronRoot::Partial(roots);
    }
    let best = roots.into_iter().max_by(|a, b| a.cmp_real(b)).expect("nonempty spectrum");
    PerronRoot::Exact(best)
}

/// A positive vector satisfying the fusion identity is the FP dimension
/// vector, so a guess only needs that check.
fn is_fp_vector(ring: &FusionRing, v: &[QuadExt]) -> bool {
    let common = v.iter().all(|a| v.iter().all(|b| a.compatible(b)));
    common && v.iter().all(|d| d.signum() > 0) && fp_identity_holds(ring, v)
}

/// Fills gaps with the largest real root found in each partial split.
fn largest_candidates(ring: &FusionRing, dims: &[Option<QuadExt>], roots: &[PerronRoot]) -> Option<Vec<QuadExt>> {
    let v: Option<Vec<QuadExt>> = dims
        .iter()
        .zip(roots)
        .map(|(d, r)| match (d, r) {
            (Some(q), _) => Some(q.clone()),
            (None, PerronRoot::Partial(c)) => c.last().cloned(),
            (None, PerronRoot::Exact(q)) => Some(q.clone()),
        })
        .collect();
    v.filter(|v| is_fp_vector(ring, v))
}

/// Fills gaps with the unique partial root inside each certified interval,
/// then keeps the result only if it is a positive ring homomorphism, which
/// characterizes the FP dimensions.
fn snap(ring: &FusionRing, dims: &[Option<QuadExt>], roots: &[PerronRoot], iv: &[(Rational, Rational)]) -> Option<Vec<QuadExt>> {
    let mut out = Vec::with_capacity(dims.len());
    for (i, d) in dims.iter().enumerate() {
        if let Some(q) = d {
            out.push(q.clone());
            continue;
        }
        let PerronRoot::Partial(cands) = &roots[i] else { return None };
        let (lo, hi) = &iv[i];
        let inside: Vec<&QuadExt> = cands
            .iter()
            .filter(|c| {
                let (cl, ch) = c.enclosure(64);
                ch >= *lo && cl <= *hi
            })
            .collect();
        match inside.as_slice() {
            [one] => out.push((*one).clone()),
            _ => return None,
        }
    }
    is_fp_vector(ring, &out).then_some(out)
}

/// Collins–Wielandt enclosures of every `d_i` from an approximate Perron
/// vector of the regular element; the bounds are exact rationals.
fn certified_intervals(ring: &FusionRing) -> Vec<(Rational, Rational)> {
    let r = ring.rank();
    // d is the Perron vector of Rᵀ = Σ_i M_iᵀ, where (M_iᵀ v)_j = Σ_k N[i][j][k] v_k.
    let apply = |i: usize, v: &[f64]| -> Vec<f64> {
        (0..r).map(|j| (0..r).map(|k| ring.n(i, j, k) as f64 * v[k]).sum()).collect()
    };
    let mut v = vec![1.0f64; r];
    let mut best = Vec::new();
    for round in 0..64 {
        for _ in 0..200 {
            let mut w = vec![0.0; r];
            for i in 0..r {
                for (a, b) in w.iter_mut().zip(apply(i, &v)) {
                    *a += b;
                }
            }
            let s = w[0];
            v = w.into_iter().map(|x| x / s).collect();
        }
        let vr: Vec<Rational> = v.iter().map(|&x| Rational::from_float(x).expect("finite Perron vector")).collect();
        best = (0..r).map(|i| collins_wielandt(ring, i, &vr)).collect();
        let width = best.iter().map(|(lo, hi)| (hi - lo).to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
        if width <= MAX_WIDTH || round == 63 {
            break;
        }
    }
    best
}

fn collins_wielandt(ring: &FusionRing, i: usize, v: &[Rational]) -> (Rational, Rational) {
    let r = ring.rank();
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for j in 0..r {
        let mut s = Rational::zero();
        for (k, vk) in v.iter().enumerate() {
            let c = ring.n(i, j, k);
            if c != 0 {
                s += vk * Rational::from_integer(BigInt::from(c));
            }
        }
        let ratio = s / &v[j];
        if lo.as_ref().map_or(true, |l| ratio < *l) {
            lo = Some(ratio.clone());
        }
        if hi.as_ref().map_or(true, |h| ratio > *h) {
            hi = Some(ratio);
        }
    }
    (lo.unwrap(), hi.unwrap())
}

/// `Σ_i d_i²`, exact when the dims are.
pub fn global_fpdim(ring: &FusionRing) -> FpDim {
    let dims = fpdims(ring);
    if let Some(d) = dims.exact() {
        return FpDim::Exact(d.iter().fold(QuadExt::zero(), |acc, x| &acc + &(x * x)));
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for d in &dims.dims {
        let (l, h) = d.bounds();
        lo += &l * &l;
        hi += &h * &h;
    }
    FpDim::Approx { lo, hi }
}

/// `Σ_k N[i][j][k] d_k = d_i d_j` for all `i, j`, exactly.
pub fn fp_identity_holds(ring: &FusionRing, dims: &[QuadExt]) -> bool {
    let r = ring.rank();
    (0..r).all(|i| {
        (0..r).all(|j| {
            let lhs = (0..r).fold(QuadExt::zero(), |acc, k| {
                let c = ring.n(i, j, k);
                if c == 0 {
                    acc
                } else {
                    &acc + &(&dims[k] * &QuadExt::from_int(c as i64))
                }
            });
            lhs == &dims[i] * &dims[j]
        })
    })
}
