//! Maximal-rank (MR) rings: the extension construction, dimension formulas,
//! the spherical certificate, and integrality, grading and primality checks.

mod checks;
mod spherical;

pub use checks::{grading_forcing_check, prime_rank_check, GradingForcing, PrimalityReport, SubringRankCheck};
pub use spherical::{pivotal_dims, spherical_witness, SphericalCandidate, SphericalCertificate};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::ring::{fpdims, FusionRing, RingError};
use crate::scalar::{exact_sqrt, QuadExt, Rational};

/// A detected maximal-rank structure `C(D, κ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrData {
    /// Basis of the rank-(n−1) subring `D`, ascending.
    pub base: Vec<usize>,
    /// Index of the extra simple object `X_n`.
    pub extra: usize,
    /// `N[n][n][n]`.
    pub kappa: u64,
    /// FP dimensions of the base objects, aligned with `base`.
    pub d: Vec<u64>,
    /// `FPdim(D) = Σ d_i²`.
    pub a: u64,
}

/// Adjoins a self-dual `X_n` to an integral ring with
/// `X_i ⊗ X_n = X_n ⊗ X_i = d_i X_n` and `X_n ⊗ X_n = Σ d_i X_i + κ X_n`.
pub fn mr_extend(base: &FusionRing, kappa: u64) -> Result<FusionRing, RingError> {
    let label = ["Z", "X", "W", "V"]
        .into_iter()
        .find(|l| base.index_of(l).is_none())
        .map(String::from)
        .unwrap_or_else(|| format!("X{}", base.rank() + 1));
    mr_extend_labeled(base, kappa, &label)
}

pub fn mr_extend_labeled(base: &FusionRing, kappa: u64, label: &str) -> Result<FusionRing, RingError> {
    let dims = fpdims(base)
        .integers()
        .ok_or_else(|| RingError::NonIntegral("every FP dimension of the base must be an integer".into()))?;
    let kappa = u32::try_from(kappa).map_err(|_| RingError::Precondition("κ too large".into()))?;
    let m = base.rank();
    let mut labels = base.labels().to_vec();
    labels.push(label.to_string());
    FusionRing::from_fn(labels, |i, j, k| match (i == m, j == m, k == m) {
        (false, false, false) => base.n(i, j, k),
        (false, false, true) => 0,
        (true, false, _) => if k == m { dims[j] as u32 } else { 0 },
        (false, true, _) => if k == m { dims[i] as u32 } else { 0 },
        (true, true, false) => dims[k] as u32,
        (true, true, true) => kappa,
    })
}

/// `d_n = (κ + √(κ²+4a))/2` and `FPdim(C) = a + d_n²`.
pub fn mr_fpdim(a: u64, kappa: u64) -> (QuadExt, QuadExt) {
    assert!(a >= 1, "a must be positive");
    let (k, aa) = (BigInt::from(kappa), BigInt::from(a));
    let disc = &k * &k + BigInt::from(4) * &aa;
    let half = QuadExt::from_rational(Rational::new(1.into(), 2.into()));
    let root = QuadExt::sqrt_int(&disc);
    let kq = QuadExt::from_int(kappa as i64);
    let dn = &(&kq + &root) * &half;
    let total = &QuadExt::from_int(a as i64) + &(&dn * &dn);
    // 2a + (κ² + κ√(κ²+4a))/2
    let closed = &QuadExt::from_int(2 * a as i64) + &(&(&(&kq * &kq) + &(&kq * &root)) * &half);
    assert_eq!(total, closed, "dimension identity");
    (dn, total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralityClass {
    Integral,
    WeaklyIntegralOnly,
    Irrational,
}

impl std::fmt::Display for IntegralityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IntegralityClass::Integral => "integral",
            IntegralityClass::WeaklyIntegralOnly => "weakly integral",
            IntegralityClass::Irrational => "irrational",
        })
    }
}

pub fn integrality_class(a: u64, kappa: u64) -> IntegralityClass {
    let disc = BigInt::from(kappa) * BigInt::from(kappa) + BigInt::from(4) * BigInt::from(a);
    if exact_sqrt(&disc).is_some() {
        IntegralityClass::Integral
    } else if kappa == 0 {
        IntegralityClass::WeaklyIntegralOnly
    } else {
        IntegralityClass::Irrational
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ring::{detect_mr, fpdims};
    use crate::scalar::ratio;

    #[test]
    fn extension_examples() {
        assert_eq!(mr_extend_labeled(&corpus::trivial(), 1, "X").unwrap(), corpus::fibonacci());
        let ising = mr_extend(&corpus::group_ring(2), 0).unwrap();
        let m = detect_mr(&ising).unwrap().unwrap();
        assert_eq!((m.kappa, m.a), (0, 2));
        // κ=1 over ℤ₂ reproduces the Rep(S₃) rules with X⊗X = 1 + g + X.
        let r = mr_extend(&corpus::group_ring(2), 1).unwrap();
        assert_eq!(r.product(2, 2), vec![1, 1, 1]);
        assert_eq!(r.product(1, 2), vec![0, 0, 1]);
    }

    #[test]
    fn non_integral_base_is_rejected() {
        assert!(matches!(mr_extend(&corpus::fibonacci(), 1), Err(RingError::NonIntegral(_))));
    }

    #[test]
    fn dimension_formula_examples() {
        assert_eq!(mr_fpdim(2, 1), (QuadExt::from_int(2), QuadExt::from_int(6)));
        assert_eq!(mr_fpdim(1, 0), (QuadExt::from_int(1), QuadExt::from_int(2)));
        let five = BigInt::from(5);
        assert_eq!(
            mr_fpdim(1, 1),
            (QuadExt::new(ratio(1, 2), ratio(1, 2), five.clone()), QuadExt::new(ratio(5, 2), ratio(1, 2), five))
        );
    }

    #[test]
    fn dimension_formula_matches_perron_roots() {
        let r = corpus::s3_base(5);
        let (dn, _) = mr_fpdim(6, 5);
        assert_eq!(fpdims(&r).exact().unwrap()[3], dn);
    }

    #[test]
    fn integrality_examples() {
        assert_eq!(integrality_class(2, 1), IntegralityClass::Integral);
        assert_eq!(integrality_class(2, 0), IntegralityClass::WeaklyIntegralOnly);
        assert_eq!(integrality_class(1, 1), IntegralityClass::Irrational);
        assert_eq!(integrality_class(4, 0), IntegralityClass::Integral);
    }
}
