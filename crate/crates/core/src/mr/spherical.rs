use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::ring::RingError;
use crate::scalar::{exact_sqrt, QuadExt, Rational};

/// Both sign branches of `dim(X_n⁺)` and of `dim(C̃)` for a split `s + t = κ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotalDims {
    /// `((s−t) ± √((s−t)²+4a))/2`
    pub dim_plus: [QuadExt; 2],
    /// `4a + (s−t)² ± (s−t)√((s−t)²+4a)`
    pub dim_tilde: [QuadExt; 2],
}

pub fn pivotal_dims(a: u64, kappa: u64, s: u64, t: u64) -> Result<PivotalDims, RingError> {
    if s + t != kappa {
        return Err(RingError::Precondition(format!("s + t = {} but κ = {kappa}", s + t)));
    }
    let u = s as i64 - t as i64;
    let root = QuadExt::sqrt_int(&BigInt::from(u * u + 4 * a as i64));
    let uq = QuadExt::from_int(u);
    let half = QuadExt::from_rational(Rational::new(1.into(), 2.into()));
    let dim_plus = [&(&uq + &root) * &half, &(&uq - &root) * &half];
    let base = QuadExt::from_int(4 * a as i64 + u * u);
    let ur = &uq * &root;
    let dim_tilde = [&base + &ur, &base - &ur];
    Ok(PivotalDims { dim_plus, dim_tilde })
}

/// One split `s + t = κ`, `s ≥ t`, with its integrality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalCandidate {
    pub s: u64,
    pub t: u64,
    pub dims: PivotalDims,
    /// `x = dim(C̃)/FPdim(C̃)` on the `+` branch; absent when numerator and
    /// denominator lie in different quadratic fields.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<QuadExt>,
    /// `x · σ(x)` where `σ` negates every square root.
    #[serde(with = "crate::doc::rational")]
    pub xy: Rational,
    /// `(16a² + 4a(s−t)²)/(16a² + 4aκ²)`.
    #[serde(with = "crate::doc::rational")]
    pub closed_form_xy: Rational,
    /// The same numerator over `16 + 4aκ²`, kept to document the discrepancy.
    #[serde(with = "crate::doc::rational")]
    pub printed_form_xy: Rational,
    /// `xy` agrees with the closed form (both discriminants irrational).
    pub matches_closed_form: bool,
    /// Which test decided survival: `"xy"`, `"x"` or `"pseudo-unitary"`.
    pub filter: String,
    pub survives: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalCertificate {
    pub a: u64,
    pub kappa: u64,
    /// `FPdim(C̃) = 4a + κ² + κ√(κ²+4a)`.
    pub fpdim_tilde: QuadExt,
    /// `κ² + 4a` is a perfect square.
    pub rational_discriminant: bool,
    pub candidates: Vec<SphericalCandidate>,
    /// The unique surviving split.
    pub conclusion: (u64, u64),
}

impl SphericalCertificate {
    pub fn survivors(&self) -> Vec<(u64, u64)> {
        self.candidates.iter().filter(|c| c.survives).map(|c| (c.s, c.t)).collect()
    }
}

/// Pins the pivotal structure of an MR ring: among splits `s + t = κ`, only
/// `(κ, 0)` makes `dim(C̃)/FPdim(C̃)` an algebraic integer.
pub fn spherical_witness(a: u64, kappa: u64) -> SphericalCertificate {
    assert!(a >= 1, "a must be positive");
    let disc = BigInt::from(kappa * kappa + 4 * a);
    let rational_discriminant = exact_sqrt(&disc).is_some();
    let kq = QuadExt::from_int(kappa as i64);
    let f = &QuadExt::from_int((4 * a + kappa * kappa) as i64) + &(&kq * &QuadExt::sqrt_int(&disc));
    let f_norm = f.norm();

    let a2 = BigInt::from(a) * BigInt::from(a);
    let mut candidates = Vec::new();
    for t in 0..=kappa / 2 {
        let s = kappa - t;
        let u = s - t;
        let dims = pivotal_dims(a, kappa, s, t).expect("split sums to κ");
        let num = &dims.dim_tilde[0];
        let x = num.compatible(&f).then(|| num / &f);
        let xy = num.norm() / &f_norm;
        let numer = BigInt::from(16) * &a2 + BigInt::from(4 * a * u * u);
        let closed = Rational::new(numer.clone(), BigInt::from(16) * &a2 + BigInt::from(4 * a * kappa * kappa));
        let printed = Rational::new(numer, BigInt::from(16 + 4 * a * kappa * kappa));
        let (filter, survives) = if rational_discriminant {
            // f is rational here, so both quotients exist.
            let xp = num / &f;
            let xm = &dims.dim_tilde[1] / &f;
            ("x", xp.is_algebraic_integer() || xm.is_algebraic_integer())
        } else if exact_sqrt(&BigInt::from(u * u + 4 * a)).is_some() {
            // Integer dim(X_n⁺) makes C̃ pseudo-unitary, so dim(C̃) = FPdim(C̃).
            ("pseudo-unitary", dims.dim_tilde.iter().any(|d| *d == f))
        } else {
            ("xy", xy.is_integer())
        };
        candidates.push(SphericalCandidate {
            s,
            t,
            matches_closed_form: xy == closed,
            dims,
            x,
            xy,
            closed_form_xy: closed,
            printed_form_xy: printed,
            filter: filter.into(),
            survives,
        });
    }
    let survivors: Vec<(u64, u64)> = candidates.iter().filter(|c| c.survives).map(|c| (c.s, c.t)).collect();
    assert_eq!(survivors, vec![(kappa, 0)], "spherical certificate must single out (κ, 0)");
    SphericalCertificate { a, kappa, fpdim_tilde: f, rational_discriminant, candidates, conclusion: (kappa, 0) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn pivotal_dim_examples() {
        let five = BigInt::from(5);
        let p = pivotal_dims(1, 1, 1, 0).unwrap();
        assert_eq!(p.dim_plus[0], QuadExt::new(ratio(1, 2), ratio(1, 2), five.clone()));
        assert_eq!(p.dim_plus[1], QuadExt::new(ratio(1, 2), ratio(-1, 2), five.clone()));
        assert_eq!(p.dim_tilde[0], QuadExt::new(rat(5), rat(1), five.clone()));
        assert_eq!(p.dim_tilde[1], QuadExt::new(rat(5), rat(-1), five));

        let p = pivotal_dims(4, 0, 0, 0).unwrap();
        assert_eq!(p.dim_plus, [QuadExt::from_int(2), QuadExt::from_int(-2)]);
        assert_eq!(p.dim_tilde, [QuadExt::from_int(16), QuadExt::from_int(16)]);

        let p = pivotal_dims(2, 2, 1, 1).unwrap();
        let r2 = QuadExt::sqrt_int(&BigInt::from(2));
        assert_eq!(p.dim_plus, [r2.clone(), -r2]);
        assert_eq!(p.dim_tilde[0], QuadExt::from_int(8));
        assert!(pivotal_dims(2, 2, 1, 0).is_err());
    }

    #[test]
    fn witness_examples() {
        let c = spherical_witness(2, 2);
        assert_eq!(c.conclusion, (2, 0));
        let top = c.candidates.iter().find(|x| x.s == 2).unwrap();
        assert_eq!(top.xy, rat(1));

        let c = spherical_witness(5, 0);
        assert_eq!(c.conclusion, (0, 0));
        assert_eq!(c.candidates[0].x, Some(QuadExt::one()));

        let c = spherical_witness(3, 1);
        assert_eq!(c.candidates.len(), 1);
        assert_eq!(c.candidates[0].xy, rat(1));
    }

    #[test]
    fn square_pivotal_discriminant_uses_pseudo_unitarity() {
        // a=3, κ=6, (s,t)=(4,2): (s−t)²+4a = 16 and xy = 1, yet dim(C̃) ≠ FPdim(C̃).
        let c = spherical_witness(3, 6);
        let mid = c.candidates.iter().find(|x| x.s == 4).unwrap();
        assert_eq!(mid.xy, rat(1));
        assert_eq!(mid.filter, "pseudo-unitary");
        assert!(!mid.survives);
        assert_eq!(c.survivors(), vec![(6, 0)]);
    }

    #[test]
    fn closed_form_uses_sixteen_a_squared() {
        // a=2, κ=2: κ²+4a = 12 is not a square; the split (1,1) has u = 0.
        let c = spherical_witness(2, 2);
        let mid = c.candidates.iter().find(|x| x.s == 1).unwrap();
        assert_eq!(mid.xy, ratio(64, 64 + 32));
        assert!(mid.matches_closed_form);
        assert_ne!(mid.xy, mid.printed_form_xy);
        assert!(!mid.survives);
    }
}
