use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{mr_fpdim, MrData};
use crate::doc::JsonInt;
use crate::ring::{adjoint_and_grading, subrings, FusionRing, RingError, DEFAULT_SUBRING_BOUND};

/// Outcome when `d_n²` divides `FPdim(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingForcing {
    /// `m` with `m · d_n² = FPdim(C)`.
    pub m: JsonInt,
    pub d_n_squared: JsonInt,
    pub total: JsonInt,
    pub kappa_zero: bool,
    pub adjoint_is_base: bool,
    pub grading_order: usize,
}

/// For weakly integral MR rings: if `d_n² | FPdim(C)` then `κ = 0`, the
/// adjoint subring is `D` and the universal grading group is ℤ₂.
pub fn grading_forcing_check(ring: &FusionRing, mr: &MrData) -> Result<Option<GradingForcing>, RingError> {
    let (dn, total) = mr_fpdim(mr.a, mr.kappa);
    let dn2 = &dn * &dn;
    let (Some(total), Some(dn2)) = (total.as_integer(), dn2.as_integer()) else {
        return Err(RingError::Precondition("ring is not weakly integral".into()));
    };
    if !(&total % &dn2 == BigInt::from(0)) {
        return Ok(None);
    }
    let grading = adjoint_and_grading(ring);
    let report = GradingForcing {
        m: (&total / &dn2).into(),
        d_n_squared: dn2.into(),
        total: total.into(),
        kappa_zero: mr.kappa == 0,
        adjoint_is_base: grading.adjoint == mr.base,
        grading_order: grading.order(),
    };
    if !(report.kappa_zero && report.adjoint_is_base && report.grading_order == 2) {
        return Err(RingError::Inconsistent(format!("divisibility did not force the ℤ₂-grading: {report:?}")));
    }
    Ok(Some(report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubringRankCheck {
    pub basis: Vec<usize>,
    pub rank: usize,
    /// `rank | n`
    pub divides_n: bool,
    /// `rank | n − 1`
    pub divides_n_minus_1: bool,
    /// `n = rank·r`, `n−1 = rank·r'` with `r − r' ≥ 1` is solvable.
    pub factorization_possible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityReport {
    pub n: usize,
    pub n_minus_1: usize,
    /// Proper nontrivial subrings; each lies in `D`.
    pub checks: Vec<SubringRankCheck>,
    pub prime: bool,
}

/// Rank arithmetic behind primality: a factor `A` would need
/// `1 = rank(A)·(r − r')`, so only `rank(A) = 1` is possible.
pub fn prime_rank_check(ring: &FusionRing, mr: &MrData) -> Result<PrimalityReport, RingError> {
    let n = ring.rank();
    let bound = n.max(DEFAULT_SUBRING_BOUND);
    let mut checks = Vec::new();
    for s in subrings(ring, bound)? {
        if s.len() == 1 || s.len() == n {
            continue;
        }
        if !s.iter().all(|i| mr.base.contains(i)) {
            return Err(RingError::Inconsistent(format!("proper subring {s:?} leaves the base")));
        }
        let ra = s.len();
        let divides_n = n % ra == 0;
        let divides_n_minus_1 = (n - 1) % ra == 0;
        let factorization_possible = divides_n && divides_n_minus_1 && n / ra >= (n - 1) / ra + 1;
        checks.push(SubringRankCheck { basis: s, rank: ra, divides_n, divides_n_minus_1, factorization_possible });
    }
    let prime = checks.iter().all(|c| !c.factorization_possible);
    Ok(PrimalityReport { n, n_minus_1: n - 1, checks, prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::mr::mr_extend;
    use crate::ring::detect_mr;

    fn mr(r: &FusionRing) -> MrData {
        detect_mr(r).unwrap().unwrap()
    }

    #[test]
    fn ising_forces_z2_grading() {
        let r = corpus::ising();
        let f = grading_forcing_check(&r, &mr(&r)).unwrap().unwrap();
        assert_eq!((f.m.0.clone(), f.d_n_squared.0.clone()), (BigInt::from(2), BigInt::from(2)));
        assert!(f.kappa_zero && f.adjoint_is_base && f.grading_order == 2);
    }

    #[test]
    fn rep_s3_type_is_not_forced() {
        let r = corpus::rep_s3();
        assert_eq!(grading_forcing_check(&r, &mr(&r)).unwrap(), None);
    }

    #[test]
    fn a4_kappa0_divides() {
        // a = 4 from the ℤ₄ group ring.
        let r = mr_extend(&corpus::group_ring(4), 0).unwrap();
        let f = grading_forcing_check(&r, &mr(&r)).unwrap().unwrap();
        assert_eq!(f.m.0, BigInt::from(2));
    }

    #[test]
    fn irrational_ring_violates_precondition() {
        let r = corpus::fibonacci();
        assert!(grading_forcing_check(&r, &mr(&r)).is_err());
    }

    #[test]
    fn primality_certificates() {
        let r = corpus::z3_base(2);
        let p = prime_rank_check(&r, &mr(&r)).unwrap();
        assert!(p.prime);
        let a = p.checks.iter().find(|c| c.rank == 3).unwrap();
        assert!(!a.divides_n);

        let r = corpus::fibonacci();
        let p = prime_rank_check(&r, &mr(&r)).unwrap();
        assert!(p.checks.is_empty() && p.prime);

        let r = corpus::s3_base(4);
        let p = prime_rank_check(&r, &mr(&r)).unwrap();
        let y = p.checks.iter().find(|c| c.basis == vec![0, 2]).unwrap();
        assert!(y.divides_n && !y.divides_n_minus_1 && !y.factorization_possible);
    }
}
