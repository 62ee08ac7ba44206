//! S-matrices from the balancing equation, Müger centralizers and degeneracy
//! classes, and the row comparison that rules out a Tannakian pointed part.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mr::MrData;
use crate::ring::{is_subring, FusionRing};
use crate::scalar::{CycNumber, QuadExt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PremodularError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
    #[error("inconsistent premodular data: {0}")]
    Inconsistent(String),
}

/// Ring, categorical dims and twists, with the S-matrix they determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremodularData {
    pub ring: FusionRing,
    pub dims: Vec<CycNumber>,
    pub twists: Vec<CycNumber>,
    pub s: Vec<Vec<CycNumber>>,
}

impl PremodularData {
    /// Checks `θ_1 = 1`, twists are roots of unity and dims respect fusion,
    /// then computes `S`.
    pub fn new(ring: FusionRing, dims: &[QuadExt], twists: Vec<CycNumber>) -> Result<Self, PremodularError> {
        let r = ring.rank();
        if dims.len() != r || twists.len() != r {
            return Err(PremodularError::Precondition(format!("need {r} dims and {r} twists")));
        }
        if twists[0] != CycNumber::one() {
            return Err(PremodularError::Precondition("θ of the unit must be 1".into()));
        }
        if let Some(i) = twists.iter().position(|t| !t.is_root_of_unity()) {
            return Err(PremodularError::Precondition(format!("θ_{i} is not a root of unity")));
        }
        for d in dims {
            if !d.is_rational() && d.radicand() > &u32::MAX.into() {
                return Err(PremodularError::Unsupported(format!("radicand of {d} is too large to embed")));
            }
        }
        let dims: Vec<CycNumber> = dims.iter().map(CycNumber::from_quad).collect();
        if dims[0] != CycNumber::one() {
            return Err(PremodularError::Precondition("dimension of the unit must be 1".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let lhs = (0..r).fold(CycNumber::zero(), |acc, k| {
                    &acc + &dims[k].scale(&crate::scalar::rat(ring.n(i, j, k) as i64))
                });
                if lhs != &dims[i] * &dims[j] {
                    return Err(PremodularError::Inconsistent(format!("d_{i}·d_{j} does not match the fusion rules")));
                }
            }
        }
        let s = smatrix(&ring, &dims, &twists);
        Ok(PremodularData { ring, dims, twists, s })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn is_symmetric_matrix(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.s[i][j] == self.s[j][i]))
    }

    /// `c` with `S·S̄ᵀ = c·I`, if it has that form.
    pub fn unitarity_scalar(&self) -> Option<CycNumber> {
        let r = self.rank();
        let entry = |i: usize, j: usize| (0..r).fold(CycNumber::zero(), |acc, k| &acc + &(&self.s[i][k] * &self.s[j][k].conj()));
        let c = entry(0, 0);
        let ok = (0..r).all(|i| (0..r).all(|j| entry(i, j) == if i == j { c.clone() } else { CycNumber::zero() }));
        ok.then_some(c)
    }
}

/// `s_{X,Y} = θ_X⁻¹ θ_Y⁻¹ Σ_Z N_{XY}^Z θ_Z d_Z`.
pub fn smatrix(ring: &FusionRing, dims: &[CycNumber], twists: &[CycNumber]) -> Vec<Vec<CycNumber>> {
    let r = ring.rank();
    let inv: Vec<CycNumber> = twists.iter().map(CycNumber::inverse).collect();
    let td: Vec<CycNumber> = (0..r).map(|z| &twists[z] * &dims[z]).collect();
    (0..r)
        .map(|x| {
            (0..r)
                .map(|y| {
                    let sum = ring
                        .support(x, y)
                        .fold(CycNumber::zero(), |acc, z| &acc + &td[z].scale(&crate::scalar::rat(ring.n(x, y, z) as i64)));
                    &(&inv[x] * &inv[y]) * &sum
                })
                .collect()
        })
        .collect()
}

/// Simples `Y` with `s_{X,Y} = d_X d_Y` for every `X` in `subset`.
pub fn centralizer_of(data: &PremodularData, subset: &[usize]) -> Result<Vec<usize>, PremodularError> {
    let out: Vec<usize> = (0..data.rank())
        .filter(|&y| subset.iter().all(|&x| data.s[x][y] == &data.dims[x] * &data.dims[y]))
        .collect();
    if !is_subring(&data.ring, &out) {
        return Err(PremodularError::Inconsistent(format!("centralizer {out:?} is not a subring")));
    }
    Ok(out)
}

/// Exact determinant by Gaussian elimination over the cyclotomic field.
pub fn determinant(m: &[Vec<CycNumber>]) -> CycNumber {
    let n = m.len();
    let mut a: Vec<Vec<CycNumber>> = m.to_vec();
    let mut det = CycNumber::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return CycNumber::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inverse();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneracyClass {
    NonDegenerate,
    SlightlyDegenerate,
    Symmetric,
    ProperlyDegenerate,
}

impl std::fmt::Display for DegeneracyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str(match self {
            DegeneracyClass::NonDegenerate => "non-degenerate",
            DegeneracyClass::SlightlyDegenerate => "slightly degenerate",
            DegeneracyClass::Symmetric => "symmetric",
            DegeneracyClass::ProperlyDegenerate => "properly degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub class: DegeneracyClass,
    /// Müger center, as basis indices.
    pub center: Vec<usize>,
    pub det_nonzero: bool,
    /// The center is `{1, g}` with `g` invertible and `θ_g = −1`.
    pub super_vector: bool,
    /// Trivial center but singular `S`.
    pub inconsistent: bool,
}

pub fn degeneracy_class(data: &PremodularData) -> Result<DegeneracyReport, PremodularError> {
    let all: Vec<usize> = (0..data.rank()).collect();
    let center = centralizer_of(data, &all)?;
    let det_nonzero = !determinant(&data.s).is_zero();
    let super_vector = center.len() == 2 && {
        let g = center[1];
        data.ring.n(g, data.ring.dual(g), 0) == 1
            && data.ring.product(g, data.ring.dual(g)).iter().sum::<u32>() == 1
            && data.twists[g] == CycNumber::from_int(-1)
    };
    let mut inconsistent = false;
    let class = if center == [0] {
        if det_nonzero {
            DegeneracyClass::NonDegenerate
        } else {
            inconsistent = true;
            DegeneracyClass::ProperlyDegenerate
        }
    } else if center.len() == data.rank() {
        DegeneracyClass::Symmetric
    } else if super_vector {
        DegeneracyClass::SlightlyDegenerate
    } else {
        DegeneracyClass::ProperlyDegenerate
    };
    Ok(DegeneracyReport { class, center, det_nonzero, super_vector, inconsistent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub g: usize,
    pub extra: usize,
    pub theta_g_trivial: bool,
    pub s_g_extra: CycNumber,
    /// `θ_g⁻¹ d_{X_n}`, what `s_{g,X_n}` collapses to when `g ⊗ X_n = X_n`.
    pub collapsed: CycNumber,
    pub row_g: Vec<CycNumber>,
    pub row_1: Vec<CycNumber>,
    pub rows_equal: bool,
    pub first_difference: Option<usize>,
    /// `g` is the unit, so equality says nothing.
    pub trivial_witness: bool,
    pub conclusion: String,
}

/// Compares row `g` of `S` with the unit row for an invertible `g` fixing `X_n`.
pub fn tannakian_row_obstruction(data: &PremodularData, mr: &MrData, g: usize) -> Result<RowReport, PremodularError> {
    let ring = &data.ring;
    let n = mr.extra;
    if g >= ring.rank() || ring.product(g, ring.dual(g)).iter().sum::<u32>() != 1 {
        return Err(PremodularError::Precondition(format!("object {g} is not invertible")));
    }
    if ring.product(g, n).iter().enumerate().any(|(k, &c)| c != u32::from(k == n)) {
        return Err(PremodularError::Precondition(format!("g ⊗ X_n ≠ X_n for g = {g}")));
    }
    let collapsed = &data.twists[g].inverse() * &data.dims[n];
    let s_g_extra = data.s[g][n].clone();
    if s_g_extra != collapsed {
        return Err(PremodularError::Inconsistent("s_{g,X_n} differs from θ_g⁻¹ d_{X_n}".into()));
    }
    let row_g = data.s[g].clone();
    let row_1 = data.s[0].clone();
    let first_difference = (0..ring.rank()).find(|&k| row_g[k] != row_1[k]);
    let rows_equal = first_difference.is_none();
    let trivial_witness = g == 0;
    let conclusion = if trivial_witness {
        "g is the unit: rows agree trivially".to_string()
    } else if rows_equal {
        "S degenerate: C_pt cannot be Tannakian".to_string()
    } else {
        format!("rows differ at {}", ring.label(first_difference.expect("difference")))
    };
    Ok(RowReport {
        g,
        extra: n,
        theta_g_trivial: data.twists[g] == CycNumber::one(),
        s_g_extra,
        collapsed,
        row_g,
        row_1,
        rows_equal,
        first_difference,
        trivial_witness,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ring::{detect_mr, fpdims};
    use crate::scalar::ratio;

    fn phi() -> QuadExt {
        QuadExt::new(ratio(1, 2), ratio(1, 2), 5.into())
    }

    fn fib() -> PremodularData {
        PremodularData::new(corpus::fibonacci(), &[QuadExt::one(), phi()], vec![CycNumber::one(), CycNumber::root_of_unity(5, 2)]).unwrap()
    }

    fn z2(theta: CycNumber) -> PremodularData {
        PremodularData::new(corpus::group_ring(2), &[QuadExt::one(), QuadExt::one()], vec![CycNumber::one(), theta]).unwrap()
    }

    #[test]
    fn fibonacci_s_matrix() {
        let d = fib();
        let p = CycNumber::from_quad(&phi());
        assert_eq!(d.s, vec![vec![CycNumber::one(), p.clone()], vec![p, CycNumber::from_int(-1)]]);
        assert_eq!(degeneracy_class(&d).unwrap().class, DegeneracyClass::NonDegenerate);
        assert_eq!(centralizer_of(&d, &[0, 1]).unwrap(), vec![0]);
        let total = CycNumber::from_quad(&(&QuadExt::one() + &(&phi() * &phi())));
        assert_eq!(d.unitarity_scalar(), Some(total));
    }

    #[test]
    fn semion_pair() {
        for k in [1, 3] {
            let d = z2(CycNumber::root_of_unity(4, k));
            assert_eq!(d.s[1][1], CycNumber::from_int(-1));
            let r = degeneracy_class(&d).unwrap();
            assert_eq!(r.class, DegeneracyClass::NonDegenerate);
            assert!(r.det_nonzero);
            assert_eq!(d.unitarity_scalar(), Some(CycNumber::from_int(2)));
        }
    }

    #[test]
    fn z2_with_real_twists_is_symmetric() {
        let r = degeneracy_class(&z2(CycNumber::one())).unwrap();
        assert_eq!((r.class, r.super_vector), (DegeneracyClass::Symmetric, false));
        let r = degeneracy_class(&z2(CycNumber::from_int(-1))).unwrap();
        assert_eq!((r.class, r.super_vector), (DegeneracyClass::Symmetric, true));
    }

    #[test]
    fn trivial_twists_give_symmetric_products() {
        for ring in [corpus::rep_s3(), corpus::z3_base(3), corpus::s3_base(0)] {
            let dims = fpdims(&ring).exact().unwrap();
            let d = PremodularData::new(ring.clone(), &dims, vec![CycNumber::one(); ring.rank()]).unwrap();
            for x in 0..ring.rank() {
                for y in 0..ring.rank() {
                    assert_eq!(d.s[x][y], &d.dims[x] * &d.dims[y]);
                }
            }
            assert_eq!(degeneracy_class(&d).unwrap().class, DegeneracyClass::Symmetric);
        }
    }

    #[test]
    fn rows_of_rep_s3() {
        let ring = corpus::rep_s3();
        let mr = detect_mr(&ring).unwrap().unwrap();
        let dims = fpdims(&ring).exact().unwrap();
        let g = ring.index_of("Y").unwrap();
        let d = PremodularData::new(ring.clone(), &dims, vec![CycNumber::one(); 3]).unwrap();
        let r = tannakian_row_obstruction(&d, &mr, g).unwrap();
        assert!(r.rows_equal && r.theta_g_trivial && !r.trivial_witness);
        assert_eq!(r.s_g_extra, CycNumber::from_int(2));

        let mut twists = vec![CycNumber::one(); 3];
        twists[g] = CycNumber::from_int(-1);
        let d = PremodularData::new(ring.clone(), &dims, twists).unwrap();
        let r = tannakian_row_obstruction(&d, &mr, g).unwrap();
        assert!(!r.rows_equal);
        assert_eq!(r.first_difference, Some(mr.extra));
        assert_eq!(r.s_g_extra, CycNumber::from_int(-2));

        let r = tannakian_row_obstruction(&d, &mr, 0).unwrap();
        assert!(r.rows_equal && r.trivial_witness);
        assert!(tannakian_row_obstruction(&d, &mr, mr.extra).is_err());
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![CycNumber::from_int(2), CycNumber::from_int(1)], vec![CycNumber::from_int(4), CycNumber::from_int(2)]];
        assert!(determinant(&m).is_zero());
        let d = fib();
        let det = determinant(&d.s);
        assert_eq!(det, -CycNumber::from_quad(&(&QuadExt::one() + &(&phi() * &phi()))));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let ring = corpus::group_ring(2);
        let one = [QuadExt::one(), QuadExt::one()];
        assert!(PremodularData::new(ring.clone(), &one, vec![CycNumber::from_int(-1), CycNumber::one()]).is_err());
        assert!(PremodularData::new(ring.clone(), &one, vec![CycNumber::one(), CycNumber::from_int(2)]).is_err());
        assert!(PremodularData::new(ring, &[QuadExt::one(), QuadExt::from_int(2)], vec![CycNumber::one(); 2]).is_err());
    }
}
