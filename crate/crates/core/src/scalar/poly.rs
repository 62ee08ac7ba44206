use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::divisors;
use crate::matrix::IntMatrix;

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<crate::doc::JsonInt>", into = "Vec<crate::doc::JsonInt>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x − r`.
    pub fn linear(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at `-1`.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(d.is_monic(), "divisor must be monic");
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return self.is_zero().then(|| self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// Matrix substitution `p(M)`, used for Cayley–Hamilton checks.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Vec<Vec<BigInt>> {
        let n = m.rows();
        let mb: Vec<Vec<BigInt>> = m.to_rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut acc = vec![vec![BigInt::zero(); n]; n];
        for c in self.coeffs.iter().rev() {
            acc = big_mul(&acc, &mb);
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] += c;
            }
        }
        acc
    }
}

impl From<Vec<crate::doc::JsonInt>> for IntPoly {
    fn from(v: Vec<crate::doc::JsonInt>) -> Self {
        IntPoly::new(v.into_iter().map(|x| x.0).collect())
    }
}

impl From<IntPoly> for Vec<crate::doc::JsonInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.into_iter().map(Into::into).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// `det(xI − M)` by the Faddeev–LeVerrier recurrence in exact integers.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "charpoly needs a square matrix");
    let n = m.rows();
    let a: Vec<Vec<BigInt>> = m.to_rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = big_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n + 1 - k];
        }
        mk = next;
        let am = big_mul(&a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let kk = BigInt::from(k);
        debug_assert!((&tr % &kk).is_zero());
        c[n - k] = -(tr / kk);
    }
    IntPoly::new(c)
}

/// Result of splitting off linear and quadratic factors over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// Integer roots with multiplicity, ascending.
    pub roots: Vec<(crate::doc::JsonInt, usize)>,
    /// Monic quadratics without rational roots.
    pub quadratics: Vec<IntPoly>,
    /// What is left; `1` when the split is complete.
    pub residual: IntPoly,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.residual.degree() == 0
    }

    pub fn root_list(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (r, m) in &self.roots {
            for _ in 0..*m {
                out.push(r.0.clone());
            }
        }
        out
    }
}

/// Upper bound on Kronecker quadratic candidates tried before giving up.
const QUADRATIC_SEARCH_CAP: usize = 2_000_000;

/// Splits a monic integer polynomial into integer roots, irreducible monic
/// quadratics and an untouched residual.
pub fn factor_linear_quadratic(p: &IntPoly) -> Factorization {
    assert!(p.is_monic(), "factor_linear_quadratic needs a monic polynomial");
    let mut r = p.clone();
    let mut roots: Vec<(BigInt, usize)> = Vec::new();

    let mut zero_mult = 0;
    while r.degree() > 0 && r.coeffs[0].is_zero() {
        r = IntPoly::new(r.coeffs[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((BigInt::zero(), zero_mult));
    }

    if r.degree() > 0 {
        for d in divisors(&r.coeffs[0]) {
            for cand in [-d.clone(), d] {
                let mut mult = 0;
                while r.degree() > 0 && r.eval(&cand).is_zero() {
                    r = r.div_exact(&IntPoly::linear(&cand)).expect("root deflation is exact");
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
            if r.degree() == 0 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));

    let mut quadratics = Vec::new();
    loop {
        match r.degree() {
            d if d < 2 => break,
            2 => {
                quadratics.push(r.clone());
                r = IntPoly::one();
                break;
            }
            _ => match find_quadratic(&r) {
                Some(q) => {
                    r = r.div_exact(&q).expect("quadratic factor divides");
                    quadratics.push(q);
                }
                None => break,
            },
        }
    }
    quadratics.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));

    Factorization {
        roots: roots.into_iter().map(|(r, m)| (r.into(), m)).collect(),
        quadratics,
        residual: r,
    }
}

/// Kronecker search for `x² + b x + c` dividing `r`, where `r` has no
/// integer roots: `c | r(0)`, `(1 + b + c) | r(1)`, `(1 − b + c) | r(−1)`.
fn find_quadratic(r: &IntPoly) -> Option<IntPoly> {
    let r0 = r.coeffs[0].clone();
    let r1 = r.eval(&BigInt::one());
    let rm1 = r.eval(&-BigInt::one());
    let d1 = divisors(&r1);
    let mut tried = 0usize;
    for c_abs in divisors(&r0) {
        for c in [c_abs.clone(), -c_abs] {
            for e_abs in &d1 {
                for e in [e_abs.clone(), -e_abs.clone()] {
                    tried += 1;
                    if tried > QUADRATIC_SEARCH_CAP {
                        return None;
                    }
                    // e = 1 + b + c
                    let b = &e - BigInt::one() - &c;
                    let em = BigInt::one() - &b + &c;
                    if em.is_zero() || !(&rm1 % &em).is_zero() {
                        continue;
                    }
                    let q = IntPoly::new(vec![c.clone(), b, BigInt::one()]);
                    if let Some(_quot) = r.div_exact(&q) {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&IntMatrix::identity(2)), IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(charpoly(&IntMatrix::zeros(3, 3)), IntPoly::from_i64(&[0, 0, 0, 1]));
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(charpoly(&m), IntPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn factor_examples() {
        let p = IntPoly::from_i64(&[0, 0, -3, 0, 1]);
        let f = factor_linear_quadratic(&p);
        assert_eq!(f.root_list(), vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(f.quadratics, vec![IntPoly::from_i64(&[-3, 0, 1])]);
        assert!(f.is_complete());

        let f = factor_linear_quadratic(&IntPoly::from_i64(&[-1, 1]));
        assert_eq!(f.root_list(), vec![BigInt::one()]);
        assert!(f.quadratics.is_empty());
        assert!(f.is_complete());
    }

    #[test]
    fn product_of_two_quadratics() {
        let a = IntPoly::from_i64(&[-1, -1, 1]);
        let b = IntPoly::from_i64(&[-3, 0, 1]);
        let f = factor_linear_quadratic(&a.mul(&b));
        assert!(f.roots.is_empty());
        assert_eq!(f.quadratics.len(), 2);
        assert!(f.is_complete());
    }

    #[test]
    fn irreducible_cubic_is_left_alone() {
        let p = IntPoly::from_i64(&[-1, -2, 1, 1]);
        let f = factor_linear_quadratic(&p);
        assert!(f.roots.is_empty() && f.quadratics.is_empty());
        assert_eq!(f.residual, p);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[0, 0, -3, 0, 1]).to_string(), "x^4 - 3x^2");
        assert_eq!(IntPoly::from_i64(&[1, -2, 1]).to_string(), "x^2 - 2x + 1");
    }
}
