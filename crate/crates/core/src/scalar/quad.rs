use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{exact_sqrt, isqrt, squarefree_part, Rational};

/// Real quadratic number `p + q·√D`.
///
/// `D` is squarefree and greater than one whenever `q != 0`; rationals carry
/// `q = 0` and `D = 1`, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: BigInt,
}

impl QuadExt {
    /// Builds `p + q·√d` for any `d >= 0`, extracting square factors of `d`.
    pub fn new(p: Rational, q: Rational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if q.is_zero() || d.is_zero() {
            return Self::from_rational(p);
        }
        let (c, sf) = squarefree_part(&d);
        let q = q * Rational::from_integer(c);
        if sf.is_one() {
            Self::from_rational(p + q)
        } else {
            QuadExt { p, q, d: sf }
        }
    }

    pub fn from_rational(p: Rational) -> Self {
        QuadExt { p, q: Rational::zero(), d: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√n` for an integer `n >= 0`.
    pub fn sqrt_int(n: &BigInt) -> Self {
        Self::new(Rational::zero(), Rational::one(), n.clone())
    }

    /// Real roots of `x² + b·x + c`, larger first, or `None` if complex.
    pub fn quadratic_roots(b: &BigInt, c: &BigInt) -> Option<(QuadExt, QuadExt)> {
        let disc: BigInt = b * b - BigInt::from(4) * c;
        if disc.is_negative() {
            return None;
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mid = Rational::from_integer(-b) * &half;
        let s = QuadExt::sqrt_int(&disc) * QuadExt::from_rational(half);
        let mid = QuadExt::from_rational(mid);
        Some((&mid + &s, &mid - &s))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Squarefree radicand; `1` for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True when the radicands agree or one side is rational.
    pub fn compatible(&self, other: &QuadExt) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn join(&self, other: &QuadExt) -> BigInt {
        if self.is_rational() {
            other.d.clone()
        } else if other.is_rational() || self.d == other.d {
            self.d.clone()
        } else {
            panic!("mixed radicands √{} and √{}", self.d, other.d)
        }
    }

    fn raw(p: Rational, q: Rational, d: BigInt) -> Self {
        if q.is_zero() {
            Self::from_rational(p)
        } else {
            QuadExt { p, q, d }
        }
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.p.clone(), -self.q.clone(), self.d.clone())
    }

    /// `x · conj(x)`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(self.d.clone())
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> Rational {
        &self.p + &self.p
    }

    /// Minimal polynomial over ℚ has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        if self.is_rational() {
            self.p.is_integer()
        } else {
            self.trace().is_integer() && self.norm().is_integer()
        }
    }

    pub fn signum(&self) -> i32 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * Rational::from_integer(self.d.clone());
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero");
        let c = self.conj();
        Self::raw(c.p / &n, c.q / &n, c.d)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadExt::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        p + q * d.sqrt()
    }

    /// Integers `(p, q, D, r)` with value `(p + q√D)/r`, `r > 0` minimal.
    pub fn integer_form(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let r = self.p.denom().lcm(self.q.denom());
        let rr = Rational::from_integer(r.clone());
        let p = (&self.p * &rr).to_integer();
        let q = (&self.q * &rr).to_integer();
        (p, q, self.d.clone(), r)
    }

    pub fn from_integer_form(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Option<Self> {
        if r.is_zero() || d.is_negative() {
            return None;
        }
        Some(Self::new(Rational::new(p, r.clone()), Rational::new(q, r), d))
    }

    /// Exact comparison, including numbers from different quadratic fields.
    pub fn cmp_real(&self, other: &QuadExt) -> Ordering {
        if self.compatible(other) {
            return (self - other).signum().cmp(&0);
        }
        // Distinct radicands: the numbers differ, so refining rational
        // enclosures of both eventually separates them.
        let mut bits = 32u32;
        loop {
            let (a_lo, a_hi) = self.enclosure(bits);
            let (b_lo, b_hi) = other.enclosure(bits);
            if a_hi < b_lo {
                return Ordering::Less;
            }
            if b_hi < a_lo {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// Rational interval containing the value, of width `O(|q| 2^-bits)`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.p.clone(), self.p.clone());
        }
        let scale = BigInt::one() << (2 * bits as usize);
        let s = isqrt(&(&self.d * &scale));
        let den = BigInt::one() << bits as usize;
        let lo = Rational::new(s.clone(), den.clone());
        let hi = if exact_sqrt(&(&self.d * &scale)).is_some() {
            lo.clone()
        } else {
            Rational::new(s + 1, den)
        };
        let (a, b) = if self.q.is_positive() {
            (&self.q * &lo, &self.q * &hi)
        } else {
            (&self.q * &hi, &self.q * &lo)
        };
        (&self.p + a, &self.p + b)
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_real(other)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        let d = self.join(o);
        QuadExt::raw(&self.p + &o.p, &self.q + &o.q, d)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        let d = self.join(o);
        QuadExt::raw(&self.p - &o.p, &self.q - &o.q, d)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let d = self.join(o);
        let dr = Rational::from_integer(d.clone());
        let p = &self.p * &o.p + &self.q * &o.q * dr;
        let q = &self.p * &o.q + &self.q * &o.p;
        QuadExt::raw(p, q, d)
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, o: &QuadExt) -> QuadExt {
        self * &o.inverse()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(-self.p.clone(), -self.q.clone(), self.d.clone())
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &QuadExt) -> QuadExt { (&self).$m(o) }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, d, r) = self.integer_form();
        if q.is_zero() {
            return if r.is_one() { write!(f, "{p}") } else { write!(f, "{p}/{r}") };
        }
        let rad = if q.is_one() {
            format!("√{d}")
        } else if q == -BigInt::one() {
            format!("-√{d}")
        } else {
            format!("{q}√{d}")
        };
        let body = if p.is_zero() {
            rad
        } else if q.is_negative() {
            format!("{p} - {}", rad.trim_start_matches('-'))
        } else {
            format!("{p} + {rad}")
        };
        if r.is_one() {
            write!(f, "{body}")
        } else if p.is_zero() {
            write!(f, "{body}/{r}")
        } else {
            write!(f, "({body})/{r}")
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadForm {
    p: crate::doc::JsonInt,
    q: crate::doc::JsonInt,
    #[serde(rename = "D")]
    d: crate::doc::JsonInt,
    r: crate::doc::JsonInt,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (p, q, d, r) = self.integer_form();
        QuadForm { p: p.into(), q: q.into(), d: d.into(), r: r.into() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let f = QuadForm::deserialize(de)?;
        QuadExt::from_integer_form(f.p.0, f.q.0, f.d.0, f.r.0)
            .ok_or_else(|| serde::de::Error::custom("invalid quadratic number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn q(p: Rational, qq: Rational, d: i64) -> QuadExt {
        QuadExt::new(p, qq, BigInt::from(d))
    }

    #[test]
    fn algebraic_integer_examples() {
        assert!(q(ratio(1, 2), ratio(1, 2), 5).is_algebraic_integer());
        assert!(!q(ratio(1, 3), ratio(1, 3), 5).is_algebraic_integer());
        assert!(QuadExt::from_int(7).is_algebraic_integer());
        assert!(!QuadExt::from_rational(ratio(7, 2)).is_algebraic_integer());
    }

    #[test]
    fn conjugates() {
        assert_eq!(q(rat(3), rat(2), 2).conj(), q(rat(3), rat(-2), 2));
        assert_eq!(QuadExt::from_int(5).conj(), QuadExt::from_int(5));
        // (κ+√(κ²+4a))/2 with κ=a=1 has norm (κ²-(κ²+4a))/4 = -1.
        let x = q(ratio(1, 2), ratio(1, 2), 5);
        assert_eq!(&x * &x.conj(), QuadExt::from_int(-1));
        assert_eq!(x.norm(), rat(-1));
    }

    #[test]
    fn radicand_normalization() {
        let a = QuadExt::sqrt_int(&BigInt::from(12));
        assert_eq!(a, q(rat(0), rat(2), 3));
        assert_eq!(QuadExt::sqrt_int(&BigInt::from(49)), QuadExt::from_int(7));
        assert_eq!(a.to_string(), "2√3");
        assert_eq!(q(ratio(1, 2), ratio(1, 2), 5).to_string(), "(1 + √5)/2");
        assert_eq!(q(ratio(5, 2), ratio(-1, 2), 5).to_string(), "(5 - √5)/2");
    }

    #[test]
    fn signs_and_order() {
        let phi = q(ratio(1, 2), ratio(1, 2), 5);
        assert_eq!((&phi - &QuadExt::from_int(2)).signum(), -1);
        assert_eq!(q(rat(3), rat(-1), 8).signum(), 1);
        assert_eq!(q(rat(2), rat(-1), 5).signum(), -1);
        let s2 = QuadExt::sqrt_int(&BigInt::from(2));
        let s3 = QuadExt::sqrt_int(&BigInt::from(3));
        assert!(s2 < s3);
        assert!(phi > s2);
    }

    #[test]
    fn inverse_and_division() {
        let x = q(rat(3), rat(2), 2);
        assert_eq!(&x * &x.inverse(), QuadExt::one());
        assert_eq!(&x / &x, QuadExt::one());
    }

    #[test]
    fn quadratic_roots_of_golden_polynomial() {
        let (r1, r2) = QuadExt::quadratic_roots(&BigInt::from(-1), &BigInt::from(-1)).unwrap();
        assert_eq!(r1, q(ratio(1, 2), ratio(1, 2), 5));
        assert_eq!(r2, q(ratio(1, 2), ratio(-1, 2), 5));
        assert!(QuadExt::quadratic_roots(&BigInt::from(1), &BigInt::from(1)).is_none());
    }

    #[test]
    fn serde_integer_form() {
        let x = q(ratio(1, 2), ratio(1, 2), 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":1,"q":1,"D":5,"r":2}"#);
        let back: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
