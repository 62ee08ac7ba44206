//! Exact scalars: rationals, real quadratic numbers, cyclotomic numbers,
//! integer polynomials and characteristic polynomials.

mod cyclo;
mod poly;
mod quad;

pub use cyclo::{cyclotomic_poly, euler_phi, CycNumber};
pub use poly::{charpoly, factor_linear_quadratic, Factorization, IntPoly};
pub use quad::QuadExt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Writes `n > 0` as `c² · D` with `D` squarefree; returns `(c, D)`.
pub fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_part needs a positive integer");
    if let Some(v) = n.to_u128() {
        let (c, d) = squarefree_u128(v);
        return (BigInt::from(c), BigInt::from(d));
    }
    let mut rest = n.clone();
    let mut c = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        c *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1;
    }
    (c, d * rest)
}

fn squarefree_u128(mut n: u128) -> (u128, u128) {
    let mut c = 1u128;
    let mut d = 1u128;
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        c *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (c, d * n)
}

/// Positive divisors of `n != 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(v) = n.to_u128() {
        let mut f = factor_u128(v);
        f.sort();
        let mut out = vec![1u128];
        for (p, e) in f {
            let len = out.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort();
        return out.into_iter().map(BigInt::from).collect();
    }
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}
