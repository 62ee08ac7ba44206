use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{squarefree_part, QuadExt, Rational};

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // xⁿ − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = div_monic(&num, &phi_d);
        }
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(n, out.clone());
    out
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Element of ℚ(ζ_n) in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    /// Reduces an arbitrary polynomial in ζ_n modulo Φ_n.
    pub fn from_poly(order: u32, poly: &[Rational]) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let mut c: Vec<Rational> = poly.to_vec();
        if c.len() < deg {
            c.resize(deg, Rational::zero());
        }
        for i in (deg..c.len()).rev() {
            let lead = c[i].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate() {
                let t = &lead * Rational::from_integer(pj.clone());
                c[i - deg + j] -= t;
            }
        }
        c.truncate(deg);
        CycNumber { order, coeffs: c }
    }

    /// Accepts a coefficient vector of exact length `φ(order)`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Option<Self> {
        if order == 0 || coeffs.len() != euler_phi(order) {
            return None;
        }
        Some(CycNumber { order, coeffs })
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNumber { order: 1, coeffs: vec![r] }
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

    /// `ζ_n^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, &poly)
    }

    /// Embeds `p + q√D` via quadratic Gauss sums.
    pub fn from_quad(x: &QuadExt) -> Self {
        let p = CycNumber::from_rational(x.p().clone());
        if x.is_rational() {
            return p;
        }
        let d = x.radicand().to_u64().expect("radicand too large for cyclotomic embedding");
        let s = sqrt_in_cyclotomic(d);
        p + s.scale(x.q())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Same number written over ℚ(ζ_m) for a multiple `m` of the order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(m, &poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Galois automorphism ζ ↦ ζ^k for `k` coprime to the order.
    pub fn galois(&self, k: u32) -> Self {
        let n = self.order as usize;
        assert!((k as usize).gcd(&n) == 1, "Galois exponent must be a unit");
        let mut poly = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(i * k as usize) % n] += c;
        }
        Self::from_poly(self.order, &poly)
    }

    /// Complex conjugate, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let mut prod = CycNumber::one().lift(self.order);
        for k in 2..self.order.max(2) {
            if k.gcd(&self.order) == 1 {
                prod = &prod * &self.galois(k);
            }
        }
        let norm = (&prod * self).as_rational().expect("field norm must be rational");
        prod.scale(&(Rational::one() / norm))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNumber::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether this is a root of unity lying in ℚ(ζ_order).
    pub fn is_root_of_unity(&self) -> bool {
        let m = if self.order % 2 == 0 { self.order } else { 2 * self.order };
        !self.is_zero() && self.pow(m) == CycNumber::one()
    }

    /// Complex value under ζ = e^{2πi/n}, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

/// `√d` inside ℚ(ζ_m) for squarefree-reducible `d >= 1`.
fn sqrt_in_cyclotomic(d: u64) -> CycNumber {
    let (c, sf) = squarefree_part(&BigInt::from(d));
    let mut acc = CycNumber::from_rational(Rational::from_integer(c));
    let mut rest = sf.to_u64().unwrap();
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            rest /= p;
            acc = &acc * &sqrt_prime(p);
        }
        p += 1;
    }
    acc
}

fn sqrt_prime(p: u64) -> CycNumber {
    if p == 2 {
        return CycNumber::root_of_unity(8, 1) + CycNumber::root_of_unity(8, -1);
    }
    let pu = p as u32;
    let mut poly = vec![Rational::zero(); p as usize];
    for k in 1..p {
        let leg = legendre(k, p);
        poly[k as usize] = Rational::from_integer(BigInt::from(leg));
    }
    let g = CycNumber::from_poly(pu, &poly);
    if p % 4 == 1 {
        g
    } else {
        // g² = −p here and g = i√p.
        -(CycNumber::root_of_unity(4, 1) * g)
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CycNumber::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, o: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::common(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNumber { order: a.order, coeffs }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, o: &CycNumber) -> CycNumber {
        self + &(-o)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, o: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::common(self, o);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        CycNumber::from_poly(a.order, &poly)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: CycNumber) -> CycNumber { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: &CycNumber) -> CycNumber { (&self).$m(o) }
        }
        impl<'a> $tr<CycNumber> for &'a CycNumber {
            type Output = CycNumber;
            fn $m(self, o: CycNumber) -> CycNumber { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", super::format_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = super::format_rational(&c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let z = format!("ζ{}", self.order);
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    let pw = if i == 1 { z } else { format!("{z}^{i}") };
                    if mag == "1" {
                        write!(f, "{pw}")?
                    } else {
                        write!(f, "{mag}·{pw}")?
                    }
                }
            }
        }
        Ok(())
    }
}


#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CycDoc {
    order: u32,
    #[serde(with = "crate::doc::rational_vec")]
    coeffs: Vec<Rational>,
}

impl serde::Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycDoc { order: self.order, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let d = CycDoc::deserialize(de)?;
        CycNumber::from_coeffs(d.order, d.coeffs)
            .ok_or_else(|| serde::de::Error::custom(format!("coefficient count must equal φ({})", d.order)))
    }
}
