//! Exact scalars over a prime field or the rationals, dense matrices and
//! univariate polynomials.
//!
//! Every value carries enough information to do arithmetic without a
//! context object: prime-field elements store their modulus, rationals are
//! reduced big-integer fractions.

mod matrix;
mod poly;

pub use matrix::{Matrix, Rref};
pub use poly::{Poly, Split};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse field name `{0}` (expected F<p> or Q)")]
    BadFieldName(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Fp(n.rem_euclid(p as i64) as u32, p),
            FieldSpec::Rational => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p as u64),
            FieldSpec::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p as u64,
            FieldSpec::Rational => 0,
        }
    }

    /// All field elements (prime fields only).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::Prime(p) => Some((0..p).map(|v| Scalar::Fp(v, p)).collect()),
            FieldSpec::Rational => None,
        }
    }

    /// A random element. Over the rationals small integers are drawn so that
    /// coefficient growth stays tame.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Fp(rng.gen_range(0..p), p),
            FieldSpec::Rational => self.from_i64(rng.gen_range(-5..=5)),
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let t = s.trim();
        let bad = || FieldError::BadScalar(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let n = BigInt::from_str(num).map_err(|_| bad())?;
        let d = match den {
            Some(b) => BigInt::from_str(b).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match *self {
            FieldSpec::Prime(p) => {
                let pm = BigInt::from(p);
                let nv = big_mod(&n, &pm);
                let dv = big_mod(&d, &pm);
                if dv == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Scalar::Fp(nv, p).mul_ref(&Scalar::Fp(dv, p).inv()))
            }
            FieldSpec::Rational => Ok(Scalar::Q(Box::new(BigRational::new(n, d)))),
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn big_mod(n: &BigInt, m: &BigInt) -> u32 {
    let r = ((n % m) + m) % m;
    u32::try_from(r).expect("residue below modulus")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rational") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix("GF"))
            .or_else(|| t.strip_prefix('f'))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| FieldError::BadFieldName(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Residue `v` modulo the prime `p`.
    Fp(u32, u32),
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp(_, p) => FieldSpec::Prime(*p),
            Scalar::Q(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(v, _) => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(v, _) => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => {
                Scalar::Fp(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a + &**b)),
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => {
                Scalar::Fp(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a - &**b)),
            _ => panic!("mixed fields"),
        }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => {
                Scalar::Fp(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a * &**b)),
            _ => panic!("mixed fields"),
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Fp(a, p) => Scalar::Fp(if *a == 0 { 0 } else { p - a }, *p),
            Scalar::Q(a) => Scalar::Q(Box::new(-(&**a))),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Fp(a, p) => {
                assert!(*a != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*a as u64, *p as u64 - 2, *p as u64) as u32, *p)
            }
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(Box::new(a.recip()))
            }
        }
    }

    pub fn div_ref(&self, o: &Scalar) -> Scalar {
        self.mul_ref(&o.inv())
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp(v, _) => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp(..) => None,
        }
    }

    /// Absolute size hint used to keep rational pivots small.
    pub fn bits(&self) -> u64 {
        match self {
            Scalar::Fp(..) => 0,
            Scalar::Q(q) => q.numer().abs().bits() + q.denom().bits(),
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v, _) => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.sub_ref(o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names_round_trip() {
        for s in ["F2", "F3", "F5", "Q"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("F2147483648".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn scalar_parse_and_print() {
        let q = FieldSpec::Rational;
        assert_eq!(q.parse_scalar("-7/2").unwrap().to_string(), "-7/2");
        assert_eq!(q.parse_scalar("6/3").unwrap().to_string(), "2");
        let f5 = FieldSpec::Prime(5);
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f5.parse_scalar("1/5").is_err());
    }

    #[test]
    fn inverse_times_self_is_one() {
        let f = FieldSpec::Prime(7);
        for v in 1..7 {
            let a = f.from_i64(v);
            assert!(a.mul_ref(&a.inv()).is_one());
        }
        let q = FieldSpec::Rational.parse_scalar("-3/4").unwrap();
        assert!(q.mul_ref(&q.inv()).is_one());
    }
}
