//! Exact scalars: arbitrary-precision rationals and the prime fields F_p for
//! odd p <= 97.
//!
//! Matrices and polynomials carry a [`Field`] tag and store [`Scalar`]s. The
//! arithmetic operators on `Scalar` panic when the two operands live in
//! different fields; containers check their tags before mixing entries, so a
//! panic there is a bug rather than bad input.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest supported prime modulus.
pub const MAX_PRIME: u32 = 97;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Fp(u32),
}

impl Field {
    pub fn fp(p: u32) -> Result<Field> {
        if p > 2 && p <= MAX_PRIME && is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(Rational::zero()),
            Field::Fp(p) => Scalar::Fp(Fp::new(0, p)),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, k: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(int(k)),
            Field::Fp(p) => Scalar::Fp(Fp::new(k, p)),
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Fp(p) => p,
        }
    }

    /// All elements of a finite field in increasing order; `None` for ℚ.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Fp(p) => Some((0..p as i64).map(|k| self.from_i64(k)).collect()),
        }
    }

    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Rational => parse_rational(s).map(Scalar::Rat),
            Field::Fp(p) => s
                .parse::<i64>()
                .map(|k| Scalar::Fp(Fp::new(k, p)))
                .map_err(|e| Error::parse("scalar", format!("{s:?}: {e}"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Fp(p) => write!(f, "fp({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Parses `"n"` or `"n/d"` into canonical form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |detail: String| Error::parse("scalar", detail);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| bad(format!("{s:?}: {e}")))?;
    let den = BigInt::from_str(den).map_err(|e| bad(format!("{s:?}: {e}")))?;
    if den.is_zero() {
        return Err(bad(format!("{s:?}: zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    /// Reduces `value` into `[0, p)`.
    pub fn new(value: i64, p: u32) -> Fp {
        Fp {
            value: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp::new(t0, self.p))
    }

    fn check(self, other: Fp) {
        assert_eq!(self.p, other.p, "mixed F_p moduli");
    }
}

/// Inverse of a nonzero element of F_p.
pub fn fp_inverse(a: Fp) -> Result<Fp> {
    a.inverse()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp(a) => Field::Fp(a.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(a) => a.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp(a) => a.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Fp(a) => a.inverse().map(Scalar::Fp),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Absolute value; only meaningful over ℚ.
    pub fn abs(&self) -> Option<Rational> {
        self.as_rational().map(|r| r.abs())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp(a) => write!(f, "{}", a.value),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<Fp> for Scalar {
    fn from(a: Fp) -> Self {
        Scalar::Fp(a)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $rat:expr, $fp:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat($rat(a, b)),
                    (Scalar::Fp(a), Scalar::Fp(b)) => {
                        a.check(*b);
                        Scalar::Fp($fp(*a, *b))
                    }
                    (a, b) => panic!("field mismatch: {} vs {}", a.field(), b.field()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(
    Add,
    add,
    |a: &Rational, b: &Rational| a + b,
    |a: Fp, b: Fp| Fp::new(a.value as i64 + b.value as i64, a.p)
);
scalar_binop!(
    Sub,
    sub,
    |a: &Rational, b: &Rational| a - b,
    |a: Fp, b: Fp| Fp::new(a.value as i64 - b.value as i64, a.p)
);
scalar_binop!(
    Mul,
    mul,
    |a: &Rational, b: &Rational| a * b,
    |a: Fp, b: Fp| Fp::new(a.value as i64 * b.value as i64, a.p)
);
scalar_binop!(
    Div,
    div,
    |a: &Rational, b: &Rational| {
        assert!(!b.is_zero(), "division by zero");
        a / b
    },
    |a: Fp, b: Fp| {
        let inv = b.inverse().expect("division by zero");
        Fp::new(a.value as i64 * inv.value as i64, a.p)
    }
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp(a) => Scalar::Fp(Fp::new(-(a.value as i64), a.p)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// Best rational approximation of `x` with denominator at most `bound`.
///
/// Walks the continued fraction of `x` and, once the next convergent would
/// exceed the bound, compares the last convergent against the largest
/// admissible semiconvergent. Ties go to the convergent.
pub fn best_approximation(x: &Rational, bound: &BigInt) -> Rational {
    assert!(bound.is_positive(), "denominator bound must be positive");
    if x.denom() <= bound {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > bound {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let r = &n - &a * &d;
        (n, d) = (d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (bound - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&conv - x).abs() <= (&semi - x).abs() {
        conv
    } else {
        semi
    }
}

/// Lifts a floating-point estimate to the closest rational with denominator
/// at most `denominator_bound`. Returns `None` for non-finite input or a zero
/// bound. Results are candidates only and must be verified exactly.
pub fn rational_reconstruct(x: f64, denominator_bound: u64) -> Option<Rational> {
    if !x.is_finite() || denominator_bound == 0 {
        return None;
    }
    let exact = Rational::from_float(x)?;
    Some(best_approximation(&exact, &BigInt::from(denominator_bound)))
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
