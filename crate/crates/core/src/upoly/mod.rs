//! Dense univariate polynomials over ℚ or F_p, plus the machinery that
//! decides whether a monic polynomial has the factorization pattern required
//! of minimal polynomials of X-formable matrices.

mod fpfactor;
mod property;
mod roots;
mod squarefree;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Scalar};

pub use fpfactor::fp_factor;
pub use property::{verifies_property_p, PropertyPReport, View, Violation};
pub use roots::{
    aberth_roots, quadratic_split, rational_roots, sturm_count, sturm_count_in, QuadraticSplit,
    SplitFailure,
};
pub use squarefree::{fp_squarefree, squarefree, yun_squarefree, SquarefreeDecomposition};

/// Coefficients in ascending degree. The zero polynomial has no coefficients,
/// and otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zeros. Panics if a coefficient
    /// lives in a different field.
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient outside {field}");
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Self::new(field, vec![c])
    }

    /// X
    pub fn x(field: Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// X − a
    pub fn linear(root: &Scalar) -> Self {
        let field = root.field();
        Self::new(field, vec![-root, field.one()])
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Self::new(
            Field::Rational,
            coeffs.into_iter().map(Scalar::Rat).collect(),
        )
    }

    /// Parses coefficient strings in ascending degree.
    pub fn parse(field: Field, coeffs: &[impl AsRef<str>]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                field.parse_scalar(s.as_ref()).map_err(|e| match e {
                    Error::Parse { detail, .. } => Error::parse(format!("coefficient {i}"), detail),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, parsed))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        Self::new(self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Rational evaluation; panics outside ℚ.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + c.as_rational().expect("rational polynomial")
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// p(X + shift)
    pub fn shift(&self, shift: &Scalar) -> Self {
        let xs = Self::new(self.field, vec![shift.clone(), self.field.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, c| {
                &(&acc * &xs) + &Self::constant(c.clone())
            })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            })
        }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[d].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let g = self.gcd(other)?;
        let q = self.exact_div(&g).expect("gcd divides");
        Ok((&q * other).monic())
    }

    /// Scales a rational polynomial to coprime integer coefficients with a
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let rats: Vec<&Rational> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().expect("rational polynomial"))
            .collect();
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() {
            for c in &mut ints {
                *c /= &content;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        ints
    }

    /// Discriminant b² − 4c of a monic quadratic X² + bX + c.
    pub fn quadratic_discriminant(&self) -> Option<Scalar> {
        if self.degree() != Some(2) || !self.is_monic() {
            return None;
        }
        let b = &self.coeffs[1];
        let c = &self.coeffs[0];
        Some(&(b * b) - &(&self.field.from_i64(4) * c))
    }

    /// Largest coefficient in absolute value (ℚ only).
    pub fn inf_norm(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| c.abs().expect("rational polynomial"))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficients rendered as exact strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || mag != "1";
            if show_coeff {
                f.write_str(&mag)?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

fn combine(a: &Polynomial, b: &Polynomial, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Polynomial {
    assert_eq!(a.field, b.field, "field mismatch");
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| op(&a.coeff(i), &b.coeff(i))).collect();
    Polynomial::new(a.field, coeffs)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(self.field, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Product of a list of polynomials (1 for an empty list).
pub fn product<'a>(field: Field, polys: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    polys
        .into_iter()
        .fold(Polynomial::one(field), |acc, p| &acc * p)
}

/// Euclidean division, reporting mixed fields and zero divisors.
pub fn poly_divrem(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    a.div_rem(b)
}

/// Monic gcd of two polynomials, not both zero.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.gcd(b)
}
