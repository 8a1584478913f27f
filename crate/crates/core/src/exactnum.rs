// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact scalars: big rationals and elements `a + b·ω` of a quadratic
//! extension `Q(ω)` with `ω² = D`.
//!
//! `D` travels with every value. Binary operations require matching `D`,
//! except that a value with `b = 0` is a plain rational and combines with
//! anything.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn checked_div(x: &Rational, y: &Rational) -> Result<Rational> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x / y)
}

/// Writes `d = s²·d'` with `d'` squarefree and `s ≥ 0`. A perfect square
/// (including 0) maps to `d' = 1`.
pub fn squarefree_decompose(d: i64) -> (i64, i64) {
    if d == 0 {
        return (0, 1);
    }
    let sign = d.signum();
    let mut rest = d.unsigned_abs();
    let mut square_root = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square_root *= p;
        }
        p += 1;
    }
    let reduced = sign * rest as i64;
    if reduced == 1 {
        // d was a positive perfect square
        (square_root as i64, 1)
    } else {
        (square_root as i64, reduced)
    }
}

/// `a + b·ω` with `ω² = disc`.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    disc: i64,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, disc: i64) -> Self {
        QuadraticNumber { a, b, disc }
    }

    pub fn from_rational(a: Rational, disc: i64) -> Self {
        QuadraticNumber::new(a, Rational::zero(), disc)
    }

    pub fn from_int(v: i64, disc: i64) -> Self {
        QuadraticNumber::from_rational(int(v), disc)
    }

    pub fn zero(disc: i64) -> Self {
        QuadraticNumber::from_int(0, disc)
    }

    pub fn one(disc: i64) -> Self {
        QuadraticNumber::from_int(1, disc)
    }

    /// The generator `ω` itself.
    pub fn omega(disc: i64) -> Self {
        QuadraticNumber::new(Rational::zero(), Rational::one(), disc)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.disc > 0 || self.b.is_zero()
    }

    /// The rational value, if `b = 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Same value carried under another disc. Only rational values move freely.
    pub fn with_disc(&self, disc: i64) -> Result<Self> {
        if self.disc == disc {
            return Ok(self.clone());
        }
        if self.b.is_zero() {
            return Ok(QuadraticNumber::from_rational(self.a.clone(), disc));
        }
        let (s, reduced) = squarefree_decompose(self.disc);
        let (t, target) = squarefree_decompose(disc);
        if reduced == target && t != 0 {
            // s·ω_reduced = b·(t·ω_target)/t
            let b = &self.b * int(s) / int(t);
            return Ok(QuadraticNumber::new(self.a.clone(), b, disc));
        }
        Err(Error::DiscMismatch {
            left: self.disc,
            right: disc,
        })
    }

    /// Value with the disc reduced to its squarefree part.
    pub fn canonical(&self) -> (Rational, Rational, i64) {
        let (s, reduced) = squarefree_decompose(self.disc);
        if reduced == 1 {
            return (&self.a + &self.b * int(s), Rational::zero(), 1);
        }
        (self.a.clone(), &self.b * int(s), reduced)
    }

    fn common_disc(&self, other: &Self) -> Result<i64> {
        if self.disc == other.disc || other.b.is_zero() {
            Ok(self.disc)
        } else if self.b.is_zero() {
            Ok(other.disc)
        } else {
            Err(Error::DiscMismatch {
                left: self.disc,
                right: other.disc,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        Ok(QuadraticNumber::new(
            &self.a + &other.a,
            &self.b + &other.b,
            disc,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        Ok(QuadraticNumber::new(
            &self.a - &other.a,
            &self.b - &other.b,
            disc,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * int(disc);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadraticNumber::new(a, b, disc))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticNumber::new(&self.a * r, &self.b * r, self.disc)
    }

    pub fn conj(&self) -> Self {
        QuadraticNumber::new(self.a.clone(), -&self.b, self.disc)
    }

    /// Complex conjugate: `conj` when `D < 0`, the identity when `D > 0`.
    pub fn complex_conj(&self) -> Self {
        if self.disc < 0 {
            self.conj()
        } else {
            self.clone()
        }
    }

    /// `a² − D·b²`, i.e. `x·conj(x)`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.disc)
    }

    pub fn inv(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(self.conj().scale(&norm.recip()))
    }

    /// Lexicographic order on `(a, b)`: `ω` is read as a positive imaginary
    /// unit regardless of the sign of `D`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a0, b0, _) = self.canonical();
        let (a1, b1, _) = other.canonical();
        a0.cmp(&a1).then_with(|| b0.cmp(&b1))
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a0, b0, d0) = self.canonical();
        let (a1, b1, d1) = other.canonical();
        a0 == a1 && b0 == b1 && (b0.is_zero() || d0 == d1)
    }
}

impl Eq for QuadraticNumber {}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√{}", self.disc);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·{}", self.b, root),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}·{}", self.a, sign, self.b.abs(), root)
            }
        }
    }
}

// Operator sugar for code that already knows the discs agree. Panics on
// mismatch; fallible callers use the `try_*` methods.
impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: Self) -> QuadraticNumber {
        self.try_add(rhs).expect("disc mismatch in +")
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> QuadraticNumber {
        self.try_sub(rhs).expect("disc mismatch in -")
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> QuadraticNumber {
        self.try_mul(rhs).expect("disc mismatch in *")
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-&self.a, -&self.b, self.disc)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
