// SPDX-License-Identifier: MIT OR Apache-2.0

//! Integer polynomials and their factorization into linear and quadratic
//! factors over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{squarefree_decompose, QuadraticNumber, Rational};

/// Integer polynomial, coefficients stored lowest degree first, no trailing
/// zeros (the zero polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Divides a monic polynomial by `(x − root)`; `None` if `root` is not a root.
    fn deflate(&self, root: &BigInt) -> Option<IntPoly> {
        let n = self.degree();
        let mut quotient = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            carry = &self.coeffs[k + 1] + carry * root;
            quotient[k] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry * root;
        remainder.is_zero().then(|| IntPoly::new(quotient))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// An irreducible factor over the rationals of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `x − root`
    Linear(BigInt),
    /// `x² + b·x + c` with no rational root.
    Quadratic { b: BigInt, c: BigInt },
}

impl Factor {
    /// The squarefree part of `b² − 4c`, for quadratic factors.
    pub fn field_disc(&self) -> Option<i64> {
        match self {
            Factor::Linear(_) => None,
            Factor::Quadratic { b, c } => {
                let delta = (b * b - BigInt::from(4) * c).to_i64()?;
                Some(squarefree_decompose(delta).1)
            }
        }
    }

    /// Roots in `Q(√D)` where `D` is the squarefree discriminant of the
    /// factor (or `rational_disc` for linear factors).
    pub fn roots(&self, rational_disc: i64) -> Result<Vec<QuadraticNumber>> {
        match self {
            Factor::Linear(r) => Ok(vec![QuadraticNumber::from_rational(
                Rational::from_integer(r.clone()),
                rational_disc,
            )]),
            Factor::Quadratic { b, c } => {
                let delta = (b * b - BigInt::from(4) * c)
                    .to_i64()
                    .ok_or_else(|| Error::Unsupported("discriminant exceeds i64".into()))?;
                let (s, disc) = squarefree_decompose(delta);
                let real = Rational::new(-b.clone(), BigInt::from(2));
                let imag = Rational::new(BigInt::from(s), BigInt::from(2));
                Ok(vec![
                    QuadraticNumber::new(real.clone(), imag.clone(), disc),
                    QuadraticNumber::new(real, -imag, disc),
                ])
            }
        }
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("constant term {n} too large to factor")))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Ok(out
        .into_iter()
        .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
        .collect())
}

fn integer_root(p: &IntPoly) -> Result<Option<BigInt>> {
    let c0 = &p.coeffs[0];
    if c0.is_zero() {
        return Ok(Some(BigInt::zero()));
    }
    Ok(divisors(c0)?.into_iter().find(|d| p.eval(d).is_zero()))
}

/// Splits a monic quartic with no rational root into two monic integer
/// quadratics, if possible (Gauss's lemma makes integer splitting enough).
fn split_quartic(p: &IntPoly) -> Result<Option<(Factor, Factor)>> {
    let [a0, a1, a2, a3, _] = [
        &p.coeffs[0],
        &p.coeffs[1],
        &p.coeffs[2],
        &p.coeffs[3],
        &p.coeffs[4],
    ];
    let two = BigInt::from(2);
    let quad = |b: BigInt, c: BigInt| Factor::Quadratic { b, c };
    for q in divisors(a0)? {
        let s = a0 / &q;
        let candidates: Vec<(BigInt, BigInt)> = if s != q {
            let num = a1 - &q * a3;
            let den = &s - &q;
            if !(&num % &den).is_zero() {
                continue;
            }
            let p1 = num / den;
            let r1 = a3 - &p1;
            vec![(p1, r1)]
        } else {
            if *a1 != &q * a3 {
                continue;
            }
            let disc = a3 * a3 - BigInt::from(4) * (a2 - &two * &q);
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc || !(a3 + &root).is_even() {
                continue;
            }
            let p1 = (a3 + &root) / &two;
            let r1 = a3 - &p1;
            vec![(p1, r1)]
        };
        for (p1, r1) in candidates {
            if &q + &s + &p1 * &r1 == *a2 && &p1 * &s + &q * &r1 == *a1 {
                return Ok(Some((quad(p1, q.clone()), quad(r1, s.clone()))));
            }
        }
    }
    Ok(None)
}

/// Factors a monic integer polynomial into rational linear factors and
/// irreducible quadratics. Fails on any irreducible factor of degree ≥ 3.
pub fn factor_rational(p: &IntPoly) -> Result<Vec<Factor>> {
    if !p.is_monic() {
        return Err(Error::Unsupported(format!("{p} is not monic")));
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    while rest.degree() > 0 {
        match integer_root(&rest)? {
            Some(r) => {
                rest = rest.deflate(&r).expect("root found by evaluation");
                factors.push(Factor::Linear(r));
            }
            None => break,
        }
    }
    match rest.degree() {
        0 => {}
        2 => factors.push(Factor::Quadratic {
            b: rest.coeffs[1].clone(),
            c: rest.coeffs[0].clone(),
        }),
        4 => match split_quartic(&rest)? {
            Some((f, g)) => factors.extend([f, g]),
            None => {
                return Err(Error::Unsupported(format!(
                    "irreducible quartic factor {rest}"
                )))
            }
        },
        d => {
            return Err(Error::Unsupported(format!(
                "irreducible factor {rest} of degree {d}"
            )))
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(factors: &[Factor]) -> IntPoly {
        factors.iter().fold(IntPoly::from_i64(&[1]), |acc, f| {
            let g = match f {
                Factor::Linear(r) => IntPoly::new(vec![-r.clone(), BigInt::one()]),
                Factor::Quadratic { b, c } => IntPoly::new(vec![c.clone(), b.clone(), BigInt::one()]),
            };
            acc.mul(&g)
        })
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-9, -6, 0, -2, 1]).to_string(), "x^4 - 2x^3 - 6x - 9");
        assert_eq!(IntPoly::from_i64(&[1, -2, 1]).to_string(), "x^2 - 2x + 1");
    }

    #[test]
    fn factors_linear_and_quadratic() {
        // (x − 3)(x + 1)(x² + 3)
        let p = IntPoly::from_i64(&[-9, -6, 0, -2, 1]);
        let f = factor_rational(&p).unwrap();
        assert_eq!(expand(&f), p);
        assert!(f.contains(&Factor::Linear(BigInt::from(3))));
        assert!(f.contains(&Factor::Linear(BigInt::from(-1))));
        assert!(f.contains(&Factor::Quadratic {
            b: BigInt::zero(),
            c: BigInt::from(3)
        }));
    }

    #[test]
    fn splits_quartic_into_two_quadratics() {
        // (x² + 3)(x² − 5) and (x² + x + 2)(x² + x + 2)
        for p in [
            IntPoly::from_i64(&[3, 0, 1]).mul(&IntPoly::from_i64(&[-5, 0, 1])),
            IntPoly::from_i64(&[2, 1, 1]).mul(&IntPoly::from_i64(&[2, 1, 1])),
            IntPoly::from_i64(&[7, 3, 1]).mul(&IntPoly::from_i64(&[2, -1, 1])),
        ] {
            let f = factor_rational(&p).unwrap();
            assert_eq!(f.len(), 2);
            assert_eq!(expand(&f), p);
        }
    }

    #[test]
    fn irreducible_cubic_is_unsupported() {
        // (x − 1)(x³ − 2)
        let p = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-2, 0, 0, 1]));
        assert!(matches!(factor_rational(&p), Err(Error::Unsupported(_))));
        // x⁴ − 2 is irreducible over Q
        assert!(matches!(
            factor_rational(&IntPoly::from_i64(&[-2, 0, 0, 0, 1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn quadratic_roots_use_squarefree_disc() {
        // x² + x + 2: roots (−1 ± √−7)/2
        let f = Factor::Quadratic {
            b: BigInt::one(),
            c: BigInt::from(2),
        };
        assert_eq!(f.field_disc(), Some(-7));
        let roots = f.roots(-1).unwrap();
        assert_eq!(roots[0].disc(), -7);
        for r in roots {
            let val = &(&r * &r) + &r;
            assert_eq!(val, QuadraticNumber::from_int(-2, -7));
        }
        // x² + 12: ±2√−3
        let g = Factor::Quadratic {
            b: BigInt::zero(),
            c: BigInt::from(12),
        };
        assert_eq!(g.roots(-1).unwrap()[0], QuadraticNumber::new(
            Rational::zero(),
            Rational::from_integer(BigInt::from(2)),
            -3
        ));
    }
}
