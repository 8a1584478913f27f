// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::exactnum::{common_denominator, QuadraticNumber, Rational};
use crate::exec::Parallelism;

/// Dense matrix over `Q(√disc)`. Every entry carries the matrix's disc.
/// Equality compares values, so `disc = -63` and `disc = -7` agree.
#[derive(Clone, Debug)]
pub struct QuadMatrix {
    rows: usize,
    cols: usize,
    disc: i64,
    data: Vec<QuadraticNumber>,
}

impl PartialEq for QuadMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.data == other.data
    }
}

impl Eq for QuadMatrix {}

impl QuadMatrix {
    pub fn new(rows: usize, cols: usize, disc: i64, data: Vec<QuadraticNumber>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        let data = data
            .iter()
            .map(|x| x.with_disc(disc))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadMatrix {
            rows,
            cols,
            disc,
            data,
        })
    }

    /// Panics on ragged rows or incompatible entries; intended for literals.
    pub fn from_rows(disc: i64, rows: Vec<Vec<QuadraticNumber>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        QuadMatrix::new(n, cols, disc, rows.into_iter().flatten().collect())
            .expect("entries compatible with disc")
    }

    pub fn from_int_matrix(m: &IntMatrix, disc: i64) -> Self {
        let data = m
            .entries()
            .iter()
            .map(|x| QuadraticNumber::from_rational(Rational::from_integer(x.clone()), disc))
            .collect();
        QuadMatrix {
            rows: m.rows(),
            cols: m.cols(),
            disc,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize, disc: i64) -> Self {
        QuadMatrix {
            rows,
            cols,
            disc,
            data: vec![QuadraticNumber::zero(disc); rows * cols],
        }
    }

    pub fn identity(n: usize, disc: i64) -> Self {
        let mut m = QuadMatrix::zeros(n, n, disc);
        for i in 0..n {
            m.data[i * n + i] = QuadraticNumber::one(disc);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn get(&self, r: usize, c: usize) -> &QuadraticNumber {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[QuadraticNumber] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[QuadraticNumber] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QuadraticNumber::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        QuadMatrix {
            rows: self.cols,
            cols: self.rows,
            disc: self.disc,
            data,
        }
    }

    /// Entry-wise conjugate.
    pub fn conj(&self) -> Self {
        QuadMatrix {
            data: self.data.iter().map(QuadraticNumber::conj).collect(),
            ..*self
        }
    }

    pub fn complex_conj(&self) -> Self {
        QuadMatrix {
            data: self.data.iter().map(QuadraticNumber::complex_conj).collect(),
            ..*self
        }
    }

    /// Re-expresses the matrix over a compatible disc.
    pub fn with_disc(&self, disc: i64) -> Result<Self> {
        QuadMatrix::new(self.rows, self.cols, disc, self.data.clone())
    }

    fn check_compatible(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        if self.disc != other.disc {
            return Err(Error::DiscMismatch {
                left: self.disc,
                right: other.disc,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(QuadMatrix { data, ..*self })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect();
        Ok(QuadMatrix { data, ..*self })
    }

    pub fn scale(&self, k: &QuadraticNumber) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.try_mul(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadMatrix { data, ..*self })
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        QuadMatrix {
            data: self.data.iter().map(|x| x.scale(k)).collect(),
            ..*self
        }
    }

    /// Writes `self = (A + ω·B) / L` with integer matrices `A`, `B` and a
    /// positive integer `L`.
    pub fn integer_parts(&self) -> (BigInt, IntMatrix, IntMatrix) {
        let denom = common_denominator(self.data.iter().flat_map(|x| [x.a(), x.b()]));
        let lift = |r: &Rational| r.numer() * (&denom / r.denom());
        let real = self.data.iter().map(|x| lift(x.a())).collect();
        let imag = self.data.iter().map(|x| lift(x.b())).collect();
        (
            denom,
            IntMatrix::new(self.rows, self.cols, real).expect("shape"),
            IntMatrix::new(self.rows, self.cols, imag).expect("shape"),
        )
    }

    fn from_integer_parts(denom: &BigInt, real: &IntMatrix, imag: &IntMatrix, disc: i64) -> Self {
        let data = real
            .entries()
            .iter()
            .zip(imag.entries())
            .map(|(a, b)| {
                QuadraticNumber::new(
                    Rational::new(a.clone(), denom.clone()),
                    Rational::new(b.clone(), denom.clone()),
                    disc,
                )
            })
            .collect();
        QuadMatrix {
            rows: real.rows(),
            cols: real.cols(),
            disc,
            data,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Parallelism::default())
    }

    /// `(A + ωB)(C + ωD) = (AC + D·BD) + ω(AD + BC)`, computed with four
    /// integer products after clearing denominators.
    pub fn mul_with(&self, other: &Self, mode: Parallelism) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if self.disc != other.disc {
            return Err(Error::DiscMismatch {
                left: self.disc,
                right: other.disc,
            });
        }
        let (l1, a, b) = self.integer_parts();
        let (l2, c, d) = other.integer_parts();
        let ac = a.mul_with(&c, mode)?;
        let bd = b.mul_with(&d, mode)?;
        let ad = a.mul_with(&d, mode)?;
        let bc = b.mul_with(&c, mode)?;
        let real = ac.try_add(&bd.scale_i64(self.disc))?;
        let imag = ad.try_add(&bc)?;
        Ok(QuadMatrix::from_integer_parts(&(l1 * l2), &real, &imag, self.disc))
    }

    pub fn trace(&self) -> Result<QuadraticNumber> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).fold(QuadraticNumber::zero(self.disc), |acc, i| {
            &acc + self.get(i, i)
        }))
    }

    /// Inverse by fraction-free (Bareiss) Gauss–Jordan elimination on
    /// `[M | I]`: every intermediate entry is a minor of the augmented
    /// matrix and each step divides exactly by the previous pivot.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let width = 2 * n;
        let disc = self.disc;
        let mut aug: Vec<Vec<QuadraticNumber>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        QuadraticNumber::one(disc)
                    } else {
                        QuadraticNumber::zero(disc)
                    }
                }));
                row
            })
            .collect();
        let mut prev = QuadraticNumber::one(disc);
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !aug[r][k].is_zero()).ok_or(Error::Singular)?;
            aug.swap(k, pivot_row);
            let pivot = aug[k][k].clone();
            // A zero divisor (disc a perfect square) can still show up as a pivot.
            let prev_inv = prev.inv()?;
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = aug[i][k].clone();
                for j in 0..width {
                    let v = &(&pivot * &aug[i][j]) - &(&factor * &aug[k][j]);
                    aug[i][j] = &v * &prev_inv;
                }
            }
            prev = pivot;
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in aug.iter().enumerate() {
            let d = row[r].inv()?;
            data.extend(row[n..].iter().map(|x| x * &d));
        }
        Ok(QuadMatrix {
            rows: n,
            cols: n,
            disc,
            data,
        })
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<QuadraticNumber>> {
        let disc = self.disc;
        let mut m: Vec<Vec<QuadraticNumber>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let Ok(inv) = m[rank][c].inv() else {
                continue;
            };
            for x in m[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in 0..self.cols {
                        let v = &m[r][j] - &(&f * &m[rank][j]);
                        m[r][j] = v;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QuadraticNumber::zero(disc); self.cols];
                v[f] = QuadraticNumber::one(disc);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[r][f];
                }
                v
            })
            .collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[QuadraticNumber]) -> Result<Vec<QuadraticNumber>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).try_fold(QuadraticNumber::zero(self.disc), |acc, (x, y)| {
                    acc.try_add(&x.try_mul(y)?)
                })
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// True if every entry has zero `ω`-part.
    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|x| x.b().is_zero())
    }

    pub fn real_part_is_zero(&self) -> bool {
        self.data.iter().all(|x| x.a().is_zero())
    }
}

impl fmt::Display for QuadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn qn(a: i64, b: i64, disc: i64) -> QuadraticNumber {
        QuadraticNumber::new(int(a), int(b), disc)
    }

    #[test]
    fn inverse_of_two_identity() {
        let two = QuadMatrix::from_int_matrix(&IntMatrix::identity(4).scale_i64(2), -3);
        let inv = two.inverse().unwrap();
        assert_eq!(inv, QuadMatrix::identity(4, -3).scale_rational(&rat(1, 2)));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = QuadMatrix::from_int_matrix(
            &IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 0, 0], vec![4, 5, 6]]),
            -7,
        );
        assert_eq!(m.inverse(), Err(Error::Singular));
        let dependent = QuadMatrix::from_int_matrix(
            &IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]),
            -7,
        );
        assert_eq!(dependent.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mul_matches_entrywise_definition() {
        let a = QuadMatrix::from_rows(
            -3,
            vec![vec![qn(1, 1, -3), qn(0, 2, -3)], vec![qn(-1, 0, -3), qn(2, -1, -3)]],
        );
        let b = a.conj().transpose();
        let fast = a.try_mul(&b).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = QuadraticNumber::zero(-3);
                for k in 0..2 {
                    acc = &acc + &(a.get(r, k) * b.get(k, c));
                }
                assert_eq!(fast.get(r, c), &acc);
            }
        }
    }

    #[test]
    fn disc_mismatch_between_matrices() {
        let a = QuadMatrix::identity(2, -3);
        let b = QuadMatrix::identity(2, -7);
        assert!(matches!(a.try_mul(&b), Err(Error::DiscMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(Error::DiscMismatch { .. })));
    }

    #[test]
    fn null_space_of_rank_deficient() {
        let m = QuadMatrix::from_int_matrix(
            &IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]),
            -1,
        );
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).unwrap().iter().all(QuadraticNumber::is_zero));
    }

    fn invertible() -> impl Strategy<Value = QuadMatrix> {
        (1usize..=4, prop::sample::select(vec![-3i64, -7, 5, -11])).prop_flat_map(|(n, d)| {
            prop::collection::vec((-4i64..=4, -3i64..=3, 1i64..=3), n * n).prop_map(move |v| {
                let data = v
                    .iter()
                    .map(|&(a, b, den)| QuadraticNumber::new(rat(a, den), rat(b, den), d))
                    .collect();
                QuadMatrix::new(n, n, d, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(m in invertible()) {
            if let Ok(inv) = m.inverse() {
                prop_assert!(m.try_mul(&inv).unwrap().is_identity());
                prop_assert!(inv.try_mul(&m).unwrap().is_identity());
            }
        }
    }
}
