// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::exec::{map_range, Parallelism};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Products take an `i128` fast path whenever every entry fits in `i64` and
/// no accumulator overflows, and fall back to `BigInt` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(BigInt::from(f(r, c)));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c])
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |r, c| i64::from(r == c))
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::one(); rows * cols],
        }
    }

    /// Assembles a block matrix. Every block in a block-row must have the
    /// same height and every block in a block-column the same width.
    pub fn from_blocks(blocks: &[Vec<IntMatrix>]) -> Result<Self> {
        let block_cols = blocks.first().map_or(0, Vec::len);
        let heights: Vec<usize> = blocks
            .iter()
            .map(|row| row.first().map_or(0, |b| b.rows))
            .collect();
        let widths: Vec<usize> = blocks
            .first()
            .map(|row| row.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != block_cols {
                return Err(Error::DimensionMismatch {
                    op: "from_blocks",
                    left: (bi, row.len()),
                    right: (bi, block_cols),
                });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch {
                        op: "from_blocks",
                        left: (b.rows, b.cols),
                        right: (heights[bi], widths[bj]),
                    });
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.data[(r0 + r) * cols + c0 + c] = b.get(r, c).clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(IntMatrix { data, ..*self })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect();
        Ok(IntMatrix { data, ..*self })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            data: self.data.iter().map(|x| x * k).collect(),
            ..*self
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Parallelism::default())
    }

    pub fn mul_with(&self, other: &Self, mode: Parallelism) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if let (Some(lhs), Some(rhs)) = (self.to_i64(), other.to_i64()) {
            if let Some(out) = self.mul_small(&lhs, &rhs, other.cols, mode) {
                return Ok(out);
            }
        }
        Ok(self.mul_big(other, mode))
    }

    fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    fn mul_small(&self, lhs: &[i64], rhs: &[i64], cols: usize, mode: Parallelism) -> Option<Self> {
        let inner = self.cols;
        let rows: Vec<Option<Vec<i128>>> = map_range(self.rows, mode, |r| {
            let mut acc = vec![0i128; cols];
            for k in 0..inner {
                let a = lhs[r * inner + k];
                if a == 0 {
                    continue;
                }
                let rhs_row = &rhs[k * cols..(k + 1) * cols];
                for (slot, &b) in acc.iter_mut().zip(rhs_row) {
                    *slot = slot.checked_add(i128::from(a) * i128::from(b))?;
                }
            }
            Some(acc)
        });
        let mut data = Vec::with_capacity(self.rows * cols);
        for row in rows {
            data.extend(row?.into_iter().map(BigInt::from));
        }
        Some(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    fn mul_big(&self, other: &Self, mode: Parallelism) -> Self {
        let inner = self.cols;
        let cols = other.cols;
        let rows: Vec<Vec<BigInt>> = map_range(self.rows, mode, |r| {
            let mut acc = vec![BigInt::zero(); cols];
            for k in 0..inner {
                let a = &self.data[r * inner + k];
                if a.is_zero() {
                    continue;
                }
                for (slot, b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b;
                }
            }
            acc
        });
        IntMatrix {
            rows: self.rows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn trace(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Monic characteristic polynomial `det(xI − M)` by the
    /// Faddeev–LeVerrier recurrence, carried out over the integers (every
    /// division by `k` is exact).
    pub fn char_poly(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let identity = IntMatrix::identity(n);
        let mut m = IntMatrix::zeros(n, n);
        for k in 1..=n {
            m = self.try_mul(&m)?.try_add(&identity.scale(&coeffs[n - k + 1]))?;
            let t = self.try_mul(&m)?.trace()?;
            let k_big = BigInt::from(k);
            debug_assert!((&t % &k_big).is_zero(), "Faddeev–LeVerrier division is exact");
            coeffs[n - k] = -(t / k_big);
        }
        Ok(IntPoly::new(coeffs))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &IntPoly) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let identity = IntMatrix::identity(self.rows);
        let mut acc = IntMatrix::zeros(self.rows, self.rows);
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(self)?.try_add(&identity.scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn three_cycle() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])
    }

    #[test]
    fn identity_is_neutral() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 3], vec![4, 5, 6], vec![-7, 8, 9]]);
        let i3 = IntMatrix::identity(3);
        assert_eq!(i3.try_mul(&m).unwrap(), m);
        assert_eq!(m.try_mul(&i3).unwrap(), m);
    }

    #[test]
    fn ones_squared() {
        let j = IntMatrix::ones(3, 3);
        assert_eq!(j.try_mul(&j).unwrap(), j.scale_i64(3));
    }

    #[test]
    fn directed_three_cycle_squares_to_its_transpose() {
        let a1 = three_cycle();
        assert_eq!(a1.try_mul(&a1).unwrap(), a1.transpose());
    }

    #[test]
    fn dimension_errors() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch { .. })));
        assert!(a.try_add(&IntMatrix::zeros(3, 2)).is_err());
        assert!(matches!(a.trace(), Err(Error::NotSquare { .. })));
        assert!(matches!(a.char_poly(), Err(Error::NotSquare { .. })));
        assert!(IntMatrix::new(2, 2, vec![BigInt::zero(); 3]).is_err());
    }

    #[test]
    fn big_entries_take_the_bigint_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let m = IntMatrix::new(1, 1, vec![big.clone()]).unwrap();
        assert_eq!(m.try_mul(&m).unwrap().get(0, 0), &(&big * &big));
        // i64 entries whose products overflow i128 accumulation
        let near = IntMatrix::from_fn(2, 2, |_, _| i64::MAX);
        let sq = near.try_mul(&near).unwrap();
        let expect = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 2;
        assert_eq!(sq.get(1, 0), &expect);
    }

    #[test]
    fn block_assembly() {
        let i = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2, 1);
        let one = IntMatrix::ones(1, 1);
        let m = IntMatrix::from_blocks(&[
            vec![i.clone(), z.clone()],
            vec![z.transpose(), one],
        ])
        .unwrap();
        assert_eq!(m, IntMatrix::identity(3));
        assert!(IntMatrix::from_blocks(&[vec![i.clone(), i.clone()], vec![z.clone(), z]]).is_err());
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = IntMatrix::from_fn(17, 13, |r, c| (r as i64 * 7 - c as i64 * 3) % 5);
        let b = IntMatrix::from_fn(13, 11, |r, c| (r as i64 + 2 * c as i64) % 4 - 1);
        assert_eq!(
            a.mul_with(&b, Parallelism::Sequential).unwrap(),
            a.mul_with(&b, Parallelism::Parallel).unwrap()
        );
    }

    fn square(max_n: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(-5i64..=5, n * n)
                .prop_map(move |v| IntMatrix::from_fn(n, n, |r, c| v[r * n + c]))
        })
    }

    fn square_pair() -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
        (1usize..=6).prop_flat_map(|n| {
            (
                prop::collection::vec(-5i64..=5, n * n),
                prop::collection::vec(-5i64..=5, n * n),
            )
                .prop_map(move |(x, y)| {
                    (
                        IntMatrix::from_fn(n, n, |r, c| x[r * n + c]),
                        IntMatrix::from_fn(n, n, |r, c| y[r * n + c]),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn transpose_reverses_products((m, n) in square_pair()) {
            let lhs = m.try_mul(&n).unwrap().transpose();
            let rhs = n.transpose().try_mul(&m.transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn trace_is_cyclic((m, n) in square_pair()) {
            prop_assert_eq!(
                m.try_mul(&n).unwrap().trace().unwrap(),
                n.try_mul(&m).unwrap().trace().unwrap()
            );
        }

        #[test]
        fn cayley_hamilton(m in square(8)) {
            let p = m.char_poly().unwrap();
            prop_assert_eq!(p.degree(), m.rows());
            prop_assert!(m.eval_poly(&p).unwrap().is_zero());
        }
    }
}
