// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense exact matrices over the integers and over `Q(√D)`, plus the
//! integer polynomials produced by characteristic-polynomial computation.

mod int_matrix;
pub mod poly;
mod quad_matrix;

pub use int_matrix::IntMatrix;
pub use poly::{factor_rational, Factor, IntPoly};
pub use quad_matrix::QuadMatrix;
