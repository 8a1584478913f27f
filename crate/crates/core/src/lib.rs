// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact construction and certification of non-symmetric association
//! schemes.
//!
//! Starting from doubly regular tournaments (non-symmetric class-2 schemes)
//! the crate builds the extended double cover (a class-3 scheme on
//! `2(m+1)` points), Pasechnik's doubling (class 2 on `2m+1` points), the
//! symmetric Taylor analogue, the block form of the extended double cover
//! of a doubling, and the bordered skew-Hadamard matrix. Every object is
//! certified by exact computation: all adjacency products, the
//! intersection numbers, the eigenmatrices and the primitive idempotents.
//!
//! Arithmetic is exact throughout (`BigInt`, `BigRational`, and a quadratic
//! extension `Q(√D)`); there is no floating point.
//!
//! The `parallel` feature (on by default) runs the counting and product
//! kernels on the rayon pool; see [`exec::Parallelism`].

pub mod construct;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod linalg;
pub mod scheme;
pub mod sio;
pub mod spectra;

pub use error::{Error, Result};
pub use exactnum::{QuadraticNumber, Rational};
pub use linalg::{IntMatrix, QuadMatrix};
pub use scheme::{IntersectionTensor, RelationMatrix, Scheme};
pub use spectra::EigenData;
