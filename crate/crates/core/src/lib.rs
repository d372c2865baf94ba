//! Exact calculus of Pascal-type infinite matrices.
//!
//! The crate builds the lower and upper Pascal matrices `P`, `P^T`, the sign
//! diagonal `D`, Jordan blocks and their inverses as lazy exact operators;
//! verifies the involutions `(PD)^2 = (P^T D)^2 = I`, the similarity of both
//! operators to direct sums of 2x2 blocks, and their four eigenbases; and
//! generates and classifies invariant and inverse-invariant sequences of the
//! first kind (eigenvectors of `PD`) and of the second kind (eigenvectors of
//! `P^T D`).
//!
//! All arithmetic is exact: rationals and elements of `Q(sqrt 5)`.

pub mod arith;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod oeis;
pub mod operators;
pub mod parse;
pub mod sequences;
pub mod transforms;
pub mod verify;

pub use arith::{binomial, QuadExt, Rational, Scalar};
pub use error::{Error, Result};
pub use operators::{DenseMat, TriOp};
pub use sequences::{InvarianceReport, Kind, Seq, Sign, Summation, Verdict};
