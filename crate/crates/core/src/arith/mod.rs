//! Exact arithmetic: arbitrary-precision rationals, the real quadratic
//! fields Q(sqrt d), and the binomial coefficient with the zero convention
//! used by every matrix in the crate.

mod quad;
mod scalar;

pub use quad::QuadExt;
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// reduced).
pub type Rational = num_rational::BigRational;

/// Default discriminant: every closed form in the crate lives in Q(sqrt 5).
pub const DEFAULT_DISCRIMINANT: u32 = 5;

/// `C(i, j)`, equal to zero whenever `j < 0` or `i < j`.
///
/// Negative `i` also yields zero, which is what the index shifts in the
/// pipeline formulas rely on.
pub fn binomial(i: i64, j: i64) -> BigInt {
    if j < 0 || i < j {
        return BigInt::zero();
    }
    let k = j.min(i - j);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(i - t);
        acc /= BigInt::from(t + 1);
    }
    acc
}

/// `C(i, j)` lifted to a [`Scalar`].
pub fn binomial_scalar(i: i64, j: i64) -> Scalar {
    Scalar::from(binomial(i, j))
}

/// `(-1)^k` for any integer `k`.
pub fn sign_power(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}
