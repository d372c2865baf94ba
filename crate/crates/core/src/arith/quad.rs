use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with rational `a`, `b` and square-free `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(Self { a, b, d })
    }

    pub(crate) fn new_unchecked(a: Rational, b: Rational, d: u32) -> Self {
        Self { a, b, d }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(Self::new_unchecked(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(Self::new_unchecked(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = Rational::from_integer(self.d.into());
        let a = &self.a * &other.a + &self.b * &other.b * d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new_unchecked(a, b, self.d))
    }

    pub fn neg(&self) -> Self {
        Self::new_unchecked(-&self.a, -&self.b, self.d)
    }

    /// `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::new_unchecked(self.a.clone(), -&self.b, self.d)
    }

    /// `(a + b sqrt d)(a - b sqrt d) = a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(self.d.into());
        &self.a * &self.a - &self.b * &self.b * d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Square-free d > 1 makes the norm vanish only at zero.
        let n = self.norm();
        Ok(Self::new_unchecked(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        self.try_mul(&other.try_inverse()?)
    }

    /// Exact sign of the real number `a + b sqrt d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            _ if sa == sb => sa,
            _ => {
                let d = Rational::from_integer(self.d.into());
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * d;
                if a2 > db2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rad = format!("√{}", self.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs == Rational::from_integer(1.into()) {
            rad
        } else {
            format!("{b_abs}{rad}")
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{b_part}")
            } else {
                write!(f, "{b_part}")
            }
        } else if self.b.is_negative() {
            write!(f, "{}-{b_part}", self.a)
        } else {
            write!(f, "{}+{b_part}", self.a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_non_square_free() {
        assert!(QuadExt::new(q(1, 1), q(1, 1), 4).is_err());
        assert!(QuadExt::new(q(1, 1), q(1, 1), 1).is_err());
        assert!(QuadExt::new(q(1, 1), q(1, 1), 12).is_err());
        assert!(QuadExt::new(q(1, 1), q(1, 1), 5).is_ok());
        assert!(QuadExt::new(q(1, 1), q(1, 1), 30).is_ok());
    }

    #[test]
    fn mismatched_fields() {
        let x = QuadExt::new(q(1, 1), q(1, 1), 5).unwrap();
        let y = QuadExt::new(q(1, 1), q(1, 1), 2).unwrap();
        assert_eq!(x.try_add(&y), Err(Error::FieldMismatch { left: 5, right: 2 }));
        assert!(x.try_mul(&y).is_err());
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 2 - sqrt 5 < 0, 3 - sqrt 5 > 0, -3 + sqrt 5 < 0
        let a = QuadExt::new(q(2, 1), q(-1, 1), 5).unwrap();
        let b = QuadExt::new(q(3, 1), q(-1, 1), 5).unwrap();
        let c = QuadExt::new(q(-3, 1), q(1, 1), 5).unwrap();
        assert_eq!(a.signum(), Ordering::Less);
        assert_eq!(b.signum(), Ordering::Greater);
        assert_eq!(c.signum(), Ordering::Less);
    }

    #[test]
    fn display_forms() {
        let t = QuadExt::new(q(1, 2), q(1, 2), 5).unwrap();
        assert_eq!(t.to_string(), "1/2+1/2√5");
        assert_eq!(t.conjugate().to_string(), "1/2-1/2√5");
        assert_eq!(QuadExt::new(q(0, 1), q(-1, 1), 5).unwrap().to_string(), "-√5");
    }
}
