use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QuadExt, Rational, DEFAULT_DISCRIMINANT};
use crate::error::{Error, Result};

/// The universal number type: an exact rational, or an element of a real
/// quadratic field.
///
/// Canonical form: a quadratic value whose irrational part vanishes is
/// always stored as `Rational`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn integer(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(Rational::new(num.into(), den.into()))
    }

    /// `a + b sqrt(d)` in canonical form.
    pub fn quad(a: Rational, b: Rational, d: u32) -> Result<Self> {
        Ok(Self::from_quad(QuadExt::new(a, b, d)?))
    }

    fn from_quad(q: QuadExt) -> Self {
        if q.b().is_zero() {
            Scalar::Rational(q.a().clone())
        } else {
            Scalar::Quad(q)
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u32) -> Result<Self> {
        Self::quad(Rational::zero(), Rational::one(), d)
    }

    /// The golden ratio `(1 + sqrt 5) / 2` and its conjugate `(1 - sqrt 5) / 2`.
    pub fn golden_pair() -> (Self, Self) {
        let half = Rational::new(1.into(), 2.into());
        let t1 = QuadExt::new_unchecked(half.clone(), half.clone(), DEFAULT_DISCRIMINANT);
        (Scalar::Quad(t1.clone()), Scalar::Quad(t1.conjugate()))
    }

    pub fn discriminant(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quad(q) => Some(q.d()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// The value as an integer when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    fn promote(&self, d: u32) -> QuadExt {
        match self {
            Scalar::Rational(r) => QuadExt::new_unchecked(r.clone(), Rational::zero(), d),
            Scalar::Quad(q) => q.clone(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        rat: impl FnOnce(&Rational, &Rational) -> Result<Rational>,
        quad: impl FnOnce(&QuadExt, &QuadExt) -> Result<QuadExt>,
    ) -> Result<Self> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => rat(x, y).map(Scalar::Rational),
            (Scalar::Quad(x), Scalar::Quad(y)) => quad(x, y).map(Self::from_quad),
            (Scalar::Quad(x), r) => quad(x, &r.promote(x.d())).map(Self::from_quad),
            (r, Scalar::Quad(y)) => quad(&r.promote(y.d()), y).map(Self::from_quad),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |x, y| Ok(x + y), QuadExt::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |x, y| Ok(x - y), QuadExt::try_sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |x, y| Ok(x * y), QuadExt::try_mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.binary(other, |x, y| Ok(x / y), QuadExt::try_div)
    }

    pub fn try_inverse(&self) -> Result<Self> {
        Scalar::one().try_div(self)
    }

    /// Integer power; negative exponents invert. `0^0 = 1`.
    pub fn try_pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.try_inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Panicking variant of [`Scalar::try_pow`], for the field-consistent
    /// internal call sites.
    pub fn pow(&self, exp: i64) -> Self {
        self.try_pow(exp).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn inverse(&self) -> Self {
        self.try_inverse().unwrap_or_else(|e| panic!("{e}"))
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.cmp(&Rational::zero()),
            Scalar::Quad(q) => q.signum(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact real ordering; fails only across distinct quadratic fields.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        match (self.discriminant(), other.discriminant()) {
            (Some(a), Some(b)) if a != b => return Err(Error::Incomparable),
            _ => {}
        }
        Ok(self.try_sub(other)?.signum())
    }

    /// `|self| < |other|`.
    pub fn abs_lt(&self, other: &Self) -> Result<bool> {
        Ok(self.abs().cmp_exact(&other.abs())? == Ordering::Less)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rational(Rational::from_integer(n))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.is_zero(),
        }
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rational(Rational::one())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator traits panic on a zero divisor or mismatched fields, matching
// the behaviour of `BigRational`; the `try_*` methods report those cases.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: RationalRepr,
    b: RationalRepr,
    d: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Quad(QuadRepr),
    Rational(RationalRepr),
}

impl RationalRepr {
    fn from_rational(r: &Rational) -> Self {
        Self { num: r.numer().to_string(), den: r.denom().to_string() }
    }

    fn to_rational(&self) -> Result<Rational> {
        let num: BigInt = self.num.trim().parse().map_err(|_| Error::Parse(format!("bad numerator `{}`", self.num)))?;
        let den: BigInt = self.den.trim().parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", self.den)))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.is_negative() {
            return Ok(Rational::new(-num, -den));
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Rational(r) => ScalarRepr::Rational(RationalRepr::from_rational(r)),
            Scalar::Quad(q) => ScalarRepr::Quad(QuadRepr {
                a: RationalRepr::from_rational(q.a()),
                b: RationalRepr::from_rational(q.b()),
                d: q.d(),
            }),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(deserializer)?;
        let value = match repr {
            ScalarRepr::Rational(r) => r.to_rational().map(Scalar::Rational),
            ScalarRepr::Quad(q) => q
                .a
                .to_rational()
                .and_then(|a| q.b.to_rational().map(|b| (a, b)))
                .and_then(|(a, b)| Scalar::quad(a, b, q.d)),
        };
        value.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_pair_product_and_square() {
        let (t1, t2) = Scalar::golden_pair();
        assert_eq!(&t1 * &t2, Scalar::integer(-1));
        assert_eq!(&t1 + &t2, Scalar::one());
        let sq = &t1 * &t1;
        assert_eq!(sq, &t1 + Scalar::one());
        match sq {
            Scalar::Quad(q) => {
                assert_eq!(q.a(), &Rational::new(3.into(), 2.into()));
                assert_eq!(q.b(), &Rational::new(1.into(), 2.into()));
                assert_eq!(q.d(), 5);
            }
            _ => panic!("tau^2 is irrational"),
        }
    }

    #[test]
    fn rational_sum() {
        assert_eq!(Scalar::ratio(1, 2) + Scalar::ratio(1, 3), Scalar::ratio(5, 6));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(Scalar::one().try_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().try_inverse(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().try_pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let r5 = Scalar::sqrt(5).unwrap();
        let r2 = Scalar::sqrt(2).unwrap();
        assert_eq!(r5.try_add(&r2), Err(Error::FieldMismatch { left: 5, right: 2 }));
        assert_eq!(r5.cmp_exact(&r2), Err(Error::Incomparable));
        // a rational mixes with either field
        assert!(r5.try_add(&Scalar::ratio(1, 7)).is_ok());
    }

    #[test]
    fn irrational_part_cancels_to_rational() {
        let r5 = Scalar::sqrt(5).unwrap();
        let x = &r5 + Scalar::one();
        let y = &x - &r5;
        assert_eq!(y, Scalar::one());
        assert!(y.is_rational());
        assert_eq!(&r5 * &r5, Scalar::integer(5));
    }

    #[test]
    fn powers() {
        let (t1, _) = Scalar::golden_pair();
        // tau^10 = (L_10 + F_10 sqrt 5) / 2 = (123 + 55 sqrt 5) / 2
        let expect = Scalar::quad(Rational::new(123.into(), 2.into()), Rational::new(55.into(), 2.into()), 5).unwrap();
        assert_eq!(t1.pow(10), expect);
        assert_eq!(t1.pow(-1), &t1 - Scalar::one());
        assert_eq!(Scalar::zero().pow(0), Scalar::one());
    }

    #[test]
    fn ordering_of_golden_ratios() {
        let (t1, t2) = Scalar::golden_pair();
        assert!(t1 > Scalar::one());
        assert!(t1 < Scalar::integer(2));
        assert!(t2.abs_lt(&Scalar::one()).unwrap());
        assert!(!t1.abs_lt(&Scalar::one()).unwrap());
        assert!(t2 < Scalar::zero());
    }

    #[test]
    fn json_encoding() {
        let r = Scalar::ratio(-691, 2730);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":"-691","den":"2730"}"#);
        let (t1, _) = Scalar::golden_pair();
        assert_eq!(
            serde_json::to_string(&t1).unwrap(),
            r#"{"a":{"num":"1","den":"2"},"b":{"num":"1","den":"2"},"d":5}"#
        );
        let back: Scalar = serde_json::from_str(r#"{"num":"4","den":"-6"}"#).unwrap();
        assert_eq!(back, Scalar::ratio(-2, 3));
        let collapsed: Scalar = serde_json::from_str(r#"{"a":{"num":"3","den":"1"},"b":{"num":"0","den":"1"},"d":5}"#).unwrap();
        assert_eq!(collapsed, Scalar::integer(3));
        assert!(serde_json::from_str::<Scalar>(r#"{"num":"1","den":"0"}"#).is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20, any::<bool>()).prop_map(|(an, ad, bn, bd, irr)| {
            let a = Rational::new(an.into(), ad.into());
            if irr {
                Scalar::quad(a, Rational::new(bn.into(), bd.into()), 5).unwrap()
            } else {
                Scalar::Rational(a)
            }
        })
    }

    proptest! {
        #[test]
        fn additive_and_multiplicative_inverses(x in arb_scalar()) {
            prop_assert!((&x + &(-&x)).is_zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse(), Scalar::one());
            }
        }

        #[test]
        fn conjugate_product_is_norm(an in -40i64..40, bn in -40i64..40, den in 1i64..9) {
            let a = Rational::new(an.into(), den.into());
            let b = Rational::new(bn.into(), den.into());
            let q = QuadExt::new(a.clone(), b.clone(), 5).unwrap();
            let prod = q.try_mul(&q.conjugate()).unwrap();
            prop_assert!(prod.b().is_zero());
            prop_assert_eq!(prod.a().clone(), &a * &a - &b * &b * Rational::from_integer(5.into()));
        }

        #[test]
        fn json_round_trip(x in arb_scalar()) {
            let s = serde_json::to_string(&x).unwrap();
            let back: Scalar = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn sign_agrees_with_float(x in arb_scalar()) {
            let approx = match &x {
                Scalar::Rational(r) => num_traits::ToPrimitive::to_f64(r).unwrap(),
                Scalar::Quad(q) => num_traits::ToPrimitive::to_f64(q.a()).unwrap()
                    + num_traits::ToPrimitive::to_f64(q.b()).unwrap() * 5f64.sqrt(),
            };
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), approx.partial_cmp(&0.0).unwrap());
            }
        }
    }
}
