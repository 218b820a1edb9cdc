//! Coefficient rings for elimination: checked `i64` first, `BigInt` when
//! that overflows.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Returned when a fixed-width computation would overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = std::result::Result<T, Overflow>;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn from_bigint(v: &BigInt) -> Checked<Self>;
    fn to_bigint(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn add(&self, other: &Self) -> Checked<Self>;
    fn sub(&self, other: &Self) -> Checked<Self>;
    fn mul(&self, other: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Exact quotient; caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Checked<Self>;
    /// Floor division with nonnegative remainder.
    fn div_rem_euclid(&self, other: &Self) -> Checked<(Self, Self)>;
    fn divides(&self, other: &Self) -> bool;
    /// `(g, s, t)` with `s·self + t·other = g = gcd ≥ 0`.
    fn ext_gcd(&self, other: &Self) -> Checked<(Self, Self, Self)>;
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn from_bigint(v: &BigInt) -> Checked<Self> {
        i64::try_from(v).map_err(|_| Overflow)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn add(&self, other: &Self) -> Checked<Self> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn sub(&self, other: &Self) -> Checked<Self> {
        self.checked_sub(*other).ok_or(Overflow)
    }
    fn mul(&self, other: &Self) -> Checked<Self> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_exact(&self, other: &Self) -> Checked<Self> {
        self.checked_div(*other).ok_or(Overflow)
    }
    fn div_rem_euclid(&self, other: &Self) -> Checked<(Self, Self)> {
        Ok((self.checked_div_euclid(*other).ok_or(Overflow)?, self.checked_rem_euclid(*other).ok_or(Overflow)?))
    }
    fn divides(&self, other: &Self) -> bool {
        match *self {
            0 => *other == 0,
            -1 | 1 => true,
            d => other % d == 0,
        }
    }
    fn ext_gcd(&self, other: &Self) -> Checked<(Self, Self, Self)> {
        let e = i128::from(*self).extended_gcd(&i128::from(*other));
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g < 0 {
            g = -g;
            s = -s;
            t = -t;
        }
        let fit = |v: i128| i64::try_from(v).map_err(|_| Overflow);
        Ok((fit(g)?, fit(s)?, fit(t)?))
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_bigint(v: &BigInt) -> Checked<Self> {
        Ok(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn add(&self, other: &Self) -> Checked<Self> {
        Ok(self + other)
    }
    fn sub(&self, other: &Self) -> Checked<Self> {
        Ok(self - other)
    }
    fn mul(&self, other: &Self) -> Checked<Self> {
        Ok(self * other)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn div_exact(&self, other: &Self) -> Checked<Self> {
        Ok(self / other)
    }
    fn div_rem_euclid(&self, other: &Self) -> Checked<(Self, Self)> {
        let (q, r) = self.div_mod_floor(other);
        // div_mod_floor gives r with the divisor's sign; shift to r ≥ 0
        if Signed::is_negative(&r) {
            Ok((q + 1, r - other))
        } else {
            Ok((q, r))
        }
    }
    fn divides(&self, other: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(other)
        } else {
            Zero::is_zero(&(other % self))
        }
    }
    fn ext_gcd(&self, other: &Self) -> Checked<(Self, Self, Self)> {
        let e = self.extended_gcd(other);
        if Signed::is_negative(&e.gcd) {
            Ok((-e.gcd, -e.x, -e.y))
        } else {
            Ok((e.gcd, e.x, e.y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i64_overflow_detected() {
        assert_eq!(Coeff::mul(&i64::MAX, &2), Err(Overflow));
        assert_eq!(Coeff::neg(&i64::MIN), Err(Overflow));
    }

    #[test]
    fn ext_gcd_identities() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = a.ext_gcd(&b).unwrap();
                assert_eq!(s * a + t * b, g);
                assert!(g >= 0);
                assert_eq!(g, a.gcd(&b));
                let (bg, bs, bt) = BigInt::from(a).ext_gcd(&BigInt::from(b)).unwrap();
                assert_eq!(bs * a + bt * b, bg.clone());
                assert_eq!(bg, BigInt::from(g));
            }
        }
    }

    #[test]
    fn euclid_remainders_are_nonnegative() {
        for a in -9i64..=9 {
            for b in [-4i64, -3, 3, 4] {
                let (q, r) = a.div_rem_euclid(&b).unwrap();
                assert_eq!(q * b + r, a);
                assert!((0..b.abs()).contains(&r));
                let (bq, br) = BigInt::from(a).div_rem_euclid(&BigInt::from(b)).unwrap();
                assert_eq!((bq, br), (BigInt::from(q), BigInt::from(r)));
            }
        }
    }
}
