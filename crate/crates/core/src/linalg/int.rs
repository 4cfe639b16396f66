//! Exact integers with an inline machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; every operation is checked
//! and promotes to a heap-allocated [`BigInt`] on overflow, so arithmetic never
//! wraps. The representation is normalized: a value is `Big` only when it does
//! not fit in an `i64`, which makes derived equality and hashing sound.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floor division: the quotient rounded toward negative infinity.
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div_euclid(*b) {
                Some(_) => Int::Small(a.div_floor(b)),
                None => Int::from_big(self.to_big().div_floor(&d.to_big())),
            },
            _ => Int::from_big(self.to_big().div_floor(&d.to_big())),
        }
    }

    /// Remainder with the sign of the divisor, so `mod_floor(a, d) ∈ [0, d)` for `d > 0`.
    pub fn mod_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => match a.checked_rem_euclid(*b) {
                Some(_) => Int::Small(a.mod_floor(b)),
                None => Int::from_big(self.to_big().mod_floor(&d.to_big())),
            },
            _ => Int::from_big(self.to_big().mod_floor(&d.to_big())),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return None;
        }
        if self.mod_floor(d).is_zero() {
            Some(self.div_floor(d))
        } else {
            None
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => Int::Small(a.gcd(b)),
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Extended gcd: `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
    pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    /// `self -= q * r`, the inner step of every row operation.
    #[inline]
    pub fn sub_mul(&mut self, q: &Int, r: &Int) {
        if let (Int::Small(a), Int::Small(b), Int::Small(c)) = (&*self, q, r) {
            if let Some(v) = b.checked_mul(*c).and_then(|m| a.checked_sub(m)) {
                *self = Int::Small(v);
                return;
            }
        }
        *self = &*self - &(q * r);
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |acc, x| &acc + &x)
    }
}

impl Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ONE, |acc, x| &acc * &x)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

// Small values serialize as JSON numbers, large ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int::Small(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(Int::from_big)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i128) -> Int {
        Int::from_big(BigInt::from(v))
    }

    #[test]
    fn overflow_promotes_instead_of_wrapping() {
        let m = Int::Small(i64::MAX);
        let s = &m + &Int::ONE;
        assert!(matches!(s, Int::Big(_)));
        assert_eq!(s, big(i64::MAX as i128 + 1));
        let back = &s - &Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = &m * &m;
        assert_eq!(sq, big((i64::MAX as i128) * (i64::MAX as i128)));
        assert_eq!(-Int::Small(i64::MIN), big(-(i64::MIN as i128)));
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(-7).mod_floor(&Int::from(2)), Int::from(1));
        assert_eq!(Int::from(7).mod_floor(&Int::from(3)), Int::from(1));
        assert_eq!(Int::from(6).div_exact(&Int::from(3)), Some(Int::from(2)));
        assert_eq!(Int::from(7).div_exact(&Int::from(3)), None);
    }

    #[test]
    fn json_roundtrip_small_and_big() {
        let vals = [Int::from(-3), big(1i128 << 80)];
        let s = serde_json::to_string(&vals).unwrap();
        assert_eq!(s, "[-3,\"1208925819614629174706176\"]");
        let back: Vec<Int> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vals);
    }

    proptest! {
        #[test]
        fn matches_i128_reference(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            prop_assert_eq!(&x + &y, big(a as i128 + b as i128));
            prop_assert_eq!(&x - &y, big(a as i128 - b as i128));
            prop_assert_eq!(&x * &y, big(a as i128 * b as i128));
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        }

        #[test]
        fn ext_gcd_bezout(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (g, s, t) = Int::ext_gcd(&Int::from(a), &Int::from(b));
            prop_assert_eq!(&(&s * &Int::from(a)) + &(&t * &Int::from(b)), g.clone());
            prop_assert_eq!(g, Int::from(a).gcd(&Int::from(b)));
        }
    }
}
