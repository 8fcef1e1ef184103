use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{LinalgError, Scalar};

/// An element of GF(3), stored as its residue in `{0, 1, 2}`.
///
/// Printed as `0`, `1`, `-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const MINUS_ONE: Gf3 = Gf3(2);

    pub fn new(v: i64) -> Self {
        Gf3(v.rem_euclid(3) as u8)
    }

    /// Residue in `{0, 1, 2}`.
    #[inline]
    pub fn residue(self) -> u8 {
        self.0
    }

    /// Balanced lift to `{-1, 0, 1}`.
    #[inline]
    pub fn lift(self) -> i64 {
        match self.0 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl From<i64> for Gf3 {
    fn from(v: i64) -> Self {
        Gf3::new(v)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    #[inline]
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + rhs.0) % 3)
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    #[inline]
    fn sub(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + 3 - rhs.0) % 3)
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    #[inline]
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    #[inline]
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}

impl Scalar for Gf3 {
    fn zero() -> Self {
        Gf3::ZERO
    }
    fn one() -> Self {
        Gf3::ONE
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    // every nonzero element is its own inverse
    fn checked_inv(&self) -> Option<Self> {
        (self.0 != 0).then_some(*self)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.lift(), f)
    }
}

impl FromStr for Gf3 {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" | "-0" => Ok(Gf3(0)),
            "1" | "+1" | "-2" => Ok(Gf3(1)),
            "2" | "-1" => Ok(Gf3(2)),
            other => Err(LinalgError::Parse(format!("not a GF(3) entry: {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_exhaustive() {
        let all = [Gf3(0), Gf3(1), Gf3(2)];
        for &a in &all {
            assert_eq!(a + (-a), Gf3::ZERO);
            if a != Gf3::ZERO {
                assert_eq!(a * a.checked_inv().unwrap(), Gf3::ONE);
                assert_eq!(a.checked_inv(), Some(a));
            }
            for &b in &all {
                assert_eq!(a + b, Gf3::new(a.lift() + b.lift()));
                assert_eq!(a * b, Gf3::new(a.lift() * b.lift()));
                assert_eq!(a - b, a + (-b));
            }
        }
        assert_eq!(Gf3::ZERO.checked_inv(), None);
    }

    #[test]
    fn prints_minus_one_and_parses_both_spellings() {
        assert_eq!(Gf3(2).to_string(), "-1");
        assert_eq!("2".parse::<Gf3>().unwrap(), Gf3::MINUS_ONE);
        assert_eq!("-1".parse::<Gf3>().unwrap(), Gf3::MINUS_ONE);
        assert!("3".parse::<Gf3>().is_err());
    }
}
