use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::gauss_jordan;
use super::{LinalgError, Matrix, Scalar};

/// A dyadic rational `numerator * 2^exponent`.
///
/// Canonical form: the numerator is odd, or the value is zero and stored as `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: i64) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        let tz = num.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            num >>= tz;
            exp += tz as i64;
        }
        Dyadic { num, exp }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(v, 0)
    }

    /// `±2^k`
    pub fn unit(negative: bool, k: i64) -> Self {
        Dyadic {
            num: if negative { -BigInt::one() } else { BigInt::one() },
            exp: k,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// True iff the value is `±2^k` for some integer `k`.
    pub fn is_unit(&self) -> bool {
        self.num.abs().is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact quotient; fails unless the divisor is a nonzero dyadic unit.
    pub fn checked_div(&self, rhs: &Dyadic) -> Result<Dyadic, LinalgError> {
        match rhs.checked_inv() {
            Some(inv) => Ok(Scalar::mul(self, &inv)),
            None if rhs.is_zero() => Err(LinalgError::DivisionByZero),
            None => Err(LinalgError::NonDyadicDivision(rhs.to_string())),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.num << self.exp as usize)
        } else {
            BigRational::new(self.num.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Converts a rational back, if its reduced denominator is a power of two.
    pub fn from_rational(q: &BigRational) -> Option<Dyadic> {
        let den = q.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if !(den >> tz as usize).is_one() {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
    }

    /// Residue modulo an odd prime `p`; 2 is invertible mod `p`.
    pub fn mod_p(&self, p: u64) -> u64 {
        assert!(p % 2 == 1 && p > 2, "modulus must be an odd prime");
        if self.num.is_zero() {
            return 0;
        }
        let pb = BigInt::from(p);
        let n = self.num.mod_floor(&pb).to_u64().expect("residue fits");
        let two_pow = if self.exp >= 0 {
            pow_mod(2, self.exp as u64, p)
        } else {
            let inv2 = p.div_ceil(2);
            pow_mod(inv2, (-self.exp) as u64, p)
        };
        (n as u128 * two_pow as u128 % p as u128) as u64
    }

    fn aligned(&self, rhs: &Dyadic) -> (BigInt, BigInt, i64) {
        let m = self.exp.min(rhs.exp);
        let a = &self.num << (self.exp - m) as usize;
        let b = &rhs.num << (rhs.exp - m) as usize;
        (a, b, m)
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Scalar for Dyadic {
    fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }
    fn one() -> Self {
        Dyadic::unit(false, 0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, m) = self.aligned(rhs);
        Dyadic::new(a + b, m)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Scalar::add(self, &Scalar::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            num: &self.num * &rhs.num,
            exp: self.exp + rhs.exp,
        }
    }
    fn neg(&self) -> Self {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
    fn checked_inv(&self) -> Option<Self> {
        self.is_unit().then(|| Dyadic {
            num: self.num.clone(),
            exp: -self.exp,
        })
    }

    /// Falls back to rational elimination when some pivot is not a dyadic unit;
    /// fails only if the reduced form itself has a non-dyadic entry.
    fn row_reduce(m: &Matrix<Self>) -> Result<(Matrix<Self>, Vec<usize>), LinalgError> {
        match gauss_jordan(m) {
            Err(LinalgError::NonDyadicDivision(_)) => rational_rref(m),
            other => other,
        }
    }
}

fn rational_rref(m: &Matrix<Dyadic>) -> Result<(Matrix<Dyadic>, Vec<usize>), LinalgError> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| m.row(i).iter().map(Dyadic::to_rational).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in &a {
        for q in row {
            data.push(Dyadic::from_rational(q).ok_or_else(|| LinalgError::NonDyadicDivision(q.to_string()))?);
        }
    }
    Ok((Matrix::new(rows, cols, data, m.labels().to_vec())?, pivots))
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        Scalar::add(&self, &rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        Scalar::sub(&self, &rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Scalar::mul(&self, &rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Scalar::neg(&self)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.num << self.exp as usize)
        } else {
            write!(f, "{}/2^{}", self.num, -self.exp)
        }
    }
}

impl FromStr for Dyadic {
    type Err = LinalgError;

    /// Accepts integers and `a/2^b`; a plain power-of-two denominator `a/4` is also taken.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LinalgError::Parse(format!("not a dyadic entry: {s:?}"));
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Dyadic::new(n, 0))
            }
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim();
                let shift: i64 = if let Some(e) = d.strip_prefix("2^") {
                    e.parse().map_err(|_| bad())?
                } else {
                    let den: BigInt = d.parse().map_err(|_| bad())?;
                    if den <= BigInt::zero() {
                        return Err(bad());
                    }
                    let tz = den.trailing_zeros().unwrap_or(0);
                    if !(den >> tz as usize).is_one() {
                        return Err(bad());
                    }
                    tz as i64
                };
                Ok(Dyadic::new(n, -shift))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_strips_powers_of_two() {
        let x = Dyadic::new(12, 0);
        assert_eq!(x.numerator(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        let z = Dyadic::new(0, 17);
        assert_eq!(z.exponent(), 0);
        assert_eq!(d("6/2^3"), d("3/2^2"));
        assert_eq!(d("1/4"), d("1/2^2"));
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(d("1/2^1") + d("1/2^1"), d("1"));
        assert_eq!(d("3/2^2") * d("4"), d("3"));
        assert_eq!(d("1") - d("3/2^2"), d("1/2^2"));
        assert_eq!(d("2").checked_inv(), Some(d("1/2^1")));
        assert_eq!(d("-4").checked_inv(), Some(d("-1/2^2")));
        assert_eq!(d("3").checked_inv(), None);
        assert!(matches!(d("1").checked_div(&d("3")), Err(LinalgError::NonDyadicDivision(_))));
        assert!(matches!(d("1").checked_div(&d("0")), Err(LinalgError::DivisionByZero)));
    }

    #[test]
    fn ordering_by_value() {
        assert!(d("1/2^1") < d("1"));
        assert!(d("-3") < d("-1/2^5"));
        assert!(d("0") < d("1/2^40"));
    }

    #[test]
    fn projection_mod_odd_primes() {
        assert_eq!(d("2").mod_p(3), 2);
        assert_eq!(d("1/2^1").mod_p(5), 3);
        assert_eq!(d("-1").mod_p(5), 4);
        assert_eq!(d("-3/2^2").mod_p(7), (7 - 3) * 2 % 7);
    }

    #[test]
    fn rational_round_trip() {
        let q = d("-5/2^3").to_rational();
        assert_eq!(Dyadic::from_rational(&q), Some(d("-5/2^3")));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(Dyadic::from_rational(&third), None);
    }

    proptest::proptest! {
        #[test]
        fn print_parse_round_trip(num in -10_000i64..10_000, exp in -20i64..20) {
            let x = Dyadic::new(num, exp);
            let s = x.to_string();
            let y: Dyadic = s.parse().unwrap();
            proptest::prop_assert_eq!(&x, &y);
            proptest::prop_assert_eq!(s, y.to_string());
        }
    }
}
