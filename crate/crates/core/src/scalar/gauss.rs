//! Gaussian rationals: exact complex numbers `re + im·i` with `re, im ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// An exact element of ℚ(i).
///
/// Both parts are kept in lowest terms with a positive denominator, so
/// structural equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

/// The four field operations, for callers that pick the operation at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `re + im·i` from two integers.
    pub fn complex(re: i64, im: i64) -> Self {
        GaussRat::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, which is rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn apply(&self, op: FieldOp, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(match op {
            FieldOp::Add => self + rhs,
            FieldOp::Sub => self - rhs,
            FieldOp::Mul => self * rhs,
            FieldOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest `f64` pair; used only to seed numerics, never for decisions.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Largest denominator among the two parts.
    pub fn max_denominator(&self) -> BigInt {
        self.re.denom().clone().max(self.im.denom().clone())
    }

    /// The `[re, im]` string pair used by every file format.
    pub fn to_strings(&self) -> [String; 2] {
        [format_rational(&self.re), format_rational(&self.im)]
    }

    pub fn from_strings(re: &str, im: &str) -> Result<Self, ScalarError> {
        Ok(GaussRat::new(parse_rational(re)?, parse_rational(im)?))
    }
}

/// Formats as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `-?digits(/digits)?`. Anything else, including a zero
/// denominator, is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::BadRational(s.to_string());
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())? * sign;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}i",
                    format_rational(&self.re),
                    sign,
                    format_rational(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<BigRational> for GaussRat {
    fn from(q: BigRational) -> Self {
        GaussRat::new(q, BigRational::zero())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on a zero divisor; use [`GaussRat::checked_div`] when the divisor
/// is not known to be nonzero.
impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self.checked_div(rhs).expect("division by zero GaussRat")
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat { (&self).$m(rhs) }
        }
        impl<'a> $tr<GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussRat {
    fn add_assign(&mut self, rhs: GaussRat) {
        *self += &rhs;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for GaussRat {
    fn sub_assign(&mut self, rhs: GaussRat) {
        *self -= &rhs;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GaussRat {
    fn sum<I: Iterator<Item = GaussRat>>(iter: I) -> Self {
        iter.fold(GaussRat::zero(), |acc, x| acc + x)
    }
}
