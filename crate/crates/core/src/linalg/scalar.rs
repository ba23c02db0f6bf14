//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Exact rational number. The denominator is always positive and the
/// fraction is kept reduced, so structural equality is canonical.
pub type Q = BigRational;

/// Exact Gaussian rational `re + im·i`.
pub type QI = Complex<Q>;

/// Field operations shared by [`Q`] and [`QI`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_q(q: Q) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }
}

impl Scalar for Q {
    fn from_q(q: Q) -> Self {
        q
    }
}

impl Scalar for QI {
    fn from_q(q: Q) -> Self {
        Complex::new(q, Q::zero())
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(re: Q, im: Q) -> QI {
    Complex::new(re, im)
}

/// Gaussian rational from integer parts.
pub fn gi(re: i64, im: i64) -> QI {
    Complex::new(q(re), q(im))
}

pub fn i_unit() -> QI {
    gi(0, 1)
}

pub fn real(x: Q) -> QI {
    Complex::new(x, Q::zero())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => BigInt::from_str(s).map(Q::from_integer).map_err(|_| bad()),
    }
}

/// Canonical text form: `n` for integers, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Human-readable Gaussian rational, e.g. `1/2+3i`, `-i`, `0`.
pub fn fmt_qi(z: &QI) -> String {
    if z.im.is_zero() {
        return fmt_q(&z.re);
    }
    let im = match &z.im {
        x if x.is_one() => "i".to_string(),
        x if (-x).is_one() => "-i".to_string(),
        x => format!("{}i", fmt_q(x)),
    };
    if z.re.is_zero() {
        im
    } else if z.im.is_positive() {
        format!("{}+{}", fmt_q(&z.re), im)
    } else {
        format!("{}{}", fmt_q(&z.re), im)
    }
}

pub fn conj(z: &QI) -> QI {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// |z|² as an exact rational.
pub fn norm_sqr(z: &QI) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

pub fn pow_qi(z: &QI, e: u32) -> QI {
    let mut acc = QI::one();
    for _ in 0..e {
        acc *= z.clone();
    }
    acc
}

pub fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}
