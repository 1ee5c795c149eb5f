//! Scalar abstraction shared by the matrix and polynomial code.
//!
//! Everything that decides a structural question (kernels, ranks, whether a
//! determinant vanishes) runs on [`Rational`](crate::Rational). The float
//! instances exist so the same routines can be used for quick numeric
//! exploration; their zero test is tolerance based and carries no guarantee.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// A commutative ring element usable as a matrix or polynomial coefficient.
pub trait Ring: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    /// Exact zero for exact types; a tolerance check for floats.
    fn is_negligible(&self) -> bool;

    fn from_i64(v: i64) -> Self;
}

/// A field: a [`Ring`] where every non-negligible element is invertible.
pub trait Scalar: Ring + FromPrimitive {
    /// `true` when arithmetic is exact and zero tests are decisive.
    const EXACT: bool;
}

impl Ring for BigInt {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for i64 {
    fn is_negligible(&self) -> bool {
        *self == 0
    }

    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Ring for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
}

impl Ring for Ratio<i64> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;
}

impl Ring for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Ring for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }

    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

/// Renders a rational as `p/q`, or `p` for integers.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into a rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64) -> BigRational {
    <BigRational as Ring>::from_i64(n)
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
