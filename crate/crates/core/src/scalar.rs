//! Exact scalar fields the polynomial and matrix code is generic over.
//!
//! Everything in this crate decides equality by testing for an exact zero, so
//! only exact fields implement [`Scalar`]. Floating point types deliberately do
//! not.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// An exact field of characteristic zero.
pub trait Scalar:
    Num + Clone + PartialOrd + Debug + Display + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn from_u32(value: u32) -> Self {
        Self::from_i64(i64::from(value))
    }

    /// `num / den`; `den` must be nonzero.
    fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Image in `Z/pZ` for a prime `p < 2^63`, or `None` when the denominator
    /// vanishes there.
    fn residue(&self, p: u64) -> Option<u64>;
}

fn ratio_residue(num: i128, den: i128, p: u64) -> Option<u64> {
    let p = i128::from(p);
    let den = den.rem_euclid(p);
    if den == 0 {
        return None;
    }
    let num = num.rem_euclid(p) as u64;
    Some(crate::linalg::modp::mul(
        num,
        crate::linalg::modp::inv(den as u64, p as u64),
        p as u64,
    ))
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let modulus = BigInt::from(p);
        let reduce = |v: &BigInt| -> i128 {
            let r = v.mod_floor(&modulus);
            i128::try_from(r).expect("reduced below p")
        };
        ratio_residue(reduce(self.numer()), reduce(self.denom()), p)
    }
}

/// Machine-word rationals. Arithmetic panics on overflow, so this is only
/// suitable for small inputs; it exists mostly as a fast path for tests.
impl Scalar for Ratio<i64> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn residue(&self, p: u64) -> Option<u64> {
        ratio_residue(i128::from(*self.numer()), i128::from(*self.denom()), p)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(i128::from(value))
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let p128 = i128::from(p);
        ratio_residue(
            self.numer().rem_euclid(p128),
            self.denom().rem_euclid(p128),
            p,
        )
    }
}
