use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{Coeff, Field, RingTag};

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Denominator is a power of 3, i.e. the value lies in `Z[1/3]`.
pub fn is_3_local(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    let three = BigInt::from(3);
    while (&d % &three).is_zero() {
        d /= &three;
    }
    d.is_one()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

impl Coeff for Rational {
    const TAG: RingTag = RingTag::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Field for Rational {
    // Clear denominators once, convolve integers, divide once per output.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let (na, da) = clear_denominators(a);
        let (nb, db) = clear_denominators(b);
        let mut acc = alloc::vec![BigInt::zero(); len];
        for (i, x) in na.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        acc.into_iter()
            .map(|n| {
                if n.is_zero() {
                    <Rational as Zero>::zero()
                } else {
                    Rational::new(n, den.clone())
                }
            })
            .collect()
    }
}

fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            den = den.lcm(x.denom());
        }
    }
    let nums = v
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                x.numer() * &den
            } else {
                x.numer() * (&den / x.denom())
            }
        })
        .collect();
    (nums, den.abs())
}
