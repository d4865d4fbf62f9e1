use core::fmt::Debug;

use super::Rational;

/// Which coefficient ring a value lives in; used to tag serialized data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingTag {
    Rational,
    Cyclotomic3,
    ModularForms,
    QLaurent,
    CyclotomicLaurent,
}

/// A commutative Q-algebra with exact arithmetic.
///
/// All coefficient rings in this crate contain the rationals, so division
/// by integers is always available through [`Coeff::scale`].
pub trait Coeff: Clone + PartialEq + Debug {
    const TAG: RingTag;

    fn zero() -> Self;
    fn one() -> Self;
    /// True only for the exact zero; a truncated series that is `O(q^N)`
    /// is not exactly zero.
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn try_recip(&self) -> Option<Self>;

    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    /// Equality up to the precision both sides actually know.
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }

    /// Zero up to known precision.
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    /// The value as a rational number, if it is an exact constant.
    fn as_rational(&self) -> Option<Rational>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// A coefficient ring in which every nonzero element is invertible.
pub trait Field: Coeff {
    /// First `len` coefficients of the product of two coefficient vectors.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> alloc::vec::Vec<Self> {
        let mut out = alloc::vec![Self::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j].add_assign_ref(&x.times(y));
                }
            }
        }
        out
    }
}
