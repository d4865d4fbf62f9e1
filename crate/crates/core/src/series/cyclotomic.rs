use core::fmt;


use super::ring::{Coeff, Field, RingTag};
use super::Rational;

/// Element `re + im·ζ` of `Q(ζ)` for a primitive cube root of unity,
/// reduced with `ζ² = -1 - ζ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Zeta3 {
    pub re: Rational,
    pub im: Rational,
}

impl Zeta3 {
    pub fn new(re: Rational, im: Rational) -> Self {
        Zeta3 { re, im }
    }

    pub fn zeta() -> Self {
        Zeta3::new(Rational::zero(), <Rational as Coeff>::one())
    }

    /// Complex conjugation, `ζ ↦ ζ² = -1 - ζ`.
    pub fn conj(&self) -> Self {
        Zeta3::new(&self.re - &self.im, -&self.im)
    }

    /// Field norm `re² - re·im + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        // ζ = -1/2 + i·√3/2
        (re - im / 2.0, im * 0.866_025_403_784_438_6)
    }
}

impl fmt::Debug for Zeta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}ζ)", self.re, self.im)
    }
}

impl Coeff for Zeta3 {
    const TAG: RingTag = RingTag::Cyclotomic3;

    fn zero() -> Self {
        Zeta3::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Zeta3::new(<Rational as Coeff>::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Zeta3::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Zeta3::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn times(&self, rhs: &Self) -> Self {
        let bd = &self.im * &rhs.im;
        Zeta3::new(
            &self.re * &rhs.re - &bd,
            &self.re * &rhs.im + &self.im * &rhs.re - bd,
        )
    }
    fn negate(&self) -> Self {
        Zeta3::new(-&self.re, -&self.im)
    }
    fn from_rational(r: &Rational) -> Self {
        Zeta3::new(r.clone(), Rational::zero())
    }
    fn try_recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Zeta3::new(c.re / &n, c.im / &n))
    }
    fn scale(&self, r: &Rational) -> Self {
        Zeta3::new(&self.re * r, &self.im * r)
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }
}

impl Field for Zeta3 {}
