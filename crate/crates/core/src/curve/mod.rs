//! Weierstrass curves, their formal group laws, logarithms and 2-typical
//! Hazewinkel generators.

mod fgl;
mod typical;

pub use fgl::{fgl_from_curve, formal_inverse, formal_log, FormalGroupLaw};
pub use typical::{typicalize_2, PTypicalData};

use alloc::string::ToString;

use crate::error::{Error, Result};
use crate::graded::GradedMf;
use crate::series::{Coeff, MultiSeries};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<R> {
    pub a1: R,
    pub a2: R,
    pub a3: R,
    pub a4: R,
    pub a6: R,
}

impl<R: Coeff> WeierstrassCurve<R> {
    pub fn new(a1: R, a2: R, a3: R, a4: R, a6: R) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    /// `y^2 + a1 xy + a3 y = x^3`.
    pub fn gamma1_3(a1: R, a3: R) -> Self {
        Self::new(a1, R::zero(), a3, R::zero(), R::zero())
    }

    pub fn b2(&self) -> R {
        self.a1.times(&self.a1).plus(&self.a2.scale(&crate::series::rat(4, 1)))
    }

    pub fn b4(&self) -> R {
        self.a4.plus(&self.a4).plus(&self.a1.times(&self.a3))
    }

    pub fn b6(&self) -> R {
        self.a3.times(&self.a3).plus(&self.a6.scale(&crate::series::rat(4, 1)))
    }

    pub fn b8(&self) -> R {
        let a1a1a6 = self.a1.times(&self.a1).times(&self.a6);
        let a2a6 = self.a2.times(&self.a6).scale(&crate::series::rat(4, 1));
        let a1a3a4 = self.a1.times(&self.a3).times(&self.a4);
        let a2a3a3 = self.a2.times(&self.a3).times(&self.a3);
        let a4a4 = self.a4.times(&self.a4);
        a1a1a6.plus(&a2a6).minus(&a1a3a4).plus(&a2a3a3).minus(&a4a4)
    }

    /// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`.
    pub fn discriminant(&self) -> R {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let r = crate::series::rat;
        b2.times(&b2)
            .times(&b8)
            .negate()
            .minus(&b4.pow(3).scale(&r(8, 1)))
            .minus(&b6.times(&b6).scale(&r(27, 1)))
            .plus(&b2.times(&b4).times(&b6).scale(&r(9, 1)))
    }

    /// `y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6`.
    pub fn residual(&self, x: &R, y: &R) -> R {
        let lhs = y.times(y).plus(&self.a1.times(x).times(y)).plus(&self.a3.times(y));
        let rhs = x
            .pow(3)
            .plus(&self.a2.times(x).times(x))
            .plus(&self.a4.times(x))
            .plus(&self.a6);
        lhs.minus(&rhs)
    }

    /// `(x, y) ↦ (x, -y - a1 x - a3)`.
    pub fn negate_point(&self, x: &R, y: &R) -> (R, R) {
        (x.clone(), y.negate().minus(&self.a1.times(x)).minus(&self.a3))
    }

    /// The curve in coordinates `x = x' + r`, `y = y' + s x' + t`.
    pub fn change_coordinates(&self, r: &R, s: &R, t: &R) -> Self {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = |v: &R| v.plus(v);
        let three = |v: &R| v.scale(&crate::series::rat(3, 1));
        let n1 = a1.plus(&two(s));
        let n2 = a2.minus(&s.times(a1)).plus(&three(r)).minus(&s.times(s));
        let n3 = a3.plus(&r.times(a1)).plus(&two(t));
        let n4 = a4
            .minus(&s.times(a3))
            .plus(&two(&r.times(a2)))
            .minus(&t.plus(&r.times(s)).times(a1))
            .plus(&three(&r.times(r)))
            .minus(&two(&s.times(t)));
        let n6 = a6
            .plus(&r.times(a4))
            .plus(&r.times(r).times(a2))
            .plus(&r.pow(3))
            .minus(&t.times(a3))
            .minus(&t.times(t))
            .minus(&r.times(t).times(a1));
        Self::new(n1, n2, n3, n4, n6)
    }

    /// The series `s(t) = t^3 + a1 t^4 + ...` with `s = -1/y`, `t = -x/y`.
    pub fn s_series(&self, bound: u32) -> Result<MultiSeries<R>> {
        if bound < 4 {
            return Err(Error::BoundTooSmall { need: 4, got: bound as i64 });
        }
        let vars = alloc::vec!["t".to_string()];
        let t = MultiSeries::<R>::variable(vars.clone(), bound, 0);
        let t2 = t.mul(&t)?;
        let t3 = t2.mul(&t)?;
        let c = |v: &R| MultiSeries::constant(vars.clone(), bound, v.clone());
        let lin = c(&self.a1).mul(&t)?.add(&c(&self.a2).mul(&t2)?)?;
        let mut s = t3.clone();
        // Each pass fixes at least one more coefficient.
        for _ in 3..bound {
            let s2 = s.mul(&s)?;
            let next = t3
                .add(&lin.mul(&s)?)?
                .add(&c(&self.a3).add(&c(&self.a4).mul(&t)?)?.mul(&s2)?)?
                .add(&c(&self.a6).mul(&s2.mul(&s)?)?)?;
            if next == s {
                break;
            }
            s = next;
        }
        Ok(s)
    }
}

impl WeierstrassCurve<GradedMf> {
    /// The universal curve `y^2 + a1 xy + a3 y = x^3` over `Q[a1, a3]`.
    pub fn universal() -> Self {
        Self::gamma1_3(GradedMf::a1(), GradedMf::a3())
    }
}

/// Discriminant of a Weierstrass curve.
pub fn discriminant<R: Coeff>(c: &WeierstrassCurve<R>) -> R {
    c.discriminant()
}
