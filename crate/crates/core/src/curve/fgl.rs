use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::series::{rat, Coeff, MultiSeries, RingTag};

/// A truncated two-variable formal group law `F(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw<R> {
    series: MultiSeries<R>,
}

fn xy() -> Vec<String> {
    alloc::vec!["x".to_string(), "y".to_string()]
}

fn t_var() -> Vec<String> {
    alloc::vec!["t".to_string()]
}

impl<R: Coeff> FormalGroupLaw<R> {
    /// Wraps a series in `x, y`; the axioms are not checked here.
    pub fn from_series(series: MultiSeries<R>) -> Result<Self> {
        if series.nvars() != 2 {
            return Err(Error::InvalidArgument("a group law has two variables".into()));
        }
        Ok(FormalGroupLaw { series: series.with_vars(xy()) })
    }

    pub fn additive(bound: u32) -> Self {
        let x = MultiSeries::variable(xy(), bound, 0);
        let y = MultiSeries::variable(xy(), bound, 1);
        FormalGroupLaw { series: x.add(&y).expect("same variables") }
    }

    /// `x + y - xy`, the law of `x = 1 - L`.
    pub fn multiplicative(bound: u32) -> Self {
        let s = MultiSeries::from_terms(
            xy(),
            bound,
            [
                (alloc::vec![1, 0], R::one()),
                (alloc::vec![0, 1], R::one()),
                (alloc::vec![1, 1], R::one().negate()),
            ],
        );
        FormalGroupLaw { series: s }
    }

    pub fn series(&self) -> &MultiSeries<R> {
        &self.series
    }

    pub fn bound(&self) -> u32 {
        self.series.bound()
    }

    pub fn coeff_ring(&self) -> RingTag {
        R::TAG
    }

    /// `F(a, b)` for series `a, b` in common variables.
    pub fn apply(&self, a: &MultiSeries<R>, b: &MultiSeries<R>) -> Result<MultiSeries<R>> {
        self.series.substitute(&[a.clone(), b.clone()])
    }

    pub fn satisfies_unit(&self) -> bool {
        let x = MultiSeries::variable(xy(), self.bound(), 0);
        let y = MultiSeries::variable(xy(), self.bound(), 1);
        let zero = MultiSeries::zero(xy(), self.bound());
        self.apply(&x, &zero).map(|s| s == x).unwrap_or(false)
            && self.apply(&zero, &y).map(|s| s == y).unwrap_or(false)
    }

    pub fn is_commutative(&self) -> bool {
        let x = MultiSeries::variable(xy(), self.bound(), 0);
        let y = MultiSeries::variable(xy(), self.bound(), 1);
        self.apply(&y, &x).map(|s| s == self.series).unwrap_or(false)
    }

    pub fn is_associative(&self) -> Result<bool> {
        let v: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let b = self.bound();
        let x = MultiSeries::variable(v.clone(), b, 0);
        let y = MultiSeries::variable(v.clone(), b, 1);
        let z = MultiSeries::variable(v, b, 2);
        let left = self.apply(&self.apply(&x, &y)?, &z)?;
        let right = self.apply(&x, &self.apply(&y, &z)?)?;
        Ok(left == right)
    }

    /// The inverse `i(t)` with `F(t, i(t)) = 0`, by fixed-point iteration.
    pub fn inverse(&self) -> Result<MultiSeries<R>> {
        let b = self.bound();
        let t = MultiSeries::<R>::variable(t_var(), b, 0);
        let x = MultiSeries::variable(xy(), b, 0);
        let y = MultiSeries::variable(xy(), b, 1);
        // F = x + y + G with G divisible by xy.
        let g = self.series.sub(&x.add(&y)?)?;
        let mut i = t.neg();
        for _ in 1..b {
            let next = t.neg().sub(&g.substitute(&[t.clone(), i.clone()])?)?;
            if next == i {
                break;
            }
            i = next;
        }
        Ok(i)
    }

    /// The law transported along a strict isomorphism `φ`:
    /// `φ(F(φ^-1 x, φ^-1 y))`.
    pub fn transport(&self, phi: &MultiSeries<R>) -> Result<Self> {
        let inv = phi.reverse()?;
        let b = self.bound().min(phi.bound());
        let x = MultiSeries::variable(xy(), b, 0);
        let y = MultiSeries::variable(xy(), b, 1);
        let inner = self.apply(&MultiSeries::compose(&inv, &x)?, &MultiSeries::compose(&inv, &y)?)?;
        Ok(FormalGroupLaw { series: MultiSeries::compose(phi, &inner)? })
    }

    /// The law with logarithm `log`: `exp(log x + log y)`.
    pub fn from_log(log: &MultiSeries<R>) -> Result<Self> {
        let b = log.bound();
        let exp = log.reverse()?;
        let x = MultiSeries::variable(xy(), b, 0);
        let y = MultiSeries::variable(xy(), b, 1);
        let sum = MultiSeries::compose(log, &x)?.add(&MultiSeries::compose(log, &y)?)?;
        Ok(FormalGroupLaw { series: MultiSeries::compose(&exp, &sum)? })
    }
}

/// Group law of the curve in the coordinate `t = -x/y`, by chord addition in
/// the `(t, s)` chart.
pub fn fgl_from_curve<R: Coeff>(c: &WeierstrassCurve<R>, bound: u32) -> Result<FormalGroupLaw<R>> {
    if bound < 2 {
        return Err(Error::BoundTooSmall { need: 2, got: bound as i64 });
    }
    // The chord slope divides by x - y, so s(t) is needed one degree further.
    let s = c.s_series((bound + 1).max(4))?;
    let sb = bound;
    let vars = xy();
    let x = MultiSeries::<R>::variable(vars.clone(), sb, 0);
    let y = MultiSeries::<R>::variable(vars.clone(), sb, 1);
    let wx = MultiSeries::compose(&s.truncate(sb), &x)?;
    let k = |v: &R| MultiSeries::constant(vars.clone(), sb, v.clone());

    // Σ A_n (x^n - y^n)/(x - y)
    let mut lambda = MultiSeries::zero(vars.clone(), sb);
    for (m, a) in s.terms() {
        let n = m[0];
        for i in 0..n {
            lambda.add_term(alloc::vec![i, n - 1 - i], a);
        }
    }
    let nu = wx.sub(&lambda.mul(&x)?)?;
    let l2 = lambda.mul(&lambda)?;
    let l3 = l2.mul(&lambda)?;
    let coef2 = k(&c.a1)
        .mul(&lambda)?
        .add(&k(&c.a2).mul(&nu)?)?
        .add(&k(&c.a3).mul(&l2)?)?
        .add(&k(&c.a4.scale(&rat(2, 1))).mul(&lambda.mul(&nu)?)?)?
        .add(&k(&c.a6.scale(&rat(3, 1))).mul(&l2.mul(&nu)?)?)?;
    let coef3 = k(&R::one())
        .add(&k(&c.a2).mul(&lambda)?)?
        .add(&k(&c.a4).mul(&l2)?)?
        .add(&k(&c.a6).mul(&l3)?)?;
    let z3 = x.add(&y)?.add(&coef2.mul(&coef3.inverse()?)?)?.neg();
    let w3 = lambda.mul(&z3)?.add(&nu)?;
    let denom = k(&R::one()).sub(&k(&c.a1).mul(&z3)?)?.sub(&k(&c.a3).mul(&w3)?)?;
    let f = z3.neg().mul(&denom.inverse()?)?;
    Ok(FormalGroupLaw { series: f })
}

/// `i(t) = -t / (1 - a1 t - a3 s(t))`, read off from `(x, y) ↦ (x, -y - a1 x - a3)`.
pub fn formal_inverse<R: Coeff>(f: &FormalGroupLaw<R>, c: &WeierstrassCurve<R>) -> Result<MultiSeries<R>> {
    let b = f.bound();
    let s = c.s_series(b.max(4))?.truncate(b);
    let t = MultiSeries::<R>::variable(t_var(), b, 0);
    let k = |v: &R| MultiSeries::constant(t_var(), b, v.clone());
    let denom = k(&R::one()).sub(&k(&c.a1).mul(&t)?)?.sub(&k(&c.a3).mul(&s)?)?;
    t.neg().mul(&denom.inverse()?)
}

/// `ℓ(t) = ∫ dt / (∂F/∂y)(t, 0)`.
pub fn formal_log<R: Coeff>(f: &FormalGroupLaw<R>) -> Result<MultiSeries<R>> {
    let d = f.series.derivative(1).restrict_to_zero(1).with_vars(t_var());
    d.inverse()?.integrate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedMf;
    use crate::series::Rational;

    fn gm(c: i64, a: u32, b: u32) -> GradedMf {
        GradedMf::monomial(rat(c, 1), a, b, 0)
    }

    #[test]
    fn universal_low_order_terms() {
        let f = fgl_from_curve(&WeierstrassCurve::universal(), 5).unwrap();
        let s = f.series();
        assert_eq!(s.coeff(&[1, 0]), GradedMf::one());
        assert_eq!(s.coeff(&[0, 1]), GradedMf::one());
        assert_eq!(s.coeff(&[1, 1]), gm(-1, 1, 0));
        assert_eq!(s.coeff(&[3, 1]), gm(-2, 0, 1));
        assert_eq!(s.coeff(&[2, 2]), gm(-3, 0, 1));
        assert_eq!(s.coeff(&[1, 3]), gm(-2, 0, 1));
        assert!(s.coeff(&[2, 1]).is_zero());
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn cubic_law_is_additive_to_degree_four() {
        let c = WeierstrassCurve::gamma1_3(rat(0, 1), rat(0, 1));
        let f = fgl_from_curve(&c, 4).unwrap();
        assert_eq!(f, FormalGroupLaw::<Rational>::additive(4));
    }

    #[test]
    fn universal_axioms() {
        let f = fgl_from_curve(&WeierstrassCurve::universal(), 6).unwrap();
        assert!(f.satisfies_unit());
        assert!(f.is_commutative());
        assert!(f.is_associative().unwrap());
    }

    #[test]
    fn inverse_from_negation_matches_fixed_point() {
        let c = WeierstrassCurve::universal();
        let f = fgl_from_curve(&c, 7).unwrap();
        let i = formal_inverse(&f, &c).unwrap();
        assert_eq!(i, f.inverse().unwrap());
        assert_eq!(i.coeff1(1), gm(-1, 0, 0));
        assert_eq!(i.coeff1(2), gm(-1, 1, 0));
        assert_eq!(i.coeff1(3), gm(-1, 2, 0));
        let t = MultiSeries::variable(t_var(), 7, 0);
        assert!(f.apply(&t, &i).unwrap().is_empty());
    }

    #[test]
    fn multiplicative_log() {
        let f = FormalGroupLaw::<Rational>::multiplicative(8);
        let l = formal_log(&f).unwrap();
        for k in 1..8 {
            assert_eq!(l.coeff1(k), rat(1, k as i64));
        }
        assert_eq!(f.inverse().unwrap(), {
            // -t/(1-t)
            MultiSeries::univariate("t", 8, (0..8).map(|k| rat(if k == 0 { 0 } else { -1 }, 1)).collect())
        });
    }

    #[test]
    fn universal_log_is_additive() {
        let f = fgl_from_curve(&WeierstrassCurve::universal(), 8).unwrap();
        let l = formal_log(&f).unwrap();
        assert_eq!(l.coeff1(2), GradedMf::monomial(rat(1, 2), 1, 0, 0));
        assert_eq!(l.coeff1(3), GradedMf::monomial(rat(1, 3), 2, 0, 0));
        assert_eq!(f, FormalGroupLaw::from_log(&l).unwrap());
    }

    #[test]
    fn additive_log_is_identity() {
        let f = FormalGroupLaw::<Rational>::additive(6);
        assert_eq!(formal_log(&f).unwrap(), MultiSeries::variable(t_var(), 6, 0));
    }
}
