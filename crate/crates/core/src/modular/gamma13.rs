use alloc::string::ToString;

use super::tate::{certify_order3, tate_curve, tate_point_order3, TatePoint};
use crate::curve::{fgl_from_curve, formal_log, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::graded::GradedMf;
use crate::series::{rat, Coeff, MultiSeries, QLaurent};

/// `a1(q)` and `a3(q)` of the Tate curve with its Γ1(3) structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma13Expansion {
    pub a1: QLaurent,
    pub a3: QLaurent,
    /// Both series are known below `q^trunc`.
    pub trunc: i64,
}

// Extra q-orders computed internally to absorb the division by the
// tangent denominator.
const MARGIN: i64 = 4;

impl Gamma13Expansion {
    /// Normalizes `Tate(q^3)` at the point `u = q`, known below `q^trunc`.
    pub fn compute(trunc: i64) -> Result<Self> {
        let work = trunc + MARGIN;
        let tate = tate_curve(work / 3 + 1)?.substitute_q_power(3);
        let p = tate_point_order3(work)?;
        let mut curve = tate.curve();
        curve.a4 = curve.a4.truncate(work);
        curve.a6 = curve.a6.truncate(work);
        certify_order3(&curve, &p)?;
        let e = normalize_gamma1_3(&curve, &p)?;
        if e.trunc < trunc {
            return Err(Error::TruncationTooSmall(alloc::format!(
                "normalization certified only below q^{}",
                e.trunc
            )));
        }
        Ok(e.truncate(trunc))
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        Gamma13Expansion { a1: self.a1.truncate(trunc), a3: self.a3.truncate(trunc), trunc: self.trunc.min(trunc) }
    }

    pub fn curve(&self) -> WeierstrassCurve<QLaurent> {
        WeierstrassCurve::gamma1_3(self.a1.clone(), self.a3.clone())
    }

    /// `a3^3 (a1^3 - 27 a3)`.
    pub fn delta(&self) -> QLaurent {
        let a3 = &self.a3;
        a3.pow(3).times(&self.a1.pow(3).minus(&a3.scale(&rat(27, 1))))
    }

    pub fn delta_inverse(&self) -> Result<QLaurent> {
        self.delta().try_recip().ok_or(Error::ZeroLeadingCoefficient)
    }
}

/// Moves the order-3 point `p` to `(0, 0)` with horizontal tangent, which
/// brings the curve to the form `y^2 + a1 xy + a3 y = x^3`.
pub fn normalize_gamma1_3(curve: &WeierstrassCurve<QLaurent>, p: &TatePoint) -> Result<Gamma13Expansion> {
    let (r, t) = p;
    let c = curve;
    let num = c
        .a4
        .plus(&r.times(&c.a2).scale(&rat(2, 1)))
        .minus(&t.times(&c.a1))
        .plus(&r.times(r).scale(&rat(3, 1)));
    let den = c.a3.plus(&r.times(&c.a1)).plus(&t.scale(&rat(2, 1)));
    let s = num.div(&den).ok_or(Error::ZeroLeadingCoefficient)?;
    let n = c.change_coordinates(r, &s, t);
    for (name, v) in [("a2", &n.a2), ("a4", &n.a4), ("a6", &n.a6)] {
        if let Some((e, _)) = v.terms().next() {
            return Err(Error::ResidualCoefficient { name: name.to_string(), exponent: e });
        }
    }
    let trunc = n.a1.trunc().min(n.a3.trunc());
    Ok(Gamma13Expansion { a1: n.a1.truncate(trunc), a3: n.a3.truncate(trunc), trunc })
}

/// `a1 ↦ a1(q)`, `a3 ↦ a3(q)`, `Δ^-1 ↦ Δ(q)^-1`.
pub fn qexpand(f: &GradedMf, e: &Gamma13Expansion) -> Result<QLaurent> {
    let di = if f.pole() > 0 { e.delta_inverse()? } else { QLaurent::one() };
    Ok(f.evaluate(&e.a1, &e.a3, &di))
}

/// `θ = exp_mult ∘ ℓ_tate` with `exp_mult(z) = 1 - e^-z`, a strict
/// isomorphism from the Tate law onto `x + y - xy`.
pub fn strict_iso_to_multiplicative(e: &Gamma13Expansion, bound: u32) -> Result<MultiSeries<QLaurent>> {
    if bound < 2 {
        return Err(Error::BoundTooSmall { need: 2, got: bound as i64 });
    }
    let f = fgl_from_curve(&e.curve(), bound)?;
    let log = formal_log(&f)?;
    // 1 - e^-z = -(e^(-z) - 1)
    let neg_z = MultiSeries::variable(alloc::vec!["t".to_string()], bound, 0).neg();
    let exp_mult = MultiSeries::compose(&MultiSeries::<QLaurent>::expm1("t", bound), &neg_z)?.neg();
    let theta = MultiSeries::compose(&exp_mult, &log)?;
    let lhs = MultiSeries::compose(&theta, f.series())?;
    let x = MultiSeries::variable(f.series().vars().to_vec(), bound, 0);
    let y = MultiSeries::variable(f.series().vars().to_vec(), bound, 1);
    let tx = MultiSeries::compose(&theta, &x)?;
    let ty = MultiSeries::compose(&theta, &y)?;
    let rhs = tx.add(&ty)?.sub(&tx.mul(&ty)?)?;
    if !lhs.agrees(&rhs) {
        return Err(Error::Internal("θ is not a homomorphism onto the multiplicative law".into()));
    }
    Ok(theta)
}
