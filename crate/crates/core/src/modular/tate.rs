use alloc::vec::Vec;

use num_bigint::BigInt;

use super::sigma;
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::series::{rat, Coeff, QLaurent, Rational};

/// `y^2 + xy = x^3 + B x + C`.
#[derive(Clone, Debug, PartialEq)]
pub struct TateCurveData {
    pub b: QLaurent,
    pub c: QLaurent,
    pub trunc: i64,
}

impl TateCurveData {
    pub fn curve(&self) -> WeierstrassCurve<QLaurent> {
        WeierstrassCurve::new(
            QLaurent::one(),
            QLaurent::zero(),
            QLaurent::zero(),
            self.b.clone(),
            self.c.clone(),
        )
    }

    /// The curve over `q ↦ q^n`.
    pub fn substitute_q_power(&self, n: u32) -> Self {
        TateCurveData {
            b: self.b.substitute_q_power(n),
            c: self.c.substitute_q_power(n),
            trunc: self.trunc * n as i64,
        }
    }
}

/// `B = -5 Σ σ3(n) q^n` and `C = -Σ (5σ3(n) + 7σ5(n))/12 q^n`, known below
/// `q^trunc`.
pub fn tate_curve(trunc: i64) -> Result<TateCurveData> {
    if trunc < 2 {
        return Err(Error::TruncationTooSmall(alloc::format!("Tate curve needs q-order 2, got {}", trunc)));
    }
    let mut b: Vec<Rational> = alloc::vec![rat(0, 1)];
    let mut c: Vec<Rational> = alloc::vec![rat(0, 1)];
    for n in 1..trunc as u64 {
        let s3 = sigma(3, n);
        let s5 = sigma(5, n);
        b.push(Rational::from_integer(&s3 * -5));
        c.push(-Rational::new(s3 * 5 + s5 * 7, BigInt::from(12)));
    }
    let data = TateCurveData { b: QLaurent::new(0, b, trunc), c: QLaurent::new(0, c, trunc), trunc };
    for (what, s) in [("B", &data.b), ("C", &data.c)] {
        if let Some((e, _)) = s.terms().find(|(_, c)| !c.is_integer()) {
            return Err(Error::IntegralityFailure { what: what.into(), exponent: e });
        }
    }
    Ok(data)
}

/// A point `(x, y)` with coordinates in `Q((q))`.
pub type TatePoint = (QLaurent, QLaurent);

// Σ_{k≥0} C(k+e-1, e-1) q^(n(k+a)), i.e. v^a/(1-v)^e with v = q^n.
fn geometric_term(n: i64, a: i64, e: i64, trunc: i64, out: &mut [Rational]) {
    let mut k = 0i64;
    let mut binom = BigInt::from(1);
    loop {
        let exp = n * (k + a);
        if exp >= trunc {
            break;
        }
        out[exp as usize] += Rational::from_integer(binom.clone());
        k += 1;
        binom = binom * (k + e - 1) / k;
    }
}

/// The point `u = q` on `Tate(q^3)`, from the lattice sums
/// `X = Σ_d q̃^d u/(1 - q̃^d u)^2 - 2 Σ_{d≥1} q̃^d/(1 - q̃^d)^2`,
/// `Y = Σ_d (q̃^d u)^2/(1 - q̃^d u)^3 + Σ_{d≥1} q̃^d/(1 - q̃^d)^2`, `q̃ = q^3`.
pub fn tate_point_order3(trunc: i64) -> Result<TatePoint> {
    if trunc < 3 {
        return Err(Error::TruncationTooSmall(alloc::format!(
            "the order-3 point needs q-order 3, got {}",
            trunc
        )));
    }
    let len = trunc as usize;
    let mut x = alloc::vec![rat(0, 1); len];
    let mut y = alloc::vec![rat(0, 1); len];
    let mut corr = alloc::vec![rat(0, 1); len];
    let mut d = 0;
    while 3 * d < trunc {
        // d ≥ 0 gives v = q^(3d+1); d < 0 gives v^-1 with v = q^(3d+2).
        let n1 = 3 * d + 1;
        let n2 = 3 * d + 2;
        geometric_term(n1, 1, 2, trunc, &mut x);
        geometric_term(n2, 1, 2, trunc, &mut x);
        geometric_term(n1, 2, 3, trunc, &mut y);
        let mut neg = alloc::vec![rat(0, 1); len];
        geometric_term(n2, 1, 3, trunc, &mut neg);
        for (yi, ni) in y.iter_mut().zip(neg) {
            *yi -= ni;
        }
        if d >= 1 {
            geometric_term(3 * d, 1, 2, trunc, &mut corr);
        }
        d += 1;
    }
    for i in 0..len {
        x[i] -= &corr[i] * rat(2, 1);
        y[i] += &corr[i];
    }
    Ok((QLaurent::new(0, x, trunc), QLaurent::new(0, y, trunc)))
}

/// `2P` by the tangent construction.
pub(crate) fn double_point(c: &WeierstrassCurve<QLaurent>, p: &TatePoint) -> Result<TatePoint> {
    let (x, y) = p;
    let num = x
        .times(x)
        .scale(&rat(3, 1))
        .plus(&c.a2.times(x).scale(&rat(2, 1)))
        .plus(&c.a4)
        .minus(&c.a1.times(y));
    let den = y.scale(&rat(2, 1)).plus(&c.a1.times(x)).plus(&c.a3);
    let lambda = num
        .div(&den)
        .ok_or_else(|| Error::TruncationTooSmall("tangent slope has no known leading term".into()))?;
    let nu = y.minus(&lambda.times(x));
    let x2 = lambda.times(&lambda).plus(&c.a1.times(&lambda)).minus(&c.a2).minus(&x.scale(&rat(2, 1)));
    let y2 = lambda.plus(&c.a1).times(&x2).negate().minus(&nu).minus(&c.a3);
    Ok((x2, y2))
}

/// Checks `[3]P = O` as `2P = -P`, returning the q-order certified.
pub fn certify_order3(c: &WeierstrassCurve<QLaurent>, p: &TatePoint) -> Result<i64> {
    let (x2, y2) = double_point(c, p)?;
    let (xn, yn) = c.negate_point(&p.0, &p.1);
    let order = x2.trunc().min(y2.trunc());
    if order < 3 {
        return Err(Error::TruncationTooSmall(alloc::format!("2P known only below q^{}", order)));
    }
    if !x2.agrees(&xn) || !y2.agrees(&yn) {
        return Err(Error::Internal("the point is not of order 3".into()));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::delta_eta;

    fn ints(s: &QLaurent, n: usize) -> Vec<i64> {
        (0..n as i64).map(|e| i64::try_from(s.coeff(e).unwrap().to_integer()).unwrap()).collect()
    }

    fn sigma_brute(k: u32, n: u64) -> i64 {
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as i64).pow(k)).sum()
    }

    #[test]
    fn leading_coefficients() {
        let t = tate_curve(4).unwrap();
        assert_eq!(ints(&t.b, 4), [0, -5, -45, -140]);
        assert_eq!(ints(&t.c, 4), [0, -1, -23, -154]);
    }

    #[test]
    fn coefficients_match_divisor_sums() {
        let t = tate_curve(25).unwrap();
        for n in 1..25u64 {
            let b = -5 * sigma_brute(3, n);
            let c = -(5 * sigma_brute(3, n) + 7 * sigma_brute(5, n)) / 12;
            assert_eq!(t.b.coeff(n as i64).unwrap(), rat(b, 1));
            assert_eq!(t.c.coeff(n as i64).unwrap(), rat(c, 1));
        }
    }

    #[test]
    fn tate_discriminant_is_eta_product() {
        let t = tate_curve(30).unwrap();
        assert!(t.curve().discriminant().agrees(&delta_eta(1, 30)));
    }

    #[test]
    fn point_lies_on_tate_of_q_cubed() {
        let n = 30;
        let t = tate_curve(n / 3 + 1).unwrap().substitute_q_power(3);
        let c = t.curve();
        let p = tate_point_order3(n).unwrap();
        assert_eq!(p.0.coeff(1), Some(rat(1, 1)));
        assert!(p.0.coeff(0).unwrap().is_zero());
        assert!(c.residual(&p.0, &p.1).truncate(n).vanishes());
    }

    #[test]
    fn point_has_order_three() {
        let n = 24;
        let c = tate_curve(n / 3 + 1).unwrap().substitute_q_power(3).curve();
        let p = tate_point_order3(n).unwrap();
        assert!(certify_order3(&c, &p).unwrap() >= n - 4);
    }

    #[test]
    fn short_truncation_is_rejected() {
        assert!(tate_curve(1).is_err());
        assert!(tate_point_order3(2).is_err());
    }
}
