use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::C64;
use crate::classes::{root_vars, TorusClass};
use crate::error::{Error, Result};
use crate::series::{rat, Coeff, Field, Laurent, MultiSeries, QLaurent, Rational, Zeta3};

fn check_truncation(bound: u32, q_order: i64) -> Result<()> {
    if bound < 2 || q_order < 1 {
        return Err(Error::TruncationTooSmall(alloc::format!(
            "need z-degree bound ≥ 2 and q-order ≥ 1, got {} and {}",
            bound, q_order
        )));
    }
    Ok(())
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(rat(1, 1), |acc, k| acc * rat(k, 1))
}

/// `Φ(τ, z + c)` in `z` to degree `bound`, `q`-order `q_order`, given
/// `u = e^c`, `h = e^(c/2)` and their inverses.
pub fn phi_shifted_series<K: Field>(
    u: &K,
    u_inv: &K,
    h: &K,
    h_inv: &K,
    bound: u32,
    q_order: i64,
) -> Result<MultiSeries<Laurent<K>>> {
    check_truncation(bound, q_order)?;
    let vars = vec!["z".to_string()];
    let sign = |n: u32| if n.is_multiple_of(2) { K::one() } else { K::one().negate() };
    // h e^(z/2) - h^-1 e^(-z/2)
    let prefactor: Vec<Laurent<K>> = (0..bound)
        .map(|n| {
            let c = h.minus(&sign(n).times(h_inv)).scale(&(rat(1, 1) / (factorial(n) * rat(1i64 << n, 1))));
            Laurent::from_terms([(0, c)], q_order)
        })
        .collect();
    let mut acc = MultiSeries::univariate("z", bound, prefactor);
    let u_sum = u.plus(u_inv);
    for k in 1..q_order {
        // 1 + q^2k - q^k (u e^z + u^-1 e^-z)
        let coeffs: Vec<Laurent<K>> = (0..bound)
            .map(|n| {
                if n == 0 {
                    Laurent::from_terms([(0, K::one()), (k, u_sum.negate()), (2 * k, K::one())], q_order)
                } else {
                    let c = u.plus(&sign(n).times(u_inv)).scale(&(rat(-1, 1) / factorial(n)));
                    Laurent::from_terms([(k, c)], q_order)
                }
            })
            .collect();
        acc = acc.mul(&MultiSeries::from_terms(
            vars.clone(),
            bound,
            coeffs.into_iter().enumerate().map(|(n, c)| (vec![n as u32], c)),
        ))?;
    }
    let mut euler = Laurent::<K>::one();
    for k in 1..q_order {
        euler = euler.times(&Laurent::from_terms([(0, K::one()), (k, K::one().negate())], q_order));
    }
    let inv = euler.times(&euler).inverse_with_len(None).ok_or_else(|| Error::Internal("Euler product".into()))?;
    Ok(acc.scale(&inv))
}

/// `Φ(τ, z)` with rational `q`-series coefficients.
pub fn phi_series(bound: u32, q_order: i64) -> Result<MultiSeries<QLaurent>> {
    let one = rat(1, 1);
    phi_shifted_series(&one, &one, &one, &one, bound, q_order)
}

/// `Φ(τ, z - ω)/Φ(τ, -ω)` with `e^ω = ζ`, over `Q(ζ)`.
pub fn s_character_series(bound: u32, q_order: i64) -> Result<MultiSeries<Laurent<Zeta3>>> {
    let zeta = Zeta3::zeta();
    let zeta2 = zeta.conj();
    // e^(-ω/2) = -ζ, e^(ω/2) = 1 + ζ
    let h = zeta.negate();
    let h_inv = Zeta3::one().plus(&zeta);
    let phi = phi_shifted_series(&zeta2, &zeta, &h, &h_inv, bound, q_order)?;
    let c = phi.constant_term();
    let inv = c.inverse_with_len(None).ok_or(Error::ZeroLeadingCoefficient)?;
    Ok(phi.scale(&inv))
}

/// `f(-z)` for a series in one variable.
fn reflect<R: Coeff>(f: &MultiSeries<R>) -> MultiSeries<R> {
    MultiSeries::from_terms(
        f.vars().to_vec(),
        f.bound(),
        f.terms().map(|(m, c)| (m.clone(), if m[0] % 2 == 1 { c.negate() } else { c.clone() })),
    )
}

/// `λ(S) = ∏_i s(z_i) s(-z_i)` in the roots `x_i = 1 - e^-z_i`, over `Q`.
pub fn lambda_s(rank: usize, bound: u32, q_order: i64) -> Result<TorusClass<QLaurent>> {
    let s = s_character_series(bound, q_order)?;
    let even = s.mul(&reflect(&s))?;
    let real = even.try_map_coeffs(|c| {
        if c.terms().all(|(_, z)| z.im == Rational::from_integer(0.into())) {
            Ok(c.map(|z| z.re.clone()))
        } else {
            Err(Error::Internal("s(z)s(-z) has a non-rational coefficient".into()))
        }
    })?;
    // z = -log(1 - x)
    let z_of_x: Vec<QLaurent> = (0..bound)
        .map(|k| if k == 0 { QLaurent::zero() } else { QLaurent::constant(rat(1, k as i64)) })
        .collect();
    let f = MultiSeries::compose(&real, &MultiSeries::univariate("x", bound, z_of_x))?;
    let vars = root_vars(rank);
    let mut acc = MultiSeries::one(vars.clone(), bound);
    for i in 0..rank {
        let fi = MultiSeries::compose(&f, &MultiSeries::variable(vars.clone(), bound, i))?;
        acc = acc.mul(&fi)?;
    }
    TorusClass::new(acc, 0)
}

/// Sums a `z`-series with `q`-series coefficients at numeric `(q, z)`.
pub fn evaluate_series(f: &MultiSeries<QLaurent>, q: C64, z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (m, c) in f.terms() {
        let mut inner = C64::new(0.0, 0.0);
        for (e, r) in c.terms() {
            inner += q.powi(e as i32) * r.to_f64().unwrap_or(f64::NAN);
        }
        acc += z.powi(m[0] as i32) * inner;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::phi_numeric;
    use core::f64::consts::PI;

    #[test]
    fn phi_is_odd_coefficientwise() {
        let phi = phi_series(9, 8).unwrap();
        assert!(phi.constant_term().vanishes());
        for (m, c) in phi.terms() {
            assert!(m[0] % 2 == 1 || c.vanishes(), "z^{} has {:?}", m[0], c);
        }
        assert_eq!(phi.coeff1(1), QLaurent::constant(rat(1, 1)).truncate(8));
    }

    #[test]
    fn phi_series_cubic_term() {
        // the z^3 coefficient is 1/24 - Σ σ1(n) q^n
        let phi = phi_series(5, 6).unwrap();
        let c3 = phi.coeff1(3);
        let expect = [rat(1, 24), rat(-1, 1), rat(-3, 1), rat(-4, 1), rat(-7, 1), rat(-6, 1)];
        for (e, x) in expect.iter().enumerate() {
            assert_eq!(c3.coeff(e as i64).unwrap(), *x, "q^{}", e);
        }
    }

    #[test]
    fn symbolic_matches_numeric() {
        let tau = C64::new(0.1, 1.3);
        let q = (C64::new(0.0, 2.0 * PI) * tau).exp();
        let z = C64::new(0.2, 0.15);
        let exact = phi_numeric(tau, z).unwrap();
        let mut last = f64::INFINITY;
        for (d, n) in [(4, 2), (8, 4), (14, 8)] {
            let approx = evaluate_series(&phi_series(d, n).unwrap(), q, z);
            let err = (approx - exact).norm();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-9);
    }

    #[test]
    fn s_character_augmentation_and_inverse() {
        let s = s_character_series(6, 6).unwrap();
        assert_eq!(s.constant_term(), Laurent::one().truncate(6));
        let prod = s.mul(&s.inverse().unwrap()).unwrap();
        assert!(prod.agrees(&MultiSeries::one(s.vars().to_vec(), 6)));
        for (_, c) in s.terms() {
            assert!(c.valuation().is_none_or(|v| v >= 0));
        }
    }

    #[test]
    fn s_character_matches_numeric() {
        let tau = C64::new(0.0, 1.2);
        let q = (C64::new(0.0, 2.0 * PI) * tau).exp();
        let z = C64::new(0.1, -0.05);
        let s = s_character_series(12, 8).unwrap();
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in s.terms() {
            for (e, x) in c.terms() {
                let (re, im) = x.to_complex();
                acc += C64::new(re, im) * q.powi(e as i32) * z.powi(m[0] as i32);
            }
        }
        let exact = super::super::s_character_numeric(tau, z).unwrap();
        assert!((acc - exact).norm() < 1e-8, "{} vs {}", acc, exact);
    }

    #[test]
    fn lambda_s_is_real_and_unital() {
        let l = lambda_s(2, 5, 5).unwrap();
        assert_eq!(l.series.constant_term(), QLaurent::one().truncate(5));
        assert_eq!(l.degree, 0);
    }

    #[test]
    fn rejects_tiny_truncation() {
        assert!(matches!(phi_series(1, 5), Err(Error::TruncationTooSmall(_))));
        assert!(matches!(phi_series(4, 0), Err(Error::TruncationTooSmall(_))));
    }
}
