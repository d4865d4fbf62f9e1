//! The Weierstrass Φ-function, slash actions on Jacobi forms and the
//! loop-group character pipeline.

mod pipeline;
mod symbolic;

pub use pipeline::{lambda_s, phi_pipeline, PhiReport};
pub use symbolic::{evaluate_series, phi_series, phi_shifted_series, s_character_series};

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Terms below this size are dropped from products and sums.
const EPS: f64 = 1e-18;
const MAX_TERMS: usize = 200_000;

fn nome(tau: C64) -> Result<C64> {
    if tau.im <= 0.0 {
        return Err(Error::NotUpperHalfPlane(tau.im));
    }
    Ok((C64::new(0.0, 2.0 * PI) * tau).exp())
}

/// `Φ(τ, z) = (e^(z/2) - e^(-z/2)) ∏_k (1 - q^k e^z)(1 - q^k e^-z)/(1 - q^k)^2`.
pub fn phi_numeric(tau: C64, z: C64) -> Result<C64> {
    let q = nome(tau)?;
    let ez = z.exp();
    let ezi = (-z).exp();
    let mut acc = (z * 0.5).exp() - (-z * 0.5).exp();
    let scale = ez.norm().max(ezi.norm());
    let mut qk = q;
    for _ in 0..MAX_TERMS {
        if qk.norm() * scale < EPS {
            break;
        }
        let one = C64::new(1.0, 0.0);
        let den = one - qk;
        acc = acc * (one - qk * ez) * (one - qk * ezi) / (den * den);
        qk *= q;
    }
    Ok(acc)
}

/// `Φ(τ, z - ω) / Φ(τ, -ω)` with `ω = 2πi/3`.
pub fn s_character_numeric(tau: C64, z: C64) -> Result<C64> {
    let omega = C64::new(0.0, 2.0 * PI / 3.0);
    Ok(phi_numeric(tau, z - omega)? / phi_numeric(tau, -omega)?)
}

fn lambert(tau: C64, power: i32) -> Result<C64> {
    let q = nome(tau)?;
    let mut acc = C64::new(0.0, 0.0);
    let mut qn = q;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        let term = qn * nf.powi(power) / (C64::new(1.0, 0.0) - qn);
        acc += term;
        if term.norm() < EPS * acc.norm().max(1.0) {
            break;
        }
        qn *= q;
    }
    Ok(acc)
}

/// `E4(τ) = 1 + 240 Σ n^3 q^n/(1 - q^n)`.
pub fn e4_numeric(tau: C64) -> Result<C64> {
    Ok(C64::new(1.0, 0.0) + lambert(tau, 3)? * 240.0)
}

/// `E6(τ) = 1 - 504 Σ n^5 q^n/(1 - q^n)`.
pub fn e6_numeric(tau: C64) -> Result<C64> {
    Ok(C64::new(1.0, 0.0) - lambert(tau, 5)? * 504.0)
}

/// An integer matrix `[a, b; c, d]`.
pub type Matrix = [i64; 4];

pub fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// `(J|M)(z, τ) = (cτ+d)^-w e^(-2πi m c Σz_j^2/(cτ+d)) J(z/(cτ+d), (aτ+b)/(cτ+d))`.
pub fn gamma_action<'a, F>(
    j: F,
    m: Matrix,
    weight: i32,
    index: f64,
) -> Result<impl Fn(&[C64], C64) -> Result<C64> + 'a>
where
    F: Fn(&[C64], C64) -> Result<C64> + 'a,
{
    let [a, b, c, d] = m;
    let det = a * d - b * c;
    if det != 1 {
        return Err(Error::NotUnimodular(det));
    }
    Ok(move |z: &[C64], tau: C64| {
        let ctd = tau * c as f64 + d as f64;
        let tau2 = (tau * a as f64 + b as f64) / ctd;
        let z2: Vec<C64> = z.iter().map(|zj| zj / ctd).collect();
        let sq: C64 = z.iter().map(|zj| zj * zj).sum();
        let index_factor = (C64::new(0.0, -2.0 * PI * index * c as f64) * sq / ctd).exp();
        Ok(ctd.powi(-weight) * index_factor * j(&z2, tau2)?)
    })
}

/// All `M ≠ I` in `Γ(n)` with entries bounded by `height`.
pub fn gamma_n_elements(n: i64, height: i64) -> Vec<Matrix> {
    let mut out = Vec::new();
    let r = |x: i64, want: i64| (x - want).rem_euclid(n) == 0;
    for a in -height..=height {
        for b in -height..=height {
            for c in -height..=height {
                for d in -height..=height {
                    if a * d - b * c != 1 || [a, b, c, d] == [1, 0, 0, 1] {
                        continue;
                    }
                    if r(a, 1) && r(d, 1) && r(b, 0) && r(c, 0) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub max_deviation: f64,
    pub worst: Option<Matrix>,
    pub matrices: usize,
    pub samples: usize,
    pub pass: bool,
}

/// Relative deviation `|J|M - J| / max(1, |J|)` over `Γ(n)` elements of
/// bounded height and the given sample points.
pub fn check_invariance<F>(
    j: &F,
    level: i64,
    height: i64,
    weight: i32,
    index: f64,
    samples: &[(Vec<C64>, C64)],
    tol: f64,
) -> Result<InvarianceReport>
where
    F: Fn(&[C64], C64) -> Result<C64>,
{
    if level < 1 {
        return Err(Error::InvalidArgument(alloc::format!("level {}", level)));
    }
    let mats = gamma_n_elements(level, height);
    let mut worst = None;
    let mut max_dev = 0.0f64;
    for m in &mats {
        let jm = gamma_action(j, *m, weight, index)?;
        for (z, tau) in samples {
            let base = j(z, *tau)?;
            let moved = jm(z, *tau)?;
            let dev = (moved - base).norm() / base.norm().max(1.0);
            if !(dev <= max_dev) {
                max_dev = dev;
                worst = Some(*m);
            }
        }
    }
    Ok(InvarianceReport {
        max_deviation: max_dev,
        worst,
        matrices: mats.len(),
        samples: samples.len(),
        pass: max_dev < tol,
    })
}

/// `n = 24(m + g)` with Coxeter number `g = d - 2` for `Spin(d)`.
pub fn level_for(m: i64, d: i64) -> Result<i64> {
    if d < 3 {
        return Err(Error::InvalidArgument(alloc::format!("d = {} is below 3", d)));
    }
    Ok(24 * (m + d - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn taus() -> [C64; 3] {
        [c(0.1, 1.1), c(-0.3, 0.9), c(0.45, 1.4)]
    }

    #[test]
    fn phi_is_odd_and_vanishes_at_zero() {
        for tau in taus() {
            assert_eq!(phi_numeric(tau, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
            for z in [c(0.3, 0.2), c(-0.7, 1.1)] {
                let s = phi_numeric(tau, z).unwrap() + phi_numeric(tau, -z).unwrap();
                assert!(s.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn quasi_periodicity() {
        let tau = c(0.2, 1.0);
        let z = c(0.3, 0.4);
        let a = phi_numeric(tau, z + c(0.0, 2.0 * PI)).unwrap();
        assert!((a + phi_numeric(tau, z).unwrap()).norm() < 1e-9);
        // z ↦ z + 2πiτ multiplies by -q^(-1/2) e^(-z)
        let shift = c(0.0, 2.0 * PI) * tau;
        let qh = (c(0.0, PI) * tau).exp();
        let lhs = phi_numeric(tau, z + shift).unwrap();
        let rhs = -phi_numeric(tau, z).unwrap() * (-z).exp() / qh;
        assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn eisenstein_invariance() {
        let samples: Vec<(Vec<C64>, C64)> = taus().iter().map(|t| (Vec::new(), *t)).collect();
        let e4 = |_: &[C64], t: C64| e4_numeric(t);
        let e6 = |_: &[C64], t: C64| e6_numeric(t);
        assert!(check_invariance(&e4, 1, 1, 4, 0.0, &samples, 1e-9).unwrap().pass);
        assert!(check_invariance(&e6, 1, 1, 6, 0.0, &samples, 1e-9).unwrap().pass);
        assert!(!check_invariance(&e4, 1, 1, 2, 0.0, &samples, 1e-9).unwrap().pass);
    }

    #[test]
    fn constant_is_invariant() {
        let one = |_: &[C64], _: C64| Ok(c(1.0, 0.0));
        let samples = [(alloc::vec![c(0.1, 0.1)], c(0.0, 1.0))];
        let r = check_invariance(&one, 3, 4, 0, 0.0, &samples, 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn slash_action_is_a_right_action() {
        let phi = |z: &[C64], t: C64| phi_numeric(t, z[0]);
        let m1 = [1, 1, 0, 1];
        let m2 = [0, -1, 1, 0];
        let z = [c(0.2, 0.1)];
        let tau = c(0.1, 1.2);
        let step = gamma_action(gamma_action(phi, m1, -1, 0.5).unwrap(), m2, -1, 0.5).unwrap();
        let once = gamma_action(phi, mat_mul(&m1, &m2), -1, 0.5).unwrap();
        let a = step(&z, tau).unwrap();
        let b = once(&z, tau).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn translation_has_no_prefactor() {
        let e4 = |_: &[C64], t: C64| e4_numeric(t);
        let moved = gamma_action(e4, [1, 1, 0, 1], 4, 0.0).unwrap();
        let tau = c(0.3, 0.8);
        assert!((moved(&[], tau).unwrap() - e4_numeric(tau + 1.0).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(phi_numeric(c(0.0, -1.0), c(0.0, 0.0)), Err(Error::NotUpperHalfPlane(_))));
        let e4 = |_: &[C64], t: C64| e4_numeric(t);
        assert!(matches!(gamma_action(e4, [2, 0, 0, 1], 4, 0.0).map(|_| ()), Err(Error::NotUnimodular(2))));
    }

    #[test]
    fn levels() {
        assert_eq!(level_for(1, 5).unwrap(), 96);
        assert_eq!(level_for(0, 3).unwrap(), 24);
        assert_eq!(level_for(2, 4).unwrap(), 96);
        assert!(level_for(1, 2).is_err());
    }

    #[test]
    fn s_character_is_one_at_zero() {
        let v = s_character_numeric(c(0.1, 1.0), c(0.0, 0.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
    }
}
