//! Seeded random classes for property tests and the verification suite.

use alloc::vec::Vec;

use rand::Rng;

use crate::classes::{pontryagin::partitions, pontryagin_series, root_vars, PontryaginPoly, RootLaw, TorusClass};
use crate::error::Result;
use crate::graded::{modular_basis, GradedMf};
use crate::series::{rat, Coeff, MultiSeries};

/// A random combination of basis forms of weight `w`, pole order `≤ max_pole`,
/// with small integer coefficients. May be zero.
pub fn random_form<G: Rng + ?Sized>(rng: &mut G, w: i64, max_pole: u32) -> GradedMf {
    let mut g = GradedMf::zero();
    for b in modular_basis(w, max_pole) {
        if rng.random_bool(0.5) {
            let c = rng.random_range(-3i64..=3);
            g = g.plus(&b.scale(&rat(c, 1)));
        }
    }
    g
}

/// A random nonzero rational.
pub fn random_rational<G: Rng + ?Sized>(rng: &mut G) -> crate::series::Rational {
    let n = rng.random_range(1i64..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    rat(n, rng.random_range(1i64..=4))
}

/// Random polynomial in `p1..pm` of total weight `≤ max_weight` with
/// coefficients from `coeff`.
pub fn random_pontryagin_poly<G: Rng + ?Sized, R: Coeff>(
    rng: &mut G,
    m: u32,
    max_weight: u32,
    mut coeff: impl FnMut(&mut G, &[u32]) -> R,
) -> PontryaginPoly<R> {
    let mut p = PontryaginPoly::zero();
    for n in 1..=max_weight {
        for part in partitions(n, m) {
            if rng.random_bool(0.6) {
                let c = coeff(rng, &part);
                p.add_term(part, &c);
            }
        }
    }
    p
}

/// A random homogeneous TMF1(3) class of cohomological degree `2d` on the
/// rank-`m` torus: `Σ g_I p^I` with `g_I` of weight `2|I| - d`.
pub fn random_tmf_class<G: Rng + ?Sized>(
    rng: &mut G,
    m: usize,
    degree: i64,
    bound: u32,
    max_pole: u32,
) -> Result<TorusClass<GradedMf>> {
    let d = degree / 2;
    let law = RootLaw::universal(bound)?;
    let kmax = (m as u32).min((bound - 1) / 2);
    let ps = pontryagin_series(m, kmax as usize, &law, bound)?;
    let max_weight = (bound - 1) / 2;
    let mut series = MultiSeries::zero(root_vars(m), bound);
    let mut terms: Vec<(Vec<u32>, GradedMf)> = Vec::new();
    for n in 0..=max_weight {
        for part in partitions(n, kmax) {
            let g = random_form(rng, 2 * n as i64 - d, max_pole);
            if !g.is_zero() {
                terms.push((part, g));
            }
        }
    }
    let poly = PontryaginPoly::from_terms(terms);
    if !poly.is_zero() {
        series = poly.evaluate(&ps)?;
    }
    TorusClass::new(series, degree)
}
