use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::classes::{Partition, PontryaginPoly};
use crate::error::{Error, Result};
use crate::jacobi::phi_series;
use crate::series::{rat, Coeff, MultiSeries, QLaurent, Rational};

/// Coefficients `c_j` of `z^(2j)`, `j = 1..=k`, in `log(z / Φ(τ, z))`.
pub fn witten_log_series(k: u32, q_order: i64) -> Result<Vec<QLaurent>> {
    let bound = 2 * k + 2;
    let phi = phi_series(bound + 1, q_order)?;
    // Φ = z U(z)
    let u = MultiSeries::from_terms(
        phi.vars().to_vec(),
        bound,
        phi.terms().filter(|(m, _)| m[0] >= 1).map(|(m, c)| (alloc::vec![m[0] - 1], c.clone())),
    );
    let log_q = u.log()?.neg();
    Ok((1..=k).map(|j| log_q.coeff1(2 * j)).collect())
}

/// Power sums `s_j = Σ z_i^(2j)`, `j = 1..=k`, as polynomials in
/// `p_j = e_j(z_1^2, ...)`, by Newton's identities.
pub fn power_sums_in_pontryagin(k: u32) -> Vec<PontryaginPoly<Rational>> {
    let p = |j: u32| PontryaginPoly::from_terms([(alloc::vec![j], rat(1, 1))]);
    let mut s: Vec<PontryaginPoly<Rational>> = Vec::new();
    for j in 1..=k {
        // s_j = Σ_{i<j} (-1)^(i-1) p_i s_(j-i) + (-1)^(j-1) j p_j
        let sign = |i: u32| if i % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
        let mut acc = p(j).scale(&(sign(j) * rat(j as i64, 1)));
        for i in 1..j {
            let t = p(i).mul_truncated(&s[(j - i - 1) as usize], k).scale(&sign(i));
            acc = acc.add(&t);
        }
        s.push(acc);
    }
    s
}

/// `∏ Q(z_i)` in Pontryagin classes up to weight `k`, given
/// `log Q(z) = Σ c_j z^(2j)`.
pub fn multiplicative_sequence<R: Coeff>(log_coeffs: &[R], k: u32) -> Result<PontryaginPoly<R>> {
    let sums = power_sums_in_pontryagin(k);
    let mut exponent = PontryaginPoly::zero();
    for (c, s) in log_coeffs.iter().zip(&sums) {
        exponent = exponent.add(&s.map_coeffs(|r| R::from_rational(r)).scale(c));
    }
    exponent.exp_truncated(k)
}

/// The Witten genus of a `4k`-manifold with the given Pontryagin numbers
/// (partition `[i, j, ...]` for `p_i p_j ...`), as a q-series.
pub fn witten_genus_series(numbers: &BTreeMap<Partition, i64>, dim: u32, q_order: i64) -> Result<QLaurent> {
    if !dim.is_multiple_of(4) {
        return Err(Error::InconsistentPartition(alloc::format!("dimension {} is not a multiple of 4", dim)));
    }
    let k = dim / 4;
    for part in numbers.keys() {
        let w: u32 = part.iter().sum();
        if w != k || part.contains(&0) {
            return Err(Error::InconsistentPartition(alloc::format!(
                "partition {:?} does not have weight {}",
                part, k
            )));
        }
    }
    if numbers.values().all(|&n| n == 0) {
        return Ok(QLaurent::zero_to(q_order));
    }
    let c = witten_log_series(k, q_order)?;
    let seq = multiplicative_sequence(&c, k)?;
    let mut acc = QLaurent::zero();
    for (part, &n) in numbers {
        if n != 0 {
            acc = acc.plus(&seq.coeff(part).scale(&rat(n, 1)));
        }
    }
    Ok(acc.truncate(q_order))
}
