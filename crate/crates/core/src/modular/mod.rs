//! Eisenstein series, the Tate curve, its Γ1(3) structure and the
//! q-expansion of level-3 modular forms.

mod gamma13;
mod tate;

pub use gamma13::{normalize_gamma1_3, qexpand, strict_iso_to_multiplicative, Gamma13Expansion};
pub use tate::{tate_curve, tate_point_order3, TateCurveData, TatePoint};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::series::{rat, Coeff, QLaurent, Rational};

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += num_bigint::BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += num_bigint::BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// `E_k` for `k ∈ {4, 6}`, known below `q^trunc`.
pub fn eisenstein(k: u32, trunc: i64) -> Result<QLaurent> {
    let c = match k {
        4 => 240,
        6 => -504,
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let mut coeffs: Vec<Rational> = alloc::vec![rat(1, 1)];
    for n in 1..trunc.max(1) {
        coeffs.push(Rational::from_integer(sigma(k - 1, n as u64) * c));
    }
    Ok(QLaurent::new(0, coeffs, trunc))
}

/// `q^n ∏_{k≥1} (1 - q^(nk))^24`, known below `q^trunc`.
pub fn delta_eta(n: u32, trunc: i64) -> QLaurent {
    let n = n as i64;
    let len = (trunc - n).max(0) as usize;
    // ∏ (1 - q^(nk)) as a dense power series, then its 24th power.
    let mut p: Vec<Rational> = alloc::vec![rat(0, 1); len];
    if len > 0 {
        p[0] = rat(1, 1);
    }
    let mut k = n;
    while (k as usize) < len {
        for i in (k as usize..len).rev() {
            let d = p[i - k as usize].clone();
            p[i] -= d;
        }
        k += n;
    }
    let base = QLaurent::new(0, p, len as i64);
    let mut acc = QLaurent::new(0, alloc::vec![rat(1, 1)], len as i64);
    for _ in 0..24 {
        acc = acc.times(&base);
    }
    acc.shift(n)
}
