use alloc::vec::Vec;

use super::fgl::{formal_log, FormalGroupLaw};
use crate::error::{Error, Result};
use crate::series::{rat, Coeff, MultiSeries};

/// Logarithm of the 2-typical law and its Hazewinkel generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PTypicalData<R> {
    /// `ℓ_i`, the coefficient of `t^(2^i)` in the typical logarithm, `i ≥ 1`.
    pub log_coefficients: Vec<R>,
    pub typical_log: MultiSeries<R>,
    pub v1: R,
    pub v2: R,
}

impl<R: Coeff> PTypicalData<R> {
    pub fn typical_law(&self) -> Result<FormalGroupLaw<R>> {
        FormalGroupLaw::from_log(&self.typical_log)
    }
}

/// Cartier typicalization at 2: keep the `t^(2^i)` terms of the logarithm.
/// Hazewinkel's recursion gives `2ℓ1 = v1` and `2ℓ2 = v2 + ℓ1 v1^2`.
pub fn typicalize_2<R: Coeff>(f: &FormalGroupLaw<R>) -> Result<PTypicalData<R>> {
    if f.bound() < 5 {
        return Err(Error::BoundTooSmall { need: 5, got: f.bound() as i64 });
    }
    let log = formal_log(f)?;
    let mut typical = MultiSeries::zero(log.vars().to_vec(), log.bound());
    let mut log_coefficients = Vec::new();
    let mut k = 1u32;
    while k < log.bound() {
        let c = log.coeff1(k);
        typical.add_term(alloc::vec![k], &c);
        if k > 1 {
            log_coefficients.push(c);
        }
        k *= 2;
    }
    let two = rat(2, 1);
    let l1 = log_coefficients[0].clone();
    let l2 = log_coefficients[1].clone();
    let v1 = l1.scale(&two);
    let v2 = l2.scale(&two).minus(&l1.times(&v1).times(&v1));
    Ok(PTypicalData { log_coefficients, typical_log: typical, v1, v2 })
}
