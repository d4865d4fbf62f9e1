use crate::classes::TorusClass;
use crate::error::{Error, Result};
use crate::graded::GradedMf;
use crate::lift::{CharacterSquare, LiftBounds, LiftReport};
use crate::series::{MultiSeries, QLaurent};

pub use super::symbolic::lambda_s;

/// A formal product `S^s_power · tmf`.
#[derive(Clone, Debug, PartialEq)]
pub struct SProduct {
    pub s_power: u32,
    pub tmf: TorusClass<GradedMf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiReport {
    pub lift: LiftReport,
    /// Present when the twisted class lifts.
    pub product: Option<SProduct>,
    /// `q^-shift λ(S)^m λ(lift)` reproduces the input.
    pub round_trip: bool,
}

impl PhiReport {
    pub fn is_liftable(&self) -> bool {
        self.product.is_some()
    }
}

/// Lifts `q^shift V̂ λ(S)^-m` against the level-3 span and returns the
/// lift multiplied formally by `S^m`.
///
/// Liftability is certified only relative to that span.
pub fn phi_pipeline(
    square: &CharacterSquare,
    v_hat: &TorusClass<QLaurent>,
    m_level: u32,
    shift: i64,
    bounds: &LiftBounds,
) -> Result<PhiReport> {
    let bound = v_hat.series.bound().min(bounds.x_degree);
    let ls = lambda_s(v_hat.rank(), bound, bounds.q_order)?;
    let ls_m = ls.series.pow(m_level)?;
    let ls_m_inv = ls_m.inverse()?;
    let shifted = v_hat.series.truncate(bound).map_coeffs(|c| c.shift(shift));
    let w = TorusClass::new(shifted.mul(&ls_m_inv)?, v_hat.degree)?;
    let lift = square.lift_from_tate(&w, bounds)?;
    let Some(t) = lift.lift().cloned() else {
        return Ok(PhiReport { lift, product: None, round_trip: false });
    };
    let back = square.miller_character(&t)?.series.truncate(bound);
    let rebuilt: MultiSeries<QLaurent> = back.mul(&ls_m)?.map_coeffs(|c| c.shift(-shift));
    let round_trip = rebuilt.agrees(&v_hat.series.truncate(bound));
    if !round_trip {
        return Err(Error::Internal("φ pipeline does not reproduce its input".into()));
    }
    Ok(PhiReport { lift, product: Some(SProduct { s_power: m_level, tmf: t }), round_trip })
}
