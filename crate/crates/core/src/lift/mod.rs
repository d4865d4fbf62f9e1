//! Miller, Chern and Dold characters, the lift test from `K_Tate` classes
//! and the Witten genus.

pub mod sample;
mod witten;

pub use witten::{multiplicative_sequence, power_sums_in_pontryagin, witten_genus_series, witten_log_series};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::classes::{root_vars, weyl_invariance_check, z_vars, RootLaw, TorusClass};
use crate::curve::formal_log;
use crate::error::{Error, Result};
use crate::graded::{modular_basis, GradedMf};
use crate::modular::{strict_iso_to_multiplicative, Gamma13Expansion};
use crate::series::{solve_exact, Coeff, LinearSystem, Monomial, MultiSeries, QLaurent, Rational, Solution};

/// Truncations for a lift: q-order `N`, root degree `D` and Δ-pole order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftBounds {
    pub q_order: i64,
    pub x_degree: u32,
    pub max_pole: u32,
}

/// The truncations a lift answer actually holds at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q_order: i64,
    pub x_degree: u32,
    pub max_pole: u32,
}

/// A coefficient outside the modular span: `relation · q-coefficients`
/// annihilates every basis expansion but equals `residual` on the input.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Cohomological degree of the failing Chern-character component.
    pub degree: u32,
    pub monomial: Monomial,
    pub weight: i64,
    pub relation: Vec<(i64, Rational)>,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lifted(TorusClass<GradedMf>),
    NotLiftable(Witness),
    /// A coefficient has a pole deeper than the allowed Δ-pole order.
    Inconclusive { degree: u32, monomial: Monomial, valuation: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftReport {
    pub outcome: LiftOutcome,
    pub certificate: Certificate,
    /// Number of membership solves, each of full column rank.
    pub solves: usize,
}

impl LiftReport {
    pub fn is_liftable(&self) -> bool {
        matches!(self.outcome, LiftOutcome::Lifted(_))
    }

    pub fn lift(&self) -> Option<&TorusClass<GradedMf>> {
        match &self.outcome {
            LiftOutcome::Lifted(t) => Some(t),
            _ => None,
        }
    }
}

/// The four corners: TMF1(3) and `K_Tate` classes on the torus and their
/// rationalizations, at fixed truncations.
#[derive(Clone, Debug)]
pub struct CharacterSquare {
    pub expansion: Gamma13Expansion,
    delta_inv: QLaurent,
    bound: u32,
    /// `ℓ_F` of the universal law.
    pub log: MultiSeries<GradedMf>,
    /// `exp_F = ℓ_F^-1`.
    pub exp: MultiSeries<GradedMf>,
    /// Strict isomorphism from the Tate law to `x + y - xy`.
    pub theta: MultiSeries<QLaurent>,
    theta_inv: MultiSeries<QLaurent>,
    /// `x ↦ 1 - e^-z`.
    chern: MultiSeries<QLaurent>,
}

impl CharacterSquare {
    /// `q_trunc` is the q-order of `a1(q)`, `a3(q)`; `bound` is the root degree.
    pub fn new(q_trunc: i64, bound: u32) -> Result<Self> {
        let expansion = Gamma13Expansion::compute(q_trunc)?;
        let delta_inv = expansion.delta_inverse()?;
        let law = RootLaw::universal(bound)?;
        let log = formal_log(&law.law)?;
        let exp = log.reverse()?;
        let theta = strict_iso_to_multiplicative(&expansion, bound)?;
        let theta_inv = theta.reverse()?;
        let neg_z = MultiSeries::variable(alloc::vec!["t".to_string()], bound, 0).neg();
        let chern = MultiSeries::compose(&MultiSeries::<QLaurent>::expm1("t", bound), &neg_z)?.neg();
        Ok(CharacterSquare { expansion, delta_inv, bound, log, exp, theta, theta_inv, chern })
    }

    /// A square with enough q-precision for lifts at `b`.
    pub fn for_bounds(b: &LiftBounds) -> Result<Self> {
        Self::new(b.q_order + 6 * b.max_pole as i64 + 6, b.x_degree)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn qexpand(&self, f: &GradedMf) -> QLaurent {
        f.evaluate(&self.expansion.a1, &self.expansion.a3, &self.delta_inv)
    }

    fn substitute_each<R: Coeff>(s: &MultiSeries<R>, f: &MultiSeries<R>, vars: Vec<String>) -> Result<MultiSeries<R>> {
        let b = s.bound().min(f.bound());
        let images = (0..s.nvars())
            .map(|i| MultiSeries::compose(f, &MultiSeries::variable(vars.clone(), b, i)))
            .collect::<Result<Vec<_>>>()?;
        s.substitute(&images)
    }

    /// Coefficients by q-expansion, roots transported through `θ`.
    pub fn miller_character(&self, c: &TorusClass<GradedMf>) -> Result<TorusClass<QLaurent>> {
        let mut cache: BTreeMap<&GradedMf, QLaurent> = BTreeMap::new();
        let mut mapped = MultiSeries::zero(c.series.vars().to_vec(), c.series.bound());
        for (m, g) in c.series.terms() {
            let v = cache.entry(g).or_insert_with(|| self.qexpand(g));
            mapped.add_term(m.clone(), v);
        }
        let series = Self::substitute_each(&mapped, &self.theta_inv, root_vars(c.rank()))?;
        TorusClass::new(series, c.degree)
    }

    /// `x_i ↦ 1 - e^-z_i`.
    pub fn chern_character(&self, c: &TorusClass<QLaurent>) -> Result<MultiSeries<QLaurent>> {
        Self::substitute_each(&c.series, &self.chern, z_vars(c.rank()))
    }

    /// `x_i ↦ exp_F(z_i)`.
    pub fn dold_character(&self, c: &TorusClass<GradedMf>) -> Result<MultiSeries<GradedMf>> {
        Self::substitute_each(&c.series, &self.exp, z_vars(c.rank()))
    }

    /// `qexpand ∘ dold` and `ch ∘ λ` agree on `c`.
    pub fn square_commutes(&self, c: &TorusClass<GradedMf>) -> Result<bool> {
        let top = self.dold_character(c)?.map_coeffs(|g| self.qexpand(g));
        let bottom = self.chern_character(&self.miller_character(c)?)?;
        Ok(top.agrees(&bottom))
    }

    /// Decides whether a `K_Tate` class comes from TMF1(3): each coefficient
    /// of its Chern character must be the q-expansion of a level-3 form of
    /// the forced weight with pole order at most `max_pole`.
    pub fn lift_from_tate(&self, c: &TorusClass<QLaurent>, bounds: &LiftBounds) -> Result<LiftReport> {
        let m = c.rank();
        let d_eff = bounds.x_degree.min(c.series.bound()).min(self.bound);
        let input = TorusClass::new(c.series.truncate(d_eff), c.degree)?;
        if let Err(g) = weyl_invariance_check(&input.series, &RootLaw::multiplicative(d_eff))? {
            return Err(Error::NotWeylInvariant(g.to_string()));
        }
        let ch = self.chern_character(&input)?;
        let d = input.half_degree();
        let s = bounds.max_pole;
        let lo = -3 * s as i64;
        let mut certificate = Certificate { q_order: bounds.q_order, x_degree: d_eff, max_pole: s };
        let mut bases: BTreeMap<i64, (Vec<GradedMf>, Vec<QLaurent>)> = BTreeMap::new();

        let mut terms: Vec<(&Monomial, &QLaurent)> = ch.terms().collect();
        terms.sort_by_key(|(mono, _)| (mono.iter().sum::<u32>(), (*mono).clone()));
        let mut h = MultiSeries::<GradedMf>::zero(z_vars(m), d_eff);
        let mut solves = 0;
        for (mono, f) in terms {
            let k: u32 = mono.iter().sum();
            let degree = 2 * k;
            let w = k as i64 - d;
            if f.vanishes() {
                continue;
            }
            let valuation = f.valuation().expect("nonvanishing");
            if valuation < lo {
                return Ok(LiftReport {
                    outcome: LiftOutcome::Inconclusive { degree, monomial: mono.clone(), valuation },
                    certificate,
                    solves,
                });
            }
            let (basis, exps) = bases.entry(w).or_insert_with(|| {
                let b = modular_basis(w, s);
                let e = b.iter().map(|g| self.qexpand(g)).collect();
                (b, e)
            });
            let top = exps.iter().map(|e| e.trunc()).fold(bounds.q_order.min(f.trunc()), i64::min);
            if top <= lo {
                return Err(Error::TruncationTooSmall(alloc::format!(
                    "weight {} coefficients known only below q^{}",
                    w, top
                )));
            }
            certificate.q_order = certificate.q_order.min(top);
            let rows: Vec<i64> = (lo..top).collect();
            let matrix = rows
                .iter()
                .map(|&e| exps.iter().map(|x| x.coeff(e).expect("below truncation")).collect())
                .collect();
            let rhs = rows.iter().map(|&e| f.coeff(e).expect("below truncation")).collect();
            let out = solve_exact(&LinearSystem::new(matrix, rhs, basis.len())?);
            solves += 1;
            match out.solution {
                Solution::Unique(x) => {
                    let mut g = GradedMf::zero();
                    for (b, coeff) in basis.iter().zip(&x) {
                        g = g.plus(&b.scale(coeff));
                    }
                    h.add_term(mono.clone(), &g);
                }
                Solution::Inconsistent { row_combination, residual } => {
                    let relation = rows
                        .iter()
                        .zip(row_combination)
                        .filter(|(_, r)| !r.is_zero())
                        .map(|(&e, r)| (e, r))
                        .collect();
                    return Ok(LiftReport {
                        outcome: LiftOutcome::NotLiftable(Witness {
                            degree,
                            monomial: mono.clone(),
                            weight: w,
                            relation,
                            residual,
                        }),
                        certificate,
                        solves,
                    });
                }
                Solution::Family { .. } => {
                    return Err(Error::RankDeficient { degree: degree as i64, rank: out.rank, columns: basis.len() });
                }
            }
        }

        let log = self.log.truncate(d_eff);
        let lift = TorusClass::new(Self::substitute_each(&h, &log, root_vars(m))?, c.degree)?;
        if !self.miller_character(&lift)?.series.agrees(&input.series) {
            return Err(Error::Internal("lift does not reproduce its input".into()));
        }
        if !self.square_commutes(&lift)? {
            return Err(Error::Internal("character square fails on the lift".into()));
        }
        Ok(LiftReport { outcome: LiftOutcome::Lifted(lift), certificate, solves })
    }
}
