//! Chern roots on maximal tori and Pontryagin classes.

pub mod pontryagin;

pub use pontryagin::{
    decompose_into_pontryagin, ktheory_pontryagin, pontryagin_series, Partition, PontryaginPoly,
};

use alloc::string::String;
use alloc::vec::Vec;

use crate::curve::{fgl_from_curve, formal_inverse, FormalGroupLaw, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::graded::GradedMf;
use crate::series::{Coeff, MultiSeries};

/// Root variable names `x1, ..., xm`.
pub fn root_vars(m: usize) -> Vec<String> {
    (1..=m).map(|i| alloc::format!("x{}", i)).collect()
}

/// Chern-root variable names `z1, ..., zm` for rational cohomology.
pub fn z_vars(m: usize) -> Vec<String> {
    (1..=m).map(|i| alloc::format!("z{}", i)).collect()
}

/// A formal group law together with its inverse series, which defines the
/// conjugate roots `x̄ = i(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootLaw<R> {
    pub law: FormalGroupLaw<R>,
    pub inverse: MultiSeries<R>,
}

impl<R: Coeff> RootLaw<R> {
    pub fn new(law: FormalGroupLaw<R>) -> Result<Self> {
        let inverse = law.inverse()?;
        Ok(RootLaw { law, inverse })
    }

    pub fn additive(bound: u32) -> Self {
        Self::new(FormalGroupLaw::additive(bound)).expect("additive law")
    }

    /// `x + y - xy`, with `x = 1 - L` and `x̄ = 1 - L^-1`.
    pub fn multiplicative(bound: u32) -> Self {
        Self::new(FormalGroupLaw::multiplicative(bound)).expect("multiplicative law")
    }

    pub fn from_curve(c: &WeierstrassCurve<R>, bound: u32) -> Result<Self> {
        let law = fgl_from_curve(c, bound)?;
        let inverse = formal_inverse(&law, c)?;
        Ok(RootLaw { law, inverse })
    }

    pub fn bound(&self) -> u32 {
        self.law.bound()
    }
}

impl RootLaw<GradedMf> {
    /// The law of the universal curve `y^2 + a1 xy + a3 y = x^3`.
    pub fn universal(bound: u32) -> Result<Self> {
        Self::from_curve(&WeierstrassCurve::universal(), bound)
    }
}

/// `x̄_i = i(x_i)` as a series in `x1, ..., xm`.
pub fn conjugate_root<R: Coeff>(law: &RootLaw<R>, i: usize, m: usize) -> Result<MultiSeries<R>> {
    if i >= m {
        return Err(Error::InvalidArgument(alloc::format!("root {} of {}", i + 1, m)));
    }
    let x = MultiSeries::variable(root_vars(m), law.bound(), i);
    MultiSeries::compose(&law.inverse, &x)
}

/// A class on the maximal torus of `Spin(2m)`, as a series in the roots.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusClass<R> {
    pub series: MultiSeries<R>,
    /// Cohomological degree, even.
    pub degree: i64,
}

impl<R: Coeff> TorusClass<R> {
    pub fn new(series: MultiSeries<R>, degree: i64) -> Result<Self> {
        if degree % 2 != 0 {
            return Err(Error::InvalidArgument(alloc::format!("odd degree {}", degree)));
        }
        Ok(TorusClass { series, degree })
    }

    pub fn rank(&self) -> usize {
        self.series.nvars()
    }

    pub fn half_degree(&self) -> i64 {
        self.degree / 2
    }
}

impl TorusClass<GradedMf> {
    /// Every coefficient of `x^μ` has weight `|μ| - d`.
    pub fn is_homogeneous(&self) -> bool {
        let d = self.half_degree();
        self.series
            .terms()
            .all(|(mono, c)| c.weight() == Some(mono.iter().sum::<u32>() as i64 - d))
    }
}

/// Generators of the Weyl group of `SO(2m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGenerator {
    /// `x_i ↔ x_{i+1}`.
    Swap(usize),
    /// `(x_i, x_j) ↦ (x̄_i, x̄_j)`.
    PairedConjugation(usize, usize),
}

impl WeylGenerator {
    pub fn all(m: usize) -> Vec<WeylGenerator> {
        let mut g: Vec<WeylGenerator> = (0..m.saturating_sub(1)).map(WeylGenerator::Swap).collect();
        if m >= 2 {
            g.push(WeylGenerator::PairedConjugation(0, 1));
        }
        g
    }
}

impl core::fmt::Display for WeylGenerator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WeylGenerator::Swap(i) => write!(f, "swap x{} x{}", i + 1, i + 2),
            WeylGenerator::PairedConjugation(i, j) => write!(f, "conjugate x{} x{}", i + 1, j + 1),
        }
    }
}

/// Applies a Weyl generator to a series in the roots.
pub fn apply_weyl<R: Coeff>(
    s: &MultiSeries<R>,
    g: WeylGenerator,
    law: &RootLaw<R>,
) -> Result<MultiSeries<R>> {
    let m = s.nvars();
    let vars = s.vars().to_vec();
    let b = s.bound().min(law.bound());
    let var = |i: usize| MultiSeries::variable(vars.clone(), b, i);
    let conj = |i: usize| MultiSeries::compose(&law.inverse, &var(i));
    let mut images: Vec<MultiSeries<R>> = (0..m).map(var).collect();
    match g {
        WeylGenerator::Swap(i) => images.swap(i, i + 1),
        WeylGenerator::PairedConjugation(i, j) => {
            images[i] = conj(i)?;
            images[j] = conj(j)?;
        }
    }
    s.substitute(&images)
}

/// `Ok(())` if invariant, otherwise the first violating generator.
pub fn weyl_invariance_check<R: Coeff>(
    s: &MultiSeries<R>,
    law: &RootLaw<R>,
) -> Result<core::result::Result<(), WeylGenerator>> {
    let b = s.bound().min(law.bound());
    let s = s.truncate(b);
    for g in WeylGenerator::all(s.nvars()) {
        if !apply_weyl(&s, g, law)?.agrees(&s) {
            return Ok(Err(g));
        }
    }
    Ok(Ok(()))
}
