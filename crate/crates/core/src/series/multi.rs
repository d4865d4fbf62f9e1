use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::ring::Coeff;
use super::{rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse truncated power series in named variables.
///
/// Only monomials of total degree `< bound` are known. Exact zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiSeries<R> {
    vars: Vec<String>,
    bound: u32,
    terms: BTreeMap<Monomial, R>,
}

pub(crate) fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn add_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<R: Coeff> MultiSeries<R> {
    pub fn zero(vars: Vec<String>, bound: u32) -> Self {
        MultiSeries { vars, bound, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        vars: Vec<String>,
        bound: u32,
        terms: impl IntoIterator<Item = (Monomial, R)>,
    ) -> Self {
        let mut s = Self::zero(vars, bound);
        for (m, c) in terms {
            s.add_term(m, &c);
        }
        s
    }

    pub fn constant(vars: Vec<String>, bound: u32, c: R) -> Self {
        let n = vars.len();
        Self::from_terms(vars, bound, [(alloc::vec![0; n], c)])
    }

    pub fn one(vars: Vec<String>, bound: u32) -> Self {
        Self::constant(vars, bound, R::one())
    }

    /// The series consisting of the single variable `vars[i]`.
    pub fn variable(vars: Vec<String>, bound: u32, i: usize) -> Self {
        let mut m = alloc::vec![0; vars.len()];
        m[i] = 1;
        Self::from_terms(vars, bound, [(m, R::one())])
    }

    /// `Σ coeffs[k] t^k` in the single variable `name`.
    pub fn univariate(name: &str, bound: u32, coeffs: Vec<R>) -> Self {
        Self::from_terms(
            alloc::vec![name.to_string()],
            bound,
            coeffs.into_iter().enumerate().map(|(k, c)| (alloc::vec![k as u32], c)),
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of `t^k` in a univariate series.
    pub fn coeff1(&self, k: u32) -> R {
        self.coeff(&[k])
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&alloc::vec![0; self.nvars()])
    }

    /// Adds `c·x^m`, dropping it if beyond the bound.
    pub fn add_term(&mut self, m: Monomial, c: &R) {
        assert_eq!(m.len(), self.vars.len(), "monomial arity");
        if degree(&m) >= self.bound || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let bound = self.bound.min(other.bound);
        let mut out = self.truncate(bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negate())
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.bound);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.times(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.bound);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.scale(r));
        }
        out
    }

    /// Truncated product; the result bound is the smaller input bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let bound = self.bound.min(other.bound);
        let mut out = Self::zero(self.vars.clone(), bound);
        for (ma, ca) in &self.terms {
            let da = degree(ma);
            if da >= bound {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + degree(mb) >= bound {
                    continue;
                }
                out.add_term(add_monomials(ma, mb), &ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.vars.clone(), self.bound);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn truncate(&self, bound: u32) -> Self {
        let bound = bound.min(self.bound);
        MultiSeries {
            vars: self.vars.clone(),
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(m) < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, deg: u32) -> Self {
        MultiSeries {
            vars: self.vars.clone(),
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(m) == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest total degree of a stored term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).min()
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> MultiSeries<S> {
        let mut out = MultiSeries::zero(self.vars.clone(), self.bound);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn try_map_coeffs<S: Coeff, E>(
        &self,
        f: impl Fn(&R) -> core::result::Result<S, E>,
    ) -> core::result::Result<MultiSeries<S>, E> {
        let mut out = MultiSeries::zero(self.vars.clone(), self.bound);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    pub fn with_vars(&self, vars: Vec<String>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiSeries { vars, bound: self.bound, terms: self.terms.clone() }
    }

    /// Equality of all coefficients below the common bound, each compared up
    /// to its known precision.
    pub fn agrees(&self, other: &Self) -> bool {
        if self.vars != other.vars {
            return false;
        }
        let bound = self.bound.min(other.bound);
        let zero = R::zero();
        let keys: alloc::collections::BTreeSet<&Monomial> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| degree(m) < bound)
            .collect();
        keys.into_iter().all(|m| {
            let a = self.terms.get(m).unwrap_or(&zero);
            let b = other.terms.get(m).unwrap_or(&zero);
            a.agrees(b)
        })
    }

    /// All coefficients vanish to known precision.
    pub fn vanishes(&self) -> bool {
        self.terms.values().all(|c| c.vanishes())
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.bound.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            let e = m2[var];
            m2[var] -= 1;
            out.add_term(m2, &c.scale(&rat(e as i64, 1)));
        }
        out
    }

    /// Sets variable `var` to zero and removes it.
    pub fn restrict_to_zero(&self, var: usize) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = Self::zero(vars, self.bound);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                let mut m2 = m.clone();
                m2.remove(var);
                out.add_term(m2, c);
            }
        }
        out
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let c0_inv = c0
            .try_recip()
            .ok_or_else(|| Error::NotInvertible(alloc::format!("{:?}", c0)))?;
        // 1/f = c0^-1 · Σ (-u)^k with u = f/c0 - 1
        let one = Self::one(self.vars.clone(), self.bound);
        let u = self.scale(&c0_inv).sub(&one)?;
        let neg_u = u.neg();
        let mut acc = one.clone();
        for _ in 1..self.bound {
            acc = one.add(&acc.mul(&neg_u)?)?;
        }
        Ok(acc.scale(&c0_inv))
    }

    fn require_univariate(&self) -> Result<()> {
        if self.nvars() != 1 {
            return Err(Error::NotUnivariate(self.nvars()));
        }
        Ok(())
    }

    /// Formal antiderivative of a univariate series, with zero constant term.
    pub fn integrate(&self) -> Result<Self> {
        self.require_univariate()?;
        let mut out = Self::zero(self.vars.clone(), self.bound + 1);
        for (m, c) in &self.terms {
            out.add_term(alloc::vec![m[0] + 1], &c.scale(&rat(1, m[0] as i64 + 1)));
        }
        Ok(out)
    }

    /// Truncated substitution `outer(inner)` for univariate `outer`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.require_univariate()?;
        if !inner.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let bound = outer.bound.min(inner.bound);
        let top = outer.terms.keys().map(|m| m[0]).max().unwrap_or(0).min(bound);
        let inner = inner.truncate(bound);
        let mut acc = Self::constant(inner.vars.clone(), bound, outer.coeff1(top));
        for k in (0..top).rev() {
            acc = acc.mul(&inner)?;
            acc.add_term(alloc::vec![0; inner.nvars()], &outer.coeff1(k));
        }
        Ok(acc)
    }

    /// Compositional inverse of a univariate `f = u·t + O(t²)`, `u` a unit.
    pub fn reverse(&self) -> Result<Self> {
        self.require_univariate()?;
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let u = self.coeff1(1);
        let u_inv = u
            .try_recip()
            .ok_or_else(|| Error::NotInvertible(alloc::format!("linear coefficient {:?}", u)))?;
        let t = Self::variable(self.vars.clone(), self.bound, 0);
        let mut g = t.scale(&u_inv);
        for _ in 1..self.bound {
            let err = Self::compose(self, &g)?.sub(&t)?;
            if err.is_empty() {
                break;
            }
            g = g.sub(&err.scale(&u_inv))?;
        }
        Ok(g)
    }

    /// Simultaneous substitution `x_i ↦ inners[i]`; all `inners` share the
    /// target variables and have zero constant term.
    pub fn substitute(&self, inners: &[Self]) -> Result<Self> {
        if inners.len() != self.nvars() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} substitutions for {} variables",
                inners.len(),
                self.nvars()
            )));
        }
        let target = match inners.first() {
            Some(s) => s.vars.clone(),
            None => return Ok(self.clone().with_vars(Vec::new())),
        };
        for s in inners {
            if s.vars != target {
                return Err(Error::VariableMismatch {
                    left: target.join(","),
                    right: s.vars.join(","),
                });
            }
            if !s.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let bound = inners.iter().map(|s| s.bound).fold(self.bound, u32::min);
        let max_exp: Vec<u32> = (0..self.nvars())
            .map(|i| self.terms.keys().map(|m| m[i]).max().unwrap_or(0).min(bound))
            .collect();
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(inners.len());
        for (s, &top) in inners.iter().zip(&max_exp) {
            let s = s.truncate(bound);
            let mut p = alloc::vec![Self::one(target.clone(), bound)];
            for k in 1..=top {
                let next = p[k as usize - 1].mul(&s)?;
                p.push(next);
            }
            powers.push(p);
        }
        let terms: Vec<(&Monomial, &R)> = self.terms.iter().collect();
        substitute_rec(&terms, 0, &powers, &target, bound)
    }

    /// `e^t - 1` in the variable `name`.
    pub fn expm1(name: &str, bound: u32) -> Self {
        let mut c = alloc::vec![R::zero()];
        let mut fact = rat(1, 1);
        for k in 1..bound {
            fact *= rat(k as i64, 1);
            c.push(R::from_rational(&(rat(1, 1) / &fact)));
        }
        Self::univariate(name, bound, c)
    }

    /// `log(1 + t)` in the variable `name`.
    pub fn log1p(name: &str, bound: u32) -> Self {
        let mut c = alloc::vec![R::zero()];
        for k in 1..bound {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            c.push(R::from_rational(&rat(sign, k as i64)));
        }
        Self::univariate(name, bound, c)
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let e = Self::expm1("t", self.bound);
        let mut out = Self::compose(&e, self)?;
        out.add_term(alloc::vec![0; self.nvars()], &R::one());
        Ok(out)
    }

    /// `log(f)` for `f` with constant term one to known precision.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().agrees(&R::one()) {
            return Err(Error::InvalidArgument("logarithm needs constant term 1".into()));
        }
        let l = Self::log1p("t", self.bound);
        Self::compose(&l, &self.without_constant_term())
    }

    pub fn without_constant_term(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&alloc::vec![0; self.nvars()]);
        out
    }

    /// Evaluates a univariate series at a point given as a closure over the
    /// coefficients, Horner style. Used for numeric cross-checks.
    pub fn eval_with<T: Copy + core::ops::Add<Output = T> + core::ops::Mul<Output = T>>(
        &self,
        point: &[T],
        zero: T,
        coeff: impl Fn(&R) -> T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut term = coeff(c);
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    term = term * *x;
                }
            }
            acc = acc + term;
        }
        acc
    }
}

// Groups terms by the exponent of variable `level` and recurses, so each
// distinct exponent prefix costs one multiplication.
fn substitute_rec<R: Coeff>(
    terms: &[(&Monomial, &R)],
    level: usize,
    powers: &[Vec<MultiSeries<R>>],
    target: &[String],
    bound: u32,
) -> Result<MultiSeries<R>> {
    let mut out = MultiSeries::<R>::zero(target.to_vec(), bound);
    if level == powers.len() {
        let c0 = alloc::vec![0; target.len()];
        for (_, c) in terms {
            out.add_term(c0.clone(), c);
        }
        return Ok(out);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &R)>> = BTreeMap::new();
    for &(m, c) in terms {
        if (m[level] as usize) < powers[level].len() {
            groups.entry(m[level]).or_default().push((m, c));
        }
    }
    for (e, group) in groups {
        let rest = substitute_rec(&group, level + 1, powers, target, bound)?;
        let prod = if e == 0 { rest } else { rest.mul(&powers[level][e as usize])? };
        out = out.add(&prod)?;
    }
    Ok(out)
}

impl<R: fmt::Debug> fmt::Debug for MultiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (v, &e) in self.vars.iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", v)?,
                    _ => write!(f, "*{}^{}", v, e)?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.bound)
    }
}
