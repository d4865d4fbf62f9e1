use alloc::vec::Vec;
use core::fmt;

use super::ring::{Coeff, Field, RingTag};
use super::{Rational, Zeta3};

/// Truncation order of a series that is known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

/// Truncated Laurent series `Σ c_k q^k + O(q^trunc)` over a field.
///
/// Coefficients at exponents `>= trunc` are unknown and never stored.
/// `trunc == EXACT` marks a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<K> {
    low: i64,
    coeffs: Vec<K>,
    trunc: i64,
}

/// Truncated Laurent series in `q` with rational coefficients.
pub type QLaurent = Laurent<Rational>;

impl<K: Field> Laurent<K> {
    pub fn new(low: i64, coeffs: Vec<K>, trunc: i64) -> Self {
        let mut s = Laurent { low, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn exact(low: i64, coeffs: Vec<K>) -> Self {
        Self::new(low, coeffs, EXACT)
    }

    /// `0 + O(q^trunc)`.
    pub fn zero_to(trunc: i64) -> Self {
        Laurent { low: 0, coeffs: Vec::new(), trunc }
    }

    pub fn constant(c: K) -> Self {
        Self::exact(0, alloc::vec![c])
    }

    pub fn monomial(c: K, exponent: i64, trunc: i64) -> Self {
        Self::new(exponent, alloc::vec![c], trunc)
    }

    /// Builds a power series from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, K)>, trunc: i64) -> Self {
        let terms: Vec<(i64, K)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero_to(trunc);
        };
        let high = terms.iter().map(|t| t.0).max().unwrap_or(low);
        let mut coeffs = alloc::vec![K::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize].add_assign_ref(&c);
        }
        Self::new(low, coeffs, trunc)
    }

    fn normalize(&mut self) {
        if self.trunc != EXACT {
            let keep = (self.trunc - self.low).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    /// Coefficients are known strictly below this exponent.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// Exponent of the first known nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    /// A lower bound for the true valuation.
    fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    /// Exponent one past the last stored coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    /// The coefficient of `q^e`, or `None` when `e` is beyond the truncation.
    pub fn coeff(&self, e: i64) -> Option<K> {
        if e >= self.trunc {
            return None;
        }
        if e < self.low || e >= self.high() {
            return Some(K::zero());
        }
        Some(self.coeffs[(e - self.low) as usize].clone())
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.first()
    }

    /// Nonzero coefficients with their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Dense coefficient vector starting at the lowest stored exponent.
    pub fn dense(&self) -> (i64, &[K]) {
        (self.low, &self.coeffs)
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        Self::new(self.low, self.coeffs.clone(), self.trunc.min(trunc))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            low: if self.coeffs.is_empty() { 0 } else { self.low + k },
            coeffs: self.coeffs.clone(),
            trunc: self.trunc.saturating_add(k),
        }
    }

    /// Substitutes `q ↦ q^n`.
    pub fn substitute_q_power(&self, n: u32) -> Self {
        assert!(n > 0);
        let n = n as i64;
        let terms: Vec<(i64, K)> = self.terms().map(|(e, c)| (e * n, c.clone())).collect();
        let trunc = if self.is_exact() {
            EXACT
        } else {
            // The next unknown coefficient lands at n·trunc.
            self.trunc.saturating_mul(n)
        };
        Self::from_terms(terms, trunc)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Laurent<L> {
        Laurent::new(self.low, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        if rhs.coeffs.is_empty() {
            return self.truncate(trunc);
        }
        if self.coeffs.is_empty() {
            let r = if negate_rhs { rhs.negate() } else { rhs.clone() };
            return r.truncate(trunc);
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high()).min(trunc);
        if high <= low {
            return Self::zero_to(trunc);
        }
        let mut coeffs = alloc::vec![K::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i64;
            if e < high {
                coeffs[(e - low) as usize] = c.clone();
            }
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let e = rhs.low + i as i64;
            if e < high {
                let slot = &mut coeffs[(e - low) as usize];
                *slot = if negate_rhs { slot.minus(c) } else { slot.plus(c) };
            }
        }
        Self::new(low, coeffs, trunc)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let trunc = self
            .valuation_bound()
            .saturating_add(rhs.trunc)
            .min(rhs.valuation_bound().saturating_add(self.trunc));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_to(trunc);
        }
        let low = self.low + rhs.low;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = if trunc == EXACT {
            full
        } else {
            ((trunc - low).max(0) as usize).min(full)
        };
        let coeffs = K::convolve(&self.coeffs, &rhs.coeffs, len);
        Self::new(low, coeffs, trunc)
    }

    /// Multiplicative inverse, computing at most `max_len` coefficients when
    /// the input is exact but not a monomial.
    pub fn inverse_with_len(&self, max_len: Option<usize>) -> Option<Self> {
        let lead = self.coeffs.first()?;
        let lead_inv = lead.try_recip()?;
        let v = self.low;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Some(Self::exact(-v, alloc::vec![lead_inv]));
        }
        let (len, trunc) = if self.is_exact() {
            let len = max_len?;
            (len, -v + len as i64)
        } else {
            let rel = self.trunc - v;
            (rel as usize, self.trunc - 2 * v)
        };
        let mut inv: Vec<K> = Vec::with_capacity(len);
        inv.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = K::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc.add_assign_ref(&self.coeffs[k].times(&inv[n - k]));
            }
            inv.push(acc.times(&lead_inv).negate());
        }
        Some(Self::new(-v, inv, trunc))
    }

    /// Quotient with precision loss accounted for.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        let extra = if rhs.is_exact() && !self.is_exact() {
            Some((self.trunc - self.valuation_bound()).max(0) as usize)
        } else {
            None
        };
        Some(self.mul_impl(&rhs.inverse_with_len(extra)?))
    }
}

impl<K: Field> Coeff for Laurent<K> {
    const TAG: RingTag = if matches!(K::TAG, RingTag::Rational) {
        RingTag::QLaurent
    } else {
        RingTag::CyclotomicLaurent
    };

    fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new(), trunc: EXACT }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc == EXACT
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn negate(&self) -> Self {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
            trunc: self.trunc,
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(K::from_rational(r))
    }
    fn try_recip(&self) -> Option<Self> {
        self.inverse_with_len(None)
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|c| c.scale(r)).collect(),
            self.trunc,
        )
    }
    fn agrees(&self, other: &Self) -> bool {
        let trunc = self.trunc.min(other.trunc);
        let lo = self.low.min(other.low);
        let hi = self.high().max(other.high()).min(trunc);
        (lo..hi).all(|e| self.coeff(e) == other.coeff(e))
    }
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn as_rational(&self) -> Option<Rational> {
        if !self.is_exact() {
            return None;
        }
        match self.coeffs.len() {
            0 => Some(<Rational as Coeff>::zero()),
            1 if self.low == 0 => self.coeffs[0].as_rational(),
            _ => None,
        }
    }
}

impl QLaurent {
    /// Every known coefficient lies in `Z[1/3]`.
    pub fn is_3_local(&self) -> bool {
        self.coeffs.iter().all(super::is_3_local)
    }

    /// Every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(super::is_integral)
    }

    /// Exponent of the first coefficient outside `Z[1/3]`.
    pub fn first_non_3_local(&self) -> Option<i64> {
        self.terms().find(|(_, c)| !super::is_3_local(c)).map(|(e, _)| e)
    }

    pub fn to_cyclotomic(&self) -> Laurent<Zeta3> {
        self.map(Zeta3::from_rational)
    }
}

impl<K: Field + fmt::Debug> fmt::Debug for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*q^{}", c, e)?;
        }
        if first {
            write!(f, "0")?;
        }
        if self.trunc != EXACT {
            write!(f, " + O(q^{})", self.trunc)?;
        }
        Ok(())
    }
}
