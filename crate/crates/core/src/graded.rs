//! The ring `Q[a1, a3, Δ^-1]` of meromorphic level-3 modular forms, with
//! `Δ = a3^3 (a1^3 - 27 a3)`, graded by `wt a1 = 1`, `wt a3 = 3`, `wt Δ = 12`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::series::{is_3_local, rat, Coeff, Rational, RingTag};

/// Polynomial in `a1, a3` keyed by `(α, β)` for `a1^α a3^β`.
pub type Poly = BTreeMap<(u32, u32), Rational>;

/// `numerator / Δ^pole` with `Δ ∤ numerator` whenever `pole > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedMf {
    num: Poly,
    pole: u32,
}

fn poly_add_term(p: &mut Poly, m: (u32, u32), c: Rational) {
    if c == rat(0, 1) {
        return;
    }
    let e = p.entry(m).or_insert_with(|| rat(0, 1));
    *e += c;
    if *e == rat(0, 1) {
        p.remove(&m);
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a1, a3), x) in a {
        for (&(b1, b3), y) in b {
            poly_add_term(&mut out, (a1 + b1, a3 + b3), x * y);
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (&m, c) in b {
        poly_add_term(&mut out, m, c.clone());
    }
    out
}

/// `Δ = a1^3 a3^3 - 27 a3^4`.
pub fn delta_poly() -> Poly {
    let mut p = Poly::new();
    p.insert((3, 3), rat(1, 1));
    p.insert((0, 4), rat(-27, 1));
    p
}

fn delta_pow(k: u32) -> Poly {
    let d = delta_poly();
    let mut acc = Poly::from([((0, 0), rat(1, 1))]);
    for _ in 0..k {
        acc = poly_mul(&acc, &d);
    }
    acc
}

// Exact division by `a1^3 - 27 a3`, treated as monic in a1 over Q[a3].
fn div_by_e(p: &Poly) -> Option<Poly> {
    let mut rem = p.clone();
    let mut quot = Poly::new();
    loop {
        let Some((&(a, b), c)) = rem.iter().rev().find(|((a, _), _)| *a >= 3) else { break };
        let c = c.clone();
        poly_add_term(&mut quot, (a - 3, b), c.clone());
        poly_add_term(&mut rem, (a, b), -c.clone());
        poly_add_term(&mut rem, (a - 3, b + 1), c * rat(27, 1));
    }
    rem.is_empty().then_some(quot)
}

fn div_by_delta(p: &Poly) -> Option<Poly> {
    if p.keys().any(|&(_, b)| b < 3) {
        return None;
    }
    let shifted: Poly = p.iter().map(|(&(a, b), c)| ((a, b - 3), c.clone())).collect();
    div_by_e(&shifted)
}

impl GradedMf {
    pub fn new(num: Poly, pole: u32) -> Self {
        let mut num = num;
        num.retain(|_, c| *c != rat(0, 1));
        let mut g = GradedMf { num, pole };
        g.reduce();
        g
    }

    fn reduce(&mut self) {
        if self.num.is_empty() {
            self.pole = 0;
            return;
        }
        while self.pole > 0 {
            match div_by_delta(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.pole -= 1;
                }
                None => break,
            }
        }
    }

    /// `c · a1^α a3^β Δ^-s`.
    pub fn monomial(c: Rational, alpha: u32, beta: u32, s: u32) -> Self {
        Self::new(Poly::from([((alpha, beta), c)]), s)
    }

    pub fn a1() -> Self {
        Self::monomial(rat(1, 1), 1, 0, 0)
    }

    pub fn a3() -> Self {
        Self::monomial(rat(1, 1), 0, 1, 0)
    }

    pub fn delta() -> Self {
        Self::new(delta_poly(), 0)
    }

    pub fn delta_inv() -> Self {
        Self::monomial(rat(1, 1), 0, 0, 1)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    /// Weight if homogeneous; `None` for zero or mixed weights.
    pub fn weight(&self) -> Option<i64> {
        let mut ws = self.num.keys().map(|&(a, b)| a as i64 + 3 * b as i64);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w - 12 * self.pole as i64)
    }

    /// All numerator coefficients are integral after inverting 3.
    pub fn is_3_local(&self) -> bool {
        self.num.values().all(is_3_local)
    }

    fn with_pole(&self, pole: u32) -> Poly {
        debug_assert!(pole >= self.pole);
        poly_mul(&self.num, &delta_pow(pole - self.pole))
    }

    /// Substitutes values for `a1`, `a3` and `Δ^-1` in any coefficient ring.
    pub fn evaluate<R: Coeff>(&self, a1: &R, a3: &R, delta_inv: &R) -> R {
        let max_a = self.num.keys().map(|m| m.0).max().unwrap_or(0);
        let max_b = self.num.keys().map(|m| m.1).max().unwrap_or(0);
        let powers = |x: &R, n: u32| {
            let mut v = alloc::vec![R::one()];
            for k in 0..n as usize {
                let next = v[k].times(x);
                v.push(next);
            }
            v
        };
        let pa = powers(a1, max_a);
        let pb = powers(a3, max_b);
        let mut acc = R::zero();
        for (&(a, b), c) in &self.num {
            acc = acc.plus(&pa[a as usize].times(&pb[b as usize]).scale(c));
        }
        acc.times(&delta_inv.pow(self.pole))
    }

    /// The part of weight `w`.
    pub fn weight_part(&self, w: i64) -> Self {
        let num = self
            .num
            .iter()
            .filter(|(&(a, b), _)| a as i64 + 3 * b as i64 - 12 * self.pole as i64 == w)
            .map(|(&m, c)| (m, c.clone()))
            .collect();
        Self::new(num, self.pole)
    }
}

/// Number of `(α, β)` with `α + 3β = w`.
fn count_monomials(w: i64) -> usize {
    if w < 0 {
        0
    } else {
        (w / 3 + 1) as usize
    }
}

/// A basis of the weight-`w` forms with pole order at most `max_pole`:
/// all `a1^α a3^β` of weight `w`, together with `a1^α a3^β Δ^-s` for
/// `1 ≤ s ≤ max_pole` where `a1^3 a3^3` does not divide the numerator.
pub fn modular_basis(w: i64, max_pole: u32) -> Vec<GradedMf> {
    let mut out = Vec::new();
    for s in 0..=max_pole {
        let total = w + 12 * s as i64;
        if total < 0 {
            continue;
        }
        for beta in 0..=(total / 3) {
            let alpha = total - 3 * beta;
            if s > 0 && alpha >= 3 && beta >= 3 {
                continue;
            }
            out.push(GradedMf::monomial(rat(1, 1), alpha as u32, beta as u32, s));
        }
    }
    debug_assert_eq!(out.len(), count_monomials(w + 12 * max_pole as i64));
    out
}

impl Coeff for GradedMf {
    const TAG: RingTag = RingTag::ModularForms;

    fn zero() -> Self {
        GradedMf { num: Poly::new(), pole: 0 }
    }

    fn one() -> Self {
        Self::monomial(rat(1, 1), 0, 0, 0)
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let pole = self.pole.max(rhs.pole);
        Self::new(poly_add(&self.with_pole(pole), &rhs.with_pole(pole)), pole)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn times(&self, rhs: &Self) -> Self {
        Self::new(poly_mul(&self.num, &rhs.num), self.pole + rhs.pole)
    }

    fn negate(&self) -> Self {
        GradedMf { num: self.num.iter().map(|(&m, c)| (m, -c.clone())).collect(), pole: self.pole }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::monomial(r.clone(), 0, 0, 0)
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.num.iter().map(|(&m, c)| (m, c * r)).collect(), self.pole)
    }

    /// Units are `c · a3^i (a1^3 - 27 a3)^j Δ^k`.
    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.num.clone();
        let mut j = 0u32;
        while let Some(q) = div_by_e(&p) {
            p = q;
            j += 1;
        }
        if p.len() != 1 {
            return None;
        }
        let (&(a, i), c) = p.iter().next()?;
        if a != 0 {
            return None;
        }
        // a3^-1 = a3^2 E / Δ and E^-1 = a3^3 / Δ.
        let mut e = Poly::new();
        e.insert((3, 0), rat(1, 1));
        e.insert((0, 1), rat(-27, 1));
        let mut num = Poly::from([((0, 2 * i + 3 * j), c.recip())]);
        for _ in 0..i {
            num = poly_mul(&num, &e);
        }
        let inv_pole = i + j;
        if self.pole >= inv_pole {
            num = poly_mul(&num, &delta_pow(self.pole - inv_pole));
            Some(Self::new(num, 0))
        } else {
            Some(Self::new(num, inv_pole - self.pole))
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(rat(0, 1)),
            1 if self.pole == 0 => self.num.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for GradedMf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let wrap = self.pole > 0 && self.num.len() > 1;
        if wrap {
            write!(f, "(")?;
        }
        for (k, (&(a, b), c)) in self.num.iter().rev().enumerate() {
            let neg = *c < rat(0, 1);
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == rat(1, 1);
            let mut parts: Vec<alloc::string::String> = Vec::new();
            if !unit || (a == 0 && b == 0) {
                parts.push(alloc::format!("{}", mag));
            }
            for (name, e) in [("a1", a), ("a3", b)] {
                match e {
                    0 => {}
                    1 => parts.push(name.into()),
                    _ => parts.push(alloc::format!("{}^{}", name, e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if wrap {
            write!(f, ")")?;
        }
        match self.pole {
            0 => Ok(()),
            1 => write!(f, "/Δ"),
            s => write!(f, "/Δ^{}", s),
        }
    }
}

impl fmt::Debug for GradedMf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
