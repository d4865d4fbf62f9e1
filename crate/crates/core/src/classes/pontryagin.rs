use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{root_vars, weyl_invariance_check, RootLaw};
use crate::error::{Error, Result};
use crate::series::{solve_exact, Coeff, LinearSystem, MultiSeries, Rational, Solution};

/// Parts in nondecreasing order; `[1, 1, 2]` stands for `p1^2 p2`.
pub type Partition = Vec<u32>;

/// Polynomial in Pontryagin classes; `p_I` has cohomological degree `4|I|`.
#[derive(Clone, Debug, PartialEq)]
pub struct PontryaginPoly<R> {
    terms: BTreeMap<Partition, R>,
}

fn canonical(mut p: Partition) -> Partition {
    p.retain(|&x| x > 0);
    p.sort_unstable();
    p
}

fn merge(a: &[u32], b: &[u32]) -> Partition {
    canonical(a.iter().chain(b).copied().collect())
}

/// Partitions of `n` into parts of size at most `max_part`.
pub fn partitions(n: u32, max_part: u32) -> Vec<Partition> {
    fn go(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(canonical(prefix.clone()));
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

impl<R: Coeff> PontryaginPoly<R> {
    pub fn zero() -> Self {
        PontryaginPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_terms([(Vec::new(), R::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, R)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn add_term(&mut self, part: Partition, c: &R) {
        if c.is_zero() {
            return;
        }
        let part = canonical(part);
        let e = self.terms.entry(part.clone()).or_insert_with(R::zero);
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&part);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &[u32]) -> R {
        self.terms.get(&canonical(part.to_vec())).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x.times(c))))
    }

    /// Product, dropping monomials of weight `> max_weight`.
    pub fn mul_truncated(&self, other: &Self, max_weight: u32) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            let wa: u32 = a.iter().sum();
            for (b, y) in &other.terms {
                if wa + b.iter().sum::<u32>() <= max_weight {
                    out.add_term(merge(a, b), &x.times(y));
                }
            }
        }
        out
    }

    /// `exp(self)` for `self` without constant term, to weight `max_weight`.
    pub fn exp_truncated(&self, max_weight: u32) -> Result<Self> {
        if !self.coeff(&[]).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::one();
        let mut power = Self::one();
        for k in 1..=max_weight {
            power = power.mul_truncated(self, max_weight).scale(&R::from_rational(&Rational::new(
                1.into(),
                (k as i64).into(),
            )));
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> PontryaginPoly<S> {
        PontryaginPoly::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Substitutes series for `p1, p2, ...` (`ps[0]` is `p1`).
    pub fn evaluate(&self, ps: &[MultiSeries<R>]) -> Result<MultiSeries<R>> {
        let first = ps.first().ok_or_else(|| Error::InvalidArgument("no Pontryagin classes".into()))?;
        let mut out = MultiSeries::zero(first.vars().to_vec(), first.bound());
        for (part, c) in &self.terms {
            let mut term = MultiSeries::constant(first.vars().to_vec(), first.bound(), c.clone());
            for &j in part {
                let p = ps.get(j as usize - 1).ok_or_else(|| {
                    Error::InvalidArgument(alloc::format!("p{} is not available", j))
                })?;
                term = term.mul(p)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// `p_j = (-1)^j e_j(x1 x̄1, ..., xm x̄m)` for `j = 1..=k`, read off from
/// `∏ (1 - t x_i x̄_i)`.
pub fn pontryagin_series<R: Coeff>(
    m: usize,
    k: usize,
    law: &RootLaw<R>,
    bound: u32,
) -> Result<Vec<MultiSeries<R>>> {
    if k > 0 && 2 * k as u32 >= bound {
        return Err(Error::BoundTooSmall { need: 2 * k as i64 + 1, got: bound as i64 });
    }
    let b = bound.min(law.bound());
    let vars = root_vars(m);
    let mut e: Vec<MultiSeries<R>> = alloc::vec![MultiSeries::zero(vars.clone(), b); k.max(m) + 1];
    e[0] = MultiSeries::one(vars.clone(), b);
    for i in 0..m {
        let x = MultiSeries::variable(vars.clone(), b, i);
        let y = x.mul(&MultiSeries::compose(&law.inverse, &x)?)?;
        for j in (1..=i + 1).rev() {
            e[j] = e[j].add(&e[j - 1].mul(&y)?)?;
        }
    }
    Ok((1..=k).map(|j| if j % 2 == 0 { e[j].clone() } else { e[j].neg() }).collect())
}

/// Pontryagin classes in the K-theory model `x = 1 - L`.
pub fn ktheory_pontryagin(m: usize, k: usize, bound: u32) -> Result<Vec<MultiSeries<Rational>>> {
    pontryagin_series(m, k, &RootLaw::multiplicative(bound), bound)
}

/// Writes a Weyl-invariant class as a polynomial in Pontryagin classes,
/// degree by degree in the roots.
pub fn decompose_into_pontryagin<R: Coeff>(
    c: &MultiSeries<R>,
    law: &RootLaw<R>,
    bound: u32,
) -> Result<PontryaginPoly<R>> {
    let m = c.nvars();
    let b = bound.min(c.bound()).min(law.bound());
    let c = c.truncate(b);
    if let Err(g) = weyl_invariance_check(&c, law)? {
        return Err(Error::NotWeylInvariant(g.to_string()));
    }
    let kmax = (m as u32).min(b.saturating_sub(1) / 2) as usize;
    let ps = pontryagin_series(m, kmax, law, b)?;
    let mut products: BTreeMap<Partition, MultiSeries<R>> = BTreeMap::new();
    products.insert(Vec::new(), MultiSeries::one(root_vars(m), b));

    let mut residual = c;
    let mut out = PontryaginPoly::zero();
    for deg in 0..b {
        let h = residual.homogeneous_part(deg);
        if h.vanishes() {
            continue;
        }
        if deg % 2 == 1 {
            return Err(Error::NotInSpan { degree: 2 * deg });
        }
        let cols = partitions(deg / 2, kmax as u32);
        for part in &cols {
            for len in 1..=part.len() {
                if !products.contains_key(&part[..len]) {
                    let next = products[&part[..len - 1]].mul(&ps[part[len - 1] as usize - 1])?;
                    products.insert(part[..len].to_vec(), next);
                }
            }
        }
        let lowest: Vec<MultiSeries<R>> = cols.iter().map(|p| products[p].homogeneous_part(deg)).collect();
        let mut rows: Vec<Vec<u32>> = h.terms().map(|(mono, _)| mono.clone()).collect();
        for l in &lowest {
            rows.extend(l.terms().map(|(mono, _)| mono.clone()));
        }
        rows.sort();
        rows.dedup();
        let mut matrix = Vec::with_capacity(rows.len());
        for mono in &rows {
            let mut row = Vec::with_capacity(cols.len());
            for l in &lowest {
                row.push(l.coeff(mono).as_rational().ok_or_else(|| {
                    Error::Internal("leading part of a Pontryagin monomial is not rational".into())
                })?);
            }
            matrix.push(row);
        }
        let rhs = rows.iter().map(|mono| h.coeff(mono)).collect();
        let sol = solve_exact(&LinearSystem::new(matrix, rhs, cols.len())?);
        let x = match sol.solution {
            Solution::Unique(x) => x,
            Solution::Inconsistent { .. } => return Err(Error::NotInSpan { degree: 2 * deg }),
            Solution::Family { .. } => {
                return Err(Error::RankDeficient { degree: 2 * deg as i64, rank: sol.rank, columns: cols.len() })
            }
        };
        for (part, coeff) in cols.iter().zip(x) {
            if coeff.is_zero() {
                continue;
            }
            residual = residual.sub(&products[part].scale(&coeff))?;
            out.add_term(part.clone(), &coeff);
        }
    }
    Ok(out)
}
