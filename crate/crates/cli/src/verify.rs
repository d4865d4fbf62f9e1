//! The acceptance criteria as a runnable suite.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmf3_core::classes::{
    conjugate_root, decompose_into_pontryagin, ktheory_pontryagin, pontryagin_series, root_vars, RootLaw,
    TorusClass,
};
use tmf3_core::curve::{fgl_from_curve, typicalize_2, WeierstrassCurve};
use tmf3_core::graded::{modular_basis, GradedMf};
use tmf3_core::jacobi::{
    check_invariance, e4_numeric, e6_numeric, gamma_action, lambda_s, level_for, mat_mul, phi_numeric, phi_pipeline,
    s_character_series,
};
use tmf3_core::lift::sample::{random_form, random_pontryagin_poly, random_tmf_class};
use tmf3_core::lift::{multiplicative_sequence, witten_genus_series, CharacterSquare, LiftBounds, LiftOutcome};
use tmf3_core::modular::{delta_eta, eisenstein, strict_iso_to_multiplicative, tate_curve, Gamma13Expansion};
use tmf3_core::series::{
    is_3_local, rat, solve_exact, Coeff, Laurent, LinearSystem, MultiSeries, QLaurent, Rational, Solution, EXACT,
};

pub const TOL_ODD: f64 = 1e-12;
pub const TOL_NUMERIC: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Criteria 1 through 10.
    Core,
    /// All thirteen criteria.
    Full,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(x: E) -> String {
    format!("{:?}", x)
}

fn known_below(d: &MultiSeries<QLaurent>) -> i64 {
    d.terms().map(|(_, c)| c.trunc()).min().unwrap_or(EXACT)
}

fn fgl_axioms(_: u64) -> Check {
    let start = Instant::now();
    let f = fgl_from_curve(&WeierstrassCurve::universal(), 9).map_err(e)?;
    ensure(f.satisfies_unit() && f.is_commutative(), || "unit or commutativity".into())?;
    ensure(f.is_associative().map_err(e)?, || "associativity".into())?;
    ensure(f.series().coeff(&[1, 1]) == GradedMf::a1().negate(), || "xy coefficient".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {:.1?}", t))?;
    Ok("unit, commutativity, associativity to total degree 8".into())
}

fn hazewinkel(_: u64) -> Check {
    let d = typicalize_2(&fgl_from_curve(&WeierstrassCurve::universal(), 9).map_err(e)?).map_err(e)?;
    ensure(d.v1 == GradedMf::a1() && d.v2 == GradedMf::a3(), || format!("v1 = {}, v2 = {}", d.v1, d.v2))?;
    Ok("v1 = a1, v2 = a3".into())
}

fn discriminant(_: u64) -> Check {
    let d = WeierstrassCurve::universal().discriminant();
    let (a1, a3) = (GradedMf::a1(), GradedMf::a3());
    ensure(d == a3.pow(3).times(&a1.pow(3).minus(&a3.scale(&rat(27, 1)))), || format!("Δ = {}", d))?;
    Ok(format!("Δ = {}", d))
}

fn tate(_: u64) -> Check {
    let t = tate_curve(50).map_err(e)?;
    let lead = |f: &QLaurent, a: i64, b: i64| f.coeff(1) == Some(rat(a, 1)) && f.coeff(2) == Some(rat(b, 1));
    ensure(lead(&t.b, -5, -45) && lead(&t.c, -1, -23), || "leading terms".into())?;
    ensure(t.b.trunc() >= 50 && t.c.trunc() >= 50 && t.b.is_integral() && t.c.is_integral(), || "integrality".into())?;
    let d = t.curve().discriminant().truncate(50);
    ensure(d == delta_eta(1, 50), || "Δ ≠ η-product".into())?;
    Ok("B, C integral; Δ = q∏(1-q^n)^24 below q^50".into())
}

fn gamma13(_: u64) -> Check {
    let x = Gamma13Expansion::compute(40).map_err(e)?;
    ensure(x.a1.valuation() == Some(0) && x.a1.coeff(0) == Some(rat(1, 1)), || "a1 ≠ 1 + O(q)".into())?;
    ensure(x.a1.terms().chain(x.a3.terms()).all(|(_, c)| is_3_local(c)), || "3-integrality".into())?;
    ensure(x.delta().truncate(40) == delta_eta(3, 40), || "Δ ≠ q^3∏(1-q^3n)^24".into())?;
    Ok("a1 = 1 + O(q), 3-integral; Δ = q^3∏(1-q^3n)^24 below q^40".into())
}

fn strict_iso(_: u64) -> Check {
    let x = Gamma13Expansion::compute(30).map_err(e)?;
    let theta = strict_iso_to_multiplicative(&x, 7).map_err(e)?;
    let law = fgl_from_curve(&x.curve(), 7).map_err(e)?;
    let v = law.series().vars().to_vec();
    let tx = MultiSeries::compose(&theta, &MultiSeries::variable(v.clone(), 7, 0)).map_err(e)?;
    let ty = MultiSeries::compose(&theta, &MultiSeries::variable(v, 7, 1)).map_err(e)?;
    let lhs = MultiSeries::compose(&theta, law.series()).map_err(e)?;
    let diff = lhs.sub(&tx.add(&ty).map_err(e)?.sub(&tx.mul(&ty).map_err(e)?).map_err(e)?).map_err(e)?;
    ensure(diff.vanishes() && known_below(&diff) >= 30, || "θ is not a homomorphism below q^30".into())?;
    Ok("θ(F(x,y)) = θx + θy - θxθy, x-degree 6, q-order 30".into())
}

fn injectivity(_: u64) -> Check {
    let x = Gamma13Expansion::compute(52).map_err(e)?;
    let di = x.delta_inverse().map_err(e)?;
    let mut n = 0;
    for w in -24..=12 {
        let basis = modular_basis(w, 2);
        if basis.is_empty() {
            continue;
        }
        let ex: Vec<QLaurent> = basis.iter().map(|g| g.evaluate(&x.a1, &x.a3, &di)).collect();
        let rows: Vec<Vec<Rational>> = (-6..40)
            .map(|k| ex.iter().map(|f| f.coeff(k).ok_or("precision")).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        let zero = vec![rat(0, 1); rows.len()];
        let rank = solve_exact(&LinearSystem::new(rows, zero, basis.len()).map_err(e)?).rank;
        ensure(rank == basis.len(), || format!("weight {}: rank {} < {}", w, rank, basis.len()))?;
        n += basis.len();
    }
    Ok(format!("{} forms, weights -24..=12, pole ≤ 2, independent below q^40", n))
}

fn pontryagin_round_trip(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 8);
    let law = RootLaw::<GradedMf>::universal(7).map_err(e)?;
    for i in 0..50 {
        let m = rng.random_range(1..=3usize);
        let d = rng.random_range(0..=6i64);
        let p = random_pontryagin_poly(&mut rng, m as u32, 3, |r, part| {
            random_form(r, 2 * part.iter().sum::<u32>() as i64 - d, 1)
        });
        let c = p.evaluate(&pontryagin_series(m, m, &law, 7).map_err(e)?).map_err(e)?;
        ensure(decompose_into_pontryagin(&c, &law, 7).map_err(e)? == p, || format!("input {}", i))?;
    }
    let x = MultiSeries::variable(root_vars(1), 12, 0);
    let xb = conjugate_root(&RootLaw::<Rational>::multiplicative(12), 0, 1).map_err(e)?;
    ensure(x.add(&xb).map_err(e)? == x.mul(&xb).map_err(e)?, || "x + x̄ ≠ x x̄".into())?;
    Ok("50 inputs round trip; x + x̄ = x x̄".into())
}

fn square(seed: u64) -> Check {
    let sq = CharacterSquare::for_bounds(&LiftBounds { q_order: 20, x_degree: 7, max_pole: 1 }).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
    for i in 0..20 {
        let m = rng.random_range(1..=3usize);
        let d = rng.random_range(0..=6i64);
        let c = random_tmf_class(&mut rng, m, 2 * d, 7, 1).map_err(e)?;
        let top = sq.dold_character(&c).map_err(e)?.map_coeffs(|g| sq.qexpand(g));
        let bottom = sq.chern_character(&sq.miller_character(&c).map_err(e)?).map_err(e)?;
        let diff = top.sub(&bottom).map_err(e)?;
        ensure(diff.vanishes() && known_below(&diff) >= 20, || format!("class {}", i))?;
    }
    Ok("20 classes, q-order 20".into())
}

fn lift(seed: u64) -> Check {
    let start = Instant::now();
    let b = LiftBounds { q_order: 20, x_degree: 7, max_pole: 1 };
    let sq = CharacterSquare::for_bounds(&b).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 10);
    for i in 0..20 {
        let m = rng.random_range(1..=3usize);
        let d = rng.random_range(0..=6i64);
        let c = random_tmf_class(&mut rng, m, 2 * d, 7, 1).map_err(e)?;
        let lam = sq.miller_character(&c).map_err(e)?;
        let rep = sq.lift_from_tate(&lam, &b).map_err(e)?;
        ensure(rep.lift() == Some(&c), || format!("class {} not recovered", i))?;
        let k = rng.random_range(1..20i64);
        let kp = ktheory_pontryagin(m, 1, 7).map_err(e)?.remove(0).map_coeffs(QLaurent::from_rational);
        let bump = MultiSeries::one(root_vars(m), 7).add(&kp).map_err(e)?.scale(&QLaurent::monomial(rat(1, 1), k, EXACT));
        let bad = TorusClass::new(lam.series.add(&bump).map_err(e)?, c.degree).map_err(e)?;
        let out = sq.lift_from_tate(&bad, &b).map_err(e)?.outcome;
        ensure(matches!(out, LiftOutcome::NotLiftable(_)), || format!("perturbation of class {} accepted", i))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {:.1?}", t))?;
    Ok(format!("20 lifts and 20 witnesses in {:.1?}", t))
}

fn witten(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 11);
    // Â from the characteristic series (z/2)/sinh(z/2): log = -Σ B_2j z^2j/(2j (2j)!)
    let bern = [rat(1, 6), rat(-1, 30), rat(1, 42), rat(-1, 30)];
    let mut fact = rat(1, 1);
    let mut logc = Vec::new();
    for j in 1..=4i64 {
        fact *= rat((2 * j - 1) * 2 * j, 1);
        logc.push(-bern[j as usize - 1].clone() / (rat(2 * j, 1) * fact.clone()));
    }
    let a_hat = multiplicative_sequence(&logc, 4).map_err(e)?;
    for _ in 0..10 {
        let k = rng.random_range(1..=4u32);
        let mut numbers = BTreeMap::new();
        for part in tmf3_core::classes::pontryagin::partitions(k, k) {
            numbers.insert(part, rng.random_range(-1000..=1000i64));
        }
        let w = witten_genus_series(&numbers, 4 * k, 3).map_err(e)?;
        let want: Rational = numbers.iter().map(|(p, &n)| a_hat.coeff(p) * rat(n, 1)).sum();
        ensure(w.coeff(0) == Some(want.clone()), || format!("dim {}: constant term ≠ Â = {}", 4 * k, want))?;
    }
    let e4 = eisenstein(4, 20).map_err(e)?;
    for p2 in [1i64, 45] {
        let numbers = BTreeMap::from([(vec![1, 1], 0), (vec![2], p2)]);
        let w = witten_genus_series(&numbers, 8, 20).map_err(e)?;
        let rows = (0..20).map(|k| vec![e4.coeff(k).unwrap()]).collect();
        let rhs = (0..20).map(|k| w.coeff(k).ok_or("precision")).collect::<Result<_, _>>()?;
        let out = solve_exact(&LinearSystem::new(rows, rhs, 1).map_err(e)?);
        ensure(matches!(out.solution, Solution::Unique(_)), || "not in span{E4}".into())?;
    }
    Ok("constant term = Â on 10 inputs; p1 = 0, dim 8 in span{E4}".into())
}

fn jacobi(_: u64) -> Check {
    let c = C64::new;
    let taus = [c(0.1, 1.1), c(-0.35, 0.9), c(0.4, 1.5)];
    for &t in &taus {
        ensure(phi_numeric(t, c(0.0, 0.0)).map_err(e)? == c(0.0, 0.0), || "Φ(τ,0) ≠ 0".into())?;
        for z in [c(0.3, 0.2), c(-0.6, 0.45)] {
            let odd = phi_numeric(t, z).map_err(e)? + phi_numeric(t, -z).map_err(e)?;
            ensure(odd.norm() < TOL_ODD, || "oddness".into())?;
            let per = phi_numeric(t, z + c(0.0, 2.0 * std::f64::consts::PI)).map_err(e)? + phi_numeric(t, z).map_err(e)?;
            ensure(per.norm() < TOL_NUMERIC, || "quasi-periodicity".into())?;
        }
    }
    let samples: Vec<(Vec<C64>, C64)> = taus.iter().map(|&t| (vec![], t)).collect();
    let e4 = |_: &[C64], t: C64| e4_numeric(t);
    let e6 = |_: &[C64], t: C64| e6_numeric(t);
    ensure(check_invariance(&e4, 1, 1, 4, 0.0, &samples, TOL_NUMERIC).map_err(e)?.pass, || "E4".into())?;
    ensure(check_invariance(&e6, 1, 1, 6, 0.0, &samples, TOL_NUMERIC).map_err(e)?.pass, || "E6".into())?;
    ensure(!check_invariance(&e4, 1, 1, 2, 0.0, &samples, TOL_NUMERIC).map_err(e)?.pass, || "E4 at weight 2".into())?;
    ensure(!check_invariance(&e6, 1, 1, 2, 0.0, &samples, TOL_NUMERIC).map_err(e)?.pass, || "E6 at weight 2".into())?;
    let phi = |z: &[C64], t: C64| phi_numeric(t, z[0]);
    let (m1, m2) = ([1, 1, 0, 1], [0, -1, 1, 0]);
    let a = gamma_action(gamma_action(phi, m1, -1, 0.5).map_err(e)?, m2, -1, 0.5).map_err(e)?(&[c(0.2, 0.1)], taus[0]);
    let b = gamma_action(phi, mat_mul(&m1, &m2), -1, 0.5).map_err(e)?(&[c(0.2, 0.1)], taus[0]);
    let (a, b) = (a.map_err(e)?, b.map_err(e)?);
    ensure((a - b).norm() < TOL_NUMERIC * a.norm().max(1.0), || "cocycle".into())?;
    let s = s_character_series(6, 6).map_err(e)?;
    ensure(s.constant_term() == Laurent::one().truncate(6), || "augmentation".into())?;
    ensure(level_for(1, 5).map_err(e)? == 96, || "level_for".into())?;
    Ok("Φ numerics, E4/E6 invariance, cocycle, augmentation, level".into())
}

fn pipeline(seed: u64) -> Check {
    let b = LiftBounds { q_order: 10, x_degree: 5, max_pole: 1 };
    let sq = CharacterSquare::for_bounds(&b).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 13);
    for i in 0..5 {
        let rank = rng.random_range(1..=2usize);
        let level = rng.random_range(1..=2u32);
        let d = rng.random_range(0..=2i64);
        let c = random_tmf_class(&mut rng, rank, 2 * d, 5, 1).map_err(e)?;
        let ls = lambda_s(rank, 5, b.q_order).map_err(e)?.series.pow(level).map_err(e)?;
        let v = TorusClass::new(ls.mul(&sq.miller_character(&c).map_err(e)?.series).map_err(e)?, c.degree).map_err(e)?;
        let rep = phi_pipeline(&sq, &v, level, 0, &b).map_err(e)?;
        let ok = rep.product.as_ref().is_some_and(|p| p.s_power == level && p.tmf == c);
        ensure(ok, || format!("class {}", i))?;
    }
    Ok("5 classes, S^m · c recovered".into())
}

type Criterion = (&'static str, fn(u64) -> Check);

pub const CRITERIA: [Criterion; 13] = [
    ("FGL axioms", fgl_axioms),
    ("Hazewinkel generators", hazewinkel),
    ("discriminant", discriminant),
    ("Tate curve", tate),
    ("level-3 normalization", gamma13),
    ("strict isomorphism", strict_iso),
    ("q-expansion injectivity", injectivity),
    ("Pontryagin round trip", pontryagin_round_trip),
    ("character square", square),
    ("lift soundness", lift),
    ("Witten genus", witten),
    ("Jacobi numerics", jacobi),
    ("φ pipeline", pipeline),
];

pub fn run(suite: Suite, seed: u64, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let count = match suite {
        Suite::Core => 10,
        Suite::Full => 13,
    };
    CRITERIA[..count]
        .iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let start = Instant::now();
            let r = f(seed);
            let res = CriterionResult {
                id: i + 1,
                name,
                pass: r.is_ok(),
                detail: r.unwrap_or_else(|x| x),
                elapsed: start.elapsed(),
            };
            report(&res);
            res
        })
        .collect()
}
