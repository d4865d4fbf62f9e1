//! Command-line dispatch.
//!
//! Exit status is 0 on success, 1 when the mathematics says no (a class
//! that does not lift, a failed invariance check, a failed criterion) and
//! 2 on misuse.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tmf3_core::classes::{decompose_into_pontryagin, pontryagin_series, RootLaw, TorusClass};
use tmf3_core::curve::{fgl_from_curve, formal_log, typicalize_2, FormalGroupLaw, WeierstrassCurve};
use tmf3_core::graded::GradedMf;
use tmf3_core::jacobi::{
    check_invariance, e4_numeric, e6_numeric, phi_numeric, phi_pipeline, phi_series, s_character_numeric,
    s_character_series, InvarianceReport,
};
use tmf3_core::lift::{witten_genus_series, CharacterSquare, LiftBounds, LiftOutcome};
use tmf3_core::modular::{qexpand, tate_curve, Gamma13Expansion};
use tmf3_core::series::{MultiSeries, QLaurent, Rational};

use crate::json::{self, JsonCoeff};
use crate::text::{render_series, Render};
use crate::verify::{self, Suite};

/// Environment variable naming the default truncation profile.
pub const PROFILE_VAR: &str = "TMF3_PROFILE";

const DEFAULT_SEED: u64 = 0x7a3e_11c5;

#[derive(Parser, Debug)]
#[command(name = "tmf3", version, about = "Exact computations for level-3 elliptic cohomology")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Universal,
    Additive,
    Multiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum JacobiFn {
    E4,
    E6,
    Phi,
    SChar,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Core,
    Full,
}

/// Truncations; unset values come from the profile.
#[derive(Args, Debug, Clone, Default)]
pub struct Bounds {
    /// q-order of the expansions.
    #[arg(long)]
    pub qorder: Option<i64>,
    /// Root-degree bound (terms of total degree below this are kept).
    #[arg(long)]
    pub xdeg: Option<u32>,
    /// Largest Δ-pole order in the coefficient span.
    #[arg(long)]
    pub max_pole: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Formal group law of a level-3 curve.
    Fgl {
        #[arg(long, default_value_t = 6)]
        bound: u32,
        /// Specialize a1 (a rational such as 3/2).
        #[arg(long, requires = "a3")]
        a1: Option<String>,
        #[arg(long, requires = "a1")]
        a3: Option<String>,
        /// Also print the logarithm.
        #[arg(long)]
        log: bool,
        /// Also print the 2-typical generators v1, v2.
        #[arg(long)]
        typical: bool,
    },
    /// Tate curve coefficients, or the level-3 normal form with `--level3`.
    Tate {
        #[arg(long)]
        qorder: Option<i64>,
        #[arg(long)]
        level3: bool,
    },
    /// q-expansion of a level-3 modular form.
    Qexpand {
        /// Form as JSON (inline, file, or `-` for stdin).
        #[arg(long, conflicts_with = "monomial")]
        form: Option<String>,
        /// `alpha,beta,s` for a1^alpha a3^beta Δ^-s.
        #[arg(long)]
        monomial: Option<String>,
        #[arg(long)]
        qorder: Option<i64>,
    },
    /// Pontryagin classes on the rank-m torus.
    Pontryagin {
        #[arg(long)]
        rank: usize,
        /// Highest class index (defaults to the rank).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = Law::Universal)]
        law: Law,
    },
    /// Write a Weyl-invariant class as a polynomial in Pontryagin classes.
    Decompose {
        #[arg(long)]
        class: String,
        #[arg(long)]
        bound: Option<u32>,
        /// Law for rational classes (modular-form classes use the universal law).
        #[arg(long, value_enum, default_value_t = Law::Additive)]
        law: Law,
    },
    /// Miller character of a TMF1(3) class, with the character-square check.
    Character {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Decide whether a K_Tate class lifts to TMF1(3).
    Lift {
        #[arg(long)]
        vhat: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Witten genus from Pontryagin numbers.
    Witten {
        #[arg(long)]
        dim: u32,
        /// Object such as {"1,1": 0, "2": 45} (inline or file).
        #[arg(long)]
        numbers: String,
        #[arg(long)]
        qorder: Option<i64>,
    },
    /// Jacobi-form checks.
    Jacobi {
        #[command(subcommand)]
        command: JacobiCommand,
    },
    /// Evaluate or expand the Φ-function.
    Phi {
        /// τ as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// z as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Use the S character Φ(z-ω)/Φ(-ω) instead.
        #[arg(long)]
        s_char: bool,
        /// Expand symbolically instead of evaluating.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        qorder: Option<i64>,
    },
    /// Loop-group pipeline: lift V̂ λ(S)^-m and multiply by S^m.
    LoopLift {
        #[arg(long)]
        vhat: String,
        #[arg(long)]
        level_m: u32,
        /// Integer q-power normalization applied to V̂.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Full)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum JacobiCommand {
    /// Sample the Γ(n) action and report the largest deviation.
    Check {
        #[arg(long, default_value_t = 1)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        weight: i32,
        #[arg(long, default_value_t = 0.0)]
        index: f64,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = verify::TOL_NUMERIC)]
        tol: f64,
        /// Entry bound for the enumerated Γ(n) elements.
        #[arg(long, default_value_t = 1)]
        height: i64,
        #[arg(long = "fn", value_enum)]
        function: JacobiFn,
        /// q-series JSON for `--fn file`.
        #[arg(long, required_if_eq("function", "file"))]
        path: Option<String>,
    },
}

/// Misuse: bad input files, malformed values, out-of-range bounds.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!(Usage(format!("{:#}", e))))
}

/// Default truncations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub q_order: i64,
    pub x_degree: u32,
    pub max_pole: u32,
}

impl Profile {
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "small" => Some(Profile { q_order: 12, x_degree: 5, max_pole: 1 }),
            "default" => Some(Profile { q_order: 20, x_degree: 7, max_pole: 1 }),
            "large" => Some(Profile { q_order: 40, x_degree: 9, max_pole: 2 }),
            _ => None,
        }
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(PROFILE_VAR) {
            Ok(name) => Self::named(&name)
                .ok_or_else(|| anyhow!(Usage(format!("{} must be small, default or large, not {:?}", PROFILE_VAR, name)))),
            Err(_) => Ok(Self::named("default").expect("known profile")),
        }
    }

    fn bounds(&self, b: &Bounds) -> LiftBounds {
        LiftBounds {
            q_order: b.qorder.unwrap_or(self.q_order),
            x_degree: b.xdeg.unwrap_or(self.x_degree),
            max_pole: b.max_pole.unwrap_or(self.max_pole),
        }
    }
}

/// What a command produced.
pub struct Output {
    pub human: String,
    pub json: Value,
    /// False when the answer is a mathematical "no".
    pub ok: bool,
}

impl Output {
    fn ok(human: String, json: Value) -> Self {
        Output { human, json, ok: true }
    }
}

fn read_input(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("cannot read {}", arg))?
    };
    serde_json::from_str(&text).with_context(|| format!("invalid JSON in {}", arg))
}

fn parse_complex(s: &str) -> Result<C64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().with_context(|| format!("bad number {:?}", x));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(anyhow!("expected re,im but got {:?}", s)),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| anyhow!("bad rational {:?}", s))
}

fn ring_of(v: &Value) -> Option<&str> {
    v.get("ring").and_then(Value::as_str)
}

fn rational_law(law: Law, bound: u32) -> Result<RootLaw<Rational>> {
    match law {
        Law::Additive => Ok(RootLaw::additive(bound)),
        Law::Multiplicative => Ok(RootLaw::multiplicative(bound)),
        Law::Universal => Err(anyhow!(Usage("the universal law has modular-form coefficients".into()))),
    }
}

fn law_report<R: JsonCoeff + Render>(f: &FormalGroupLaw<R>, log: bool, typical: bool) -> Result<Output> {
    let mut human = format!("F(x, y) = {}\n", render_series(f.series()));
    let mut j = json!({ "schema": json::SCHEMA, "kind": "formal-group-law", "law": json::series_to_json(f.series()) });
    if log {
        let l = formal_log(f)?;
        human += &format!("log(t) = {}\n", render_series(&l));
        j["log"] = json::series_to_json(&l);
    }
    if typical {
        let d = typicalize_2(f)?;
        human += &format!("v1 = {}\nv2 = {}\n", d.v1.render(), d.v2.render());
        j["v1"] = d.v1.to_json();
        j["v2"] = d.v2.to_json();
    }
    Ok(Output::ok(human, j))
}

fn cmd_fgl(bound: u32, a1: Option<String>, a3: Option<String>, log: bool, typical: bool) -> Result<Output> {
    match (a1, a3) {
        (Some(a1), Some(a3)) => {
            let c = WeierstrassCurve::gamma1_3(usage(parse_rational(&a1))?, usage(parse_rational(&a3))?);
            law_report(&fgl_from_curve(&c, bound)?, log, typical)
        }
        _ => law_report(&fgl_from_curve(&WeierstrassCurve::universal(), bound)?, log, typical),
    }
}

fn cmd_tate(n: i64, level3: bool) -> Result<Output> {
    if level3 {
        let e = Gamma13Expansion::compute(n)?;
        let d = e.delta();
        let human = format!("a1 = {}\na3 = {}\nΔ = {}\n", e.a1.render(), e.a3.render(), d.render());
        let j = json!({
            "schema": json::SCHEMA, "kind": "level3-expansion",
            "a1": json::laurent_to_json(&e.a1), "a3": json::laurent_to_json(&e.a3),
            "delta": json::laurent_to_json(&d),
        });
        Ok(Output::ok(human, j))
    } else {
        let t = tate_curve(n)?;
        let d = t.curve().discriminant();
        let human = format!("B = {}\nC = {}\nΔ = {}\n", t.b.render(), t.c.render(), d.render());
        let j = json!({
            "schema": json::SCHEMA, "kind": "tate-curve",
            "b": json::laurent_to_json(&t.b), "c": json::laurent_to_json(&t.c),
            "delta": json::laurent_to_json(&d),
        });
        Ok(Output::ok(human, j))
    }
}

fn cmd_qexpand(form: Option<String>, monomial: Option<String>, n: i64) -> Result<Output> {
    let g = match (form, monomial) {
        (Some(f), _) => usage(read_input(&f).and_then(|v| json::form_from_json(&v)))?,
        (None, Some(m)) => {
            let parts: Vec<u32> = usage(
                m.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| anyhow!("bad monomial {:?}", m))).collect(),
            )?;
            let [a, b, s] = parts[..] else {
                return Err(anyhow!(Usage("--monomial takes alpha,beta,s".into())));
            };
            GradedMf::monomial(Rational::from_integer(1.into()), a, b, s)
        }
        (None, None) => return Err(anyhow!(Usage("give --form or --monomial".into()))),
    };
    let e = Gamma13Expansion::compute(n + 6 * g.pole() as i64)?;
    let f = qexpand(&g, &e)?.truncate(n);
    Ok(Output::ok(format!("{} = {}\n", g, f.render()), json::laurent_to_json(&f)))
}

fn classes_output<R: JsonCoeff + Render>(ps: &[MultiSeries<R>]) -> Output {
    let mut human = String::new();
    let mut list = Vec::new();
    for (j, p) in ps.iter().enumerate() {
        human += &format!("p{} = {}\n", j + 1, render_series(p));
        let c = TorusClass::new(p.clone(), 4 * (j as i64 + 1)).expect("even degree");
        list.push(json::class_to_json(&c));
    }
    Output::ok(human, Value::Array(list))
}

fn cmd_pontryagin(m: usize, k: usize, bound: u32, law: Law) -> Result<Output> {
    if m == 0 {
        return Err(anyhow!(Usage("--rank must be positive".into())));
    }
    match law {
        Law::Universal => Ok(classes_output(&pontryagin_series(m, k, &RootLaw::universal(bound)?, bound)?)),
        _ => Ok(classes_output(&pontryagin_series(m, k, &rational_law(law, bound)?, bound)?)),
    }
}

fn poly_output<R: JsonCoeff + Render>(p: &tmf3_core::classes::PontryaginPoly<R>) -> Output {
    let mut parts = Vec::new();
    for (part, c) in p.terms() {
        let mono: Vec<String> = part.iter().map(|i| format!("p{}", i)).collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
        parts.push(format!("({})*{}", c.render(), mono));
    }
    let human = if parts.is_empty() { "0\n".into() } else { parts.join(" + ") + "\n" };
    Output::ok(human, json::pontryagin_to_json(p))
}

fn cmd_decompose(class: &str, bound: Option<u32>, law: Law) -> Result<Output> {
    let v = usage(read_input(class))?;
    match ring_of(&v) {
        Some(GradedMf::RING) => {
            let c: TorusClass<GradedMf> = usage(json::class_from_json(&v))?;
            let b = bound.unwrap_or(c.series.bound());
            Ok(poly_output(&decompose_into_pontryagin(&c.series, &RootLaw::universal(b)?, b)?))
        }
        Some(Rational::RING) => {
            let c: TorusClass<Rational> = usage(json::class_from_json(&v))?;
            let b = bound.unwrap_or(c.series.bound());
            Ok(poly_output(&decompose_into_pontryagin(&c.series, &rational_law(law, b)?, b)?))
        }
        other => Err(anyhow!(Usage(format!("cannot decompose a class over {:?}", other)))),
    }
}

fn cmd_character(class: &str, b: LiftBounds) -> Result<Output> {
    let c: TorusClass<GradedMf> = usage(read_input(class).and_then(|v| json::class_from_json(&v)))?;
    let sq = CharacterSquare::for_bounds(&LiftBounds { x_degree: b.x_degree.min(c.series.bound()), ..b })?;
    let lam = sq.miller_character(&c)?;
    let lam = TorusClass::new(lam.series.map_coeffs(|f| f.truncate(b.q_order)), lam.degree)?;
    let commutes = sq.square_commutes(&c)?;
    let human = format!("λ(c) = {}\nsquare commutes: {}\n", render_series(&lam.series), commutes);
    let j = json!({
        "schema": json::SCHEMA, "kind": "miller-character",
        "character": json::class_to_json(&lam), "square_commutes": commutes,
    });
    Ok(Output { human, json: j, ok: commutes })
}

fn cmd_lift(vhat: &str, b: LiftBounds) -> Result<Output> {
    let c: TorusClass<QLaurent> = usage(read_input(vhat).and_then(|v| json::class_from_json(&v)))?;
    let sq = CharacterSquare::for_bounds(&b)?;
    let rep = sq.lift_from_tate(&c, &b)?;
    let human = match &rep.outcome {
        LiftOutcome::Lifted(t) => format!("lifts to {}\n", render_series(&t.series)),
        LiftOutcome::NotLiftable(w) => format!(
            "not liftable: Chern-character coefficient of z^{:?} (degree {}, weight {}) is outside the span; residual {}\n",
            w.monomial, w.degree, w.weight, w.residual
        ),
        LiftOutcome::Inconclusive { degree, monomial, valuation } => format!(
            "inconclusive: z^{:?} in degree {} has a pole of order {} beyond the allowed span\n",
            monomial, degree, -valuation
        ),
    };
    let ok = rep.is_liftable();
    Ok(Output { human, json: json::lift_report_to_json(&rep), ok })
}

fn cmd_witten(dim: u32, numbers: &str, n: i64) -> Result<Output> {
    let nums = usage(read_input(numbers).and_then(|v| json::numbers_from_json(&v)))?;
    let w = witten_genus_series(&nums, dim, n)?;
    Ok(Output::ok(format!("φ_W = {}\n", w.render()), json::laurent_to_json(&w)))
}

fn sample_points(rng: &mut ChaCha8Rng, count: usize, zs: usize) -> Vec<(Vec<C64>, C64)> {
    (0..count)
        .map(|_| {
            let tau = C64::new(rng.random_range(-0.5..0.5), rng.random_range(0.8..1.6));
            let z = (0..zs).map(|_| C64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3))).collect();
            (z, tau)
        })
        .collect()
}

fn invariance_output(r: &InvarianceReport, tol: f64) -> Output {
    let verdict = if r.pass { "pass" } else { "fail" };
    let human = format!(
        "{}: max relative deviation {:.3e} (tol {:.1e}) over {} matrices × {} samples{}\n",
        verdict,
        r.max_deviation,
        tol,
        r.matrices,
        r.samples,
        r.worst.map(|m| format!(", worst {:?}", m)).unwrap_or_default()
    );
    let j = json!({
        "schema": json::SCHEMA, "kind": "invariance-report",
        "pass": r.pass, "max_deviation": r.max_deviation, "worst": r.worst,
        "matrices": r.matrices, "samples": r.samples, "tol": tol,
    });
    Output { human, json: j, ok: r.pass }
}

#[allow(clippy::too_many_arguments)]
fn cmd_jacobi_check(
    seed: u64,
    level: i64,
    weight: i32,
    index: f64,
    samples: usize,
    tol: f64,
    height: i64,
    function: JacobiFn,
    path: Option<String>,
) -> Result<Output> {
    if samples == 0 || level < 1 || height < 1 {
        return Err(anyhow!(Usage("--samples, --level and --height must be positive".into())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs = usize::from(matches!(function, JacobiFn::Phi | JacobiFn::SChar));
    let pts = sample_points(&mut rng, samples, zs);
    let r = match function {
        JacobiFn::E4 => check_invariance(&|_: &[C64], t| e4_numeric(t), level, height, weight, index, &pts, tol)?,
        JacobiFn::E6 => check_invariance(&|_: &[C64], t| e6_numeric(t), level, height, weight, index, &pts, tol)?,
        JacobiFn::Phi => check_invariance(&|z: &[C64], t| phi_numeric(t, z[0]), level, height, weight, index, &pts, tol)?,
        JacobiFn::SChar => {
            check_invariance(&|z: &[C64], t| s_character_numeric(t, z[0]), level, height, weight, index, &pts, tol)?
        }
        JacobiFn::File => {
            let p = path.ok_or_else(|| anyhow!(Usage("--fn file needs --path".into())))?;
            let f = usage(read_input(&p).and_then(|v| json::laurent_from_json(&v)))?;
            let terms: Vec<(i64, f64)> = f.terms().map(|(e, c)| (e, c.to_f64().unwrap_or(f64::NAN))).collect();
            let eval = move |_: &[C64], t: C64| -> tmf3_core::Result<C64> {
                if t.im <= 0.0 {
                    return Err(tmf3_core::Error::NotUpperHalfPlane(t.im));
                }
                let q = (C64::new(0.0, 2.0 * std::f64::consts::PI) * t).exp();
                Ok(terms.iter().map(|&(e, c)| q.powi(e as i32) * c).sum())
            };
            check_invariance(&eval, level, height, weight, index, &pts, tol)?
        }
    };
    Ok(invariance_output(&r, tol))
}

fn cmd_phi(tau: Option<String>, z: Option<String>, s_char: bool, symbolic: bool, bound: u32, n: i64) -> Result<Output> {
    if symbolic {
        if s_char {
            let s = s_character_series(bound, n)?;
            let mut human = String::from("s(z) = Φ(z-ω)/Φ(-ω), coefficients in Q(ζ):\n");
            let mut terms = Vec::new();
            for (m, c) in s.terms() {
                let re = c.map(|x| x.re.clone());
                let im = c.map(|x| x.im.clone());
                human += &format!("  z^{}: ({}) + ({})·ζ\n", m[0], re.render(), im.render());
                terms.push(json!({ "exp": m, "re": re.to_json(), "zeta": im.to_json() }));
            }
            let j = json!({ "schema": json::SCHEMA, "ring": "cyclotomic-q-laurent", "vars": ["z"], "bound": bound, "terms": terms });
            return Ok(Output::ok(human, j));
        }
        let s = phi_series(bound, n)?;
        return Ok(Output::ok(format!("Φ = {}\n", render_series(&s)), json::series_to_json(&s)));
    }
    let (Some(tau), Some(z)) = (tau, z) else {
        return Err(anyhow!(Usage("numeric mode needs --tau and --z".into())));
    };
    let (tau, z) = (usage(parse_complex(&tau))?, usage(parse_complex(&z))?);
    let v = if s_char { s_character_numeric(tau, z)? } else { phi_numeric(tau, z)? };
    let human = format!("{} = {:.15e} {:+.15e}i\n", if s_char { "s" } else { "Φ" }, v.re, v.im);
    Ok(Output::ok(human, json!({ "schema": json::SCHEMA, "kind": "complex", "re": v.re, "im": v.im })))
}

fn cmd_loop_lift(vhat: &str, level_m: u32, shift: i64, b: LiftBounds) -> Result<Output> {
    let v: TorusClass<QLaurent> = usage(read_input(vhat).and_then(|v| json::class_from_json(&v)))?;
    let sq = CharacterSquare::for_bounds(&b)?;
    let r = phi_pipeline(&sq, &v, level_m, shift, &b)?;
    let mut j = json::lift_report_to_json(&r.lift);
    j["kind"] = json!("loop-lift-report");
    j["level_m"] = json!(level_m);
    j["shift"] = json!(shift);
    let human = match &r.product {
        Some(p) => {
            j["product"] = json!({ "s_power": p.s_power, "tmf": json::class_to_json(&p.tmf) });
            format!("φ[V] = S^{} · ({})\n", p.s_power, render_series(&p.tmf.series))
        }
        None => format!("V̂ λ(S)^-{} does not lift: {:?}\n", level_m, j["outcome"]["status"]),
    };
    let ok = r.is_liftable();
    Ok(Output { human, json: j, ok })
}

fn cmd_verify(suite: SuiteArg, seed: u64, format: Format) -> Result<Output> {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Full => Suite::Full,
    };
    let results = verify::run(suite, seed, |r| {
        if format == Format::Human {
            println!("{} {:>2} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
            let _ = std::io::stdout().flush();
        }
    });
    let failed = results.iter().filter(|r| !r.pass).count();
    let human = format!("{} of {} criteria pass\n", results.len() - failed, results.len());
    let list: Vec<Value> = results
        .iter()
        .map(|r| json!({ "id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail }))
        .collect();
    let j = json!({ "schema": json::SCHEMA, "kind": "verify", "seed": seed, "criteria": list });
    Ok(Output { human, json: j, ok: failed == 0 })
}

pub fn execute(cli: Cli) -> Result<Output> {
    let profile = Profile::from_env()?;
    let seed = cli.seed;
    match cli.command {
        Command::Fgl { bound, a1, a3, log, typical } => cmd_fgl(bound, a1, a3, log, typical),
        Command::Tate { qorder, level3 } => cmd_tate(qorder.unwrap_or(profile.q_order), level3),
        Command::Qexpand { form, monomial, qorder } => cmd_qexpand(form, monomial, qorder.unwrap_or(profile.q_order)),
        Command::Pontryagin { rank, k, bound, law } => cmd_pontryagin(rank, k.unwrap_or(rank), bound.unwrap_or(profile.x_degree), law),
        Command::Decompose { class, bound, law } => cmd_decompose(&class, bound, law),
        Command::Character { class, bounds } => cmd_character(&class, profile.bounds(&bounds)),
        Command::Lift { vhat, bounds } => cmd_lift(&vhat, profile.bounds(&bounds)),
        Command::Witten { dim, numbers, qorder } => cmd_witten(dim, &numbers, qorder.unwrap_or(profile.q_order)),
        Command::Jacobi { command: JacobiCommand::Check { level, weight, index, samples, tol, height, function, path } } => {
            cmd_jacobi_check(seed, level, weight, index, samples, tol, height, function, path)
        }
        Command::Phi { tau, z, s_char, symbolic, bound, qorder } => {
            cmd_phi(tau, z, s_char, symbolic, bound, qorder.unwrap_or(profile.q_order))
        }
        Command::LoopLift { vhat, level_m, shift, bounds } => cmd_loop_lift(&vhat, level_m, shift, profile.bounds(&bounds)),
        Command::Verify { suite } => cmd_verify(suite, seed, cli.format),
    }
}

/// Library errors that mean the request itself was malformed.
fn is_usage(e: &anyhow::Error) -> bool {
    use tmf3_core::Error as E;
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<E>(),
        Some(
            E::VariableMismatch { .. }
                | E::BoundTooSmall { .. }
                | E::TruncationTooSmall(_)
                | E::UnsupportedWeight(_)
                | E::NotUpperHalfPlane(_)
                | E::NotUnimodular(_)
                | E::InvalidArgument(_)
                | E::InconsistentPartition(_)
                | E::NotWeylInvariant(_)
        )
    )
}

pub fn main_with(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(out) => {
            match format {
                Format::Human => print!("{}", out.human),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
