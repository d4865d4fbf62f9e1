//! Versioned JSON encodings.
//!
//! Every document carries `"schema": 1` and a `"ring"` tag. Rationals are
//! strings such as `"-7/12"`.
//!
//! | ring            | coefficient encoding                                     |
//! |-----------------|----------------------------------------------------------|
//! | `rational`      | `"p/q"`                                                  |
//! | `q-laurent`     | `{"terms": [[e, "c"], ...], "trunc": N or null}`          |
//! | `modular-forms` | `{"terms": [[alpha, beta, "c"], ...], "pole": s}`        |
//!
//! A torus class is
//! `{"schema": 1, "ring": .., "degree": 2d, "vars": [..], "bound": B,
//!   "terms": [{"exp": [..], "coeff": ..}, ...]}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use tmf3_core::classes::{PontryaginPoly, TorusClass};
use tmf3_core::graded::{GradedMf, Poly};
use tmf3_core::lift::{Certificate, LiftOutcome, LiftReport, Witness};
use tmf3_core::series::{Coeff, MultiSeries, QLaurent, Rational, EXACT};

pub const SCHEMA: u64 = 1;

/// A coefficient ring with a JSON encoding.
pub trait JsonCoeff: Coeff {
    const RING: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| anyhow!("bad rational {:?}", s)),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| anyhow!("non-integer number {}; write rationals as strings", n)),
        _ => bail!("expected a rational, got {}", v),
    }
}

impl JsonCoeff for Rational {
    const RING: &'static str = "rational";

    fn to_json(&self) -> Value {
        rational_to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

impl JsonCoeff for QLaurent {
    const RING: &'static str = "q-laurent";

    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms().map(|(e, c)| json!([e, rational_to_json(c)])).collect();
        let trunc = if self.is_exact() { Value::Null } else { json!(self.trunc()) };
        json!({ "terms": terms, "trunc": trunc })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let trunc = match v.get("trunc") {
            None | Some(Value::Null) => EXACT,
            Some(t) => t.as_i64().ok_or_else(|| anyhow!("bad trunc {}", t))?,
        };
        let terms = array(v, "terms")?
            .iter()
            .map(|t| {
                let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| anyhow!("bad term {}", t))?;
                let e = pair[0].as_i64().ok_or_else(|| anyhow!("bad exponent {}", pair[0]))?;
                Ok((e, rational_from_json(&pair[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QLaurent::from_terms(terms, trunc))
    }
}

impl JsonCoeff for GradedMf {
    const RING: &'static str = "modular-forms";

    fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.numerator().iter().map(|(&(a, b), c)| json!([a, b, rational_to_json(c)])).collect();
        json!({ "terms": terms, "pole": self.pole() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pole = v.get("pole").and_then(Value::as_u64).unwrap_or(0) as u32;
        let mut num = Poly::new();
        for t in array(v, "terms")? {
            let triple = t.as_array().filter(|p| p.len() == 3).ok_or_else(|| anyhow!("bad term {}", t))?;
            let a = triple[0].as_u64().ok_or_else(|| anyhow!("bad exponent"))? as u32;
            let b = triple[1].as_u64().ok_or_else(|| anyhow!("bad exponent"))? as u32;
            let c = rational_from_json(&triple[2])?;
            *num.entry((a, b)).or_insert_with(|| Rational::from_integer(0.into())) += c;
        }
        Ok(GradedMf::new(num, pole))
    }
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| anyhow!("missing array {:?}", key))
}

fn check_header(v: &Value, ring: &str) -> Result<()> {
    match v.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA) => {}
        other => bail!("unsupported schema {:?}", other),
    }
    match v.get("ring").and_then(Value::as_str) {
        Some(r) if r == ring => Ok(()),
        other => bail!("expected ring {:?}, found {:?}", ring, other),
    }
}

pub fn series_body<R: JsonCoeff>(s: &MultiSeries<R>) -> Value {
    let terms: Vec<Value> = s.terms().map(|(m, c)| json!({ "exp": m, "coeff": c.to_json() })).collect();
    json!({ "vars": s.vars(), "bound": s.bound(), "terms": terms })
}

pub fn series_to_json<R: JsonCoeff>(s: &MultiSeries<R>) -> Value {
    let mut v = series_body(s);
    v["schema"] = json!(SCHEMA);
    v["ring"] = json!(R::RING);
    v
}

pub fn series_from_json<R: JsonCoeff>(v: &Value) -> Result<MultiSeries<R>> {
    let vars: Vec<String> = array(v, "vars")?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| anyhow!("bad variable {}", x)))
        .collect::<Result<_>>()?;
    let bound = v.get("bound").and_then(Value::as_u64).ok_or_else(|| anyhow!("missing bound"))? as u32;
    let mut s = MultiSeries::zero(vars.clone(), bound);
    for t in array(v, "terms")? {
        let exp: Vec<u32> = serde_json::from_value(t.get("exp").cloned().unwrap_or(Value::Null))
            .context("bad exponent vector")?;
        if exp.len() != vars.len() {
            bail!("exponent {:?} does not match {} variables", exp, vars.len());
        }
        let c = R::from_json(t.get("coeff").ok_or_else(|| anyhow!("missing coeff"))?)?;
        s.add_term(exp, &c);
    }
    Ok(s)
}

pub fn class_to_json<R: JsonCoeff>(c: &TorusClass<R>) -> Value {
    let mut v = series_to_json(&c.series);
    v["degree"] = json!(c.degree);
    v
}

pub fn class_from_json<R: JsonCoeff>(v: &Value) -> Result<TorusClass<R>> {
    check_header(v, R::RING)?;
    let degree = v.get("degree").and_then(Value::as_i64).ok_or_else(|| anyhow!("missing degree"))?;
    Ok(TorusClass::new(series_from_json(v)?, degree)?)
}

pub fn laurent_to_json(f: &QLaurent) -> Value {
    let mut v = f.to_json();
    v["schema"] = json!(SCHEMA);
    v["ring"] = json!(QLaurent::RING);
    v
}

pub fn laurent_from_json(v: &Value) -> Result<QLaurent> {
    check_header(v, QLaurent::RING)?;
    QLaurent::from_json(v)
}

pub fn form_to_json(g: &GradedMf) -> Value {
    let mut v = g.to_json();
    v["schema"] = json!(SCHEMA);
    v["ring"] = json!(GradedMf::RING);
    v
}

pub fn form_from_json(v: &Value) -> Result<GradedMf> {
    check_header(v, GradedMf::RING)?;
    GradedMf::from_json(v)
}

pub fn pontryagin_to_json<R: JsonCoeff>(p: &PontryaginPoly<R>) -> Value {
    let terms: Vec<Value> = p.terms().map(|(part, c)| json!({ "partition": part, "coeff": c.to_json() })).collect();
    json!({ "schema": SCHEMA, "ring": R::RING, "kind": "pontryagin-polynomial", "terms": terms })
}

pub fn pontryagin_from_json<R: JsonCoeff>(v: &Value) -> Result<PontryaginPoly<R>> {
    check_header(v, R::RING)?;
    let mut p = PontryaginPoly::zero();
    for t in array(v, "terms")? {
        let part: Vec<u32> = serde_json::from_value(t.get("partition").cloned().unwrap_or(Value::Null))
            .context("bad partition")?;
        p.add_term(part, &R::from_json(t.get("coeff").ok_or_else(|| anyhow!("missing coeff"))?)?);
    }
    Ok(p)
}

pub fn witness_to_json(w: &Witness) -> Value {
    let relation: Vec<Value> = w.relation.iter().map(|(e, r)| json!([e, rational_to_json(r)])).collect();
    json!({
        "degree": w.degree,
        "monomial": w.monomial,
        "weight": w.weight,
        "relation": relation,
        "residual": rational_to_json(&w.residual),
    })
}

fn certificate_to_json(c: &Certificate) -> Value {
    json!({ "q_order": c.q_order, "x_degree": c.x_degree, "max_pole": c.max_pole })
}

pub fn lift_report_to_json(r: &LiftReport) -> Value {
    let outcome = match &r.outcome {
        LiftOutcome::Lifted(t) => json!({ "status": "lifted", "lift": class_to_json(t) }),
        LiftOutcome::NotLiftable(w) => json!({ "status": "not-liftable", "witness": witness_to_json(w) }),
        LiftOutcome::Inconclusive { degree, monomial, valuation } => json!({
            "status": "inconclusive",
            "degree": degree,
            "monomial": monomial,
            "valuation": valuation,
        }),
    };
    json!({
        "schema": SCHEMA,
        "kind": "lift-report",
        "outcome": outcome,
        "certificate": certificate_to_json(&r.certificate),
        "solves": r.solves,
    })
}

/// Pontryagin numbers keyed by partition, e.g. `{"1,1": 0, "2": 45}`.
pub fn numbers_from_json(v: &Value) -> Result<BTreeMap<Vec<u32>, i64>> {
    let obj = v.as_object().ok_or_else(|| anyhow!("expected an object of Pontryagin numbers"))?;
    obj.iter()
        .map(|(k, n)| Ok((parse_partition(k)?, n.as_i64().ok_or_else(|| anyhow!("bad number {}", n))?)))
        .collect()
}

pub fn parse_partition(s: &str) -> Result<Vec<u32>> {
    let mut p: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().with_context(|| format!("bad partition {:?}", s)))
        .collect::<Result<_>>()?;
    p.sort();
    Ok(p)
}
