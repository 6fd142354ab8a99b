//! Browser bindings: resolve a problem from JSON, tabulate the Stirling-number
//! coefficients with their log resolvents, and sample the coefficients of the
//! two-linear-roots operator at real exponents.

use std::collections::BTreeMap;

use serde_json::json;
use wasm_bindgen::prelude::*;

use resolvent_core::alpha::AlphaSymbol;
use resolvent_core::elimination::{eliminate_resolvent, Elimination};
use resolvent_core::io::{parse_problem, parse_specs, parse_template, ResolventFile};
use resolvent_core::kernel::{Field, XRat};
use resolvent_core::log_bell::{annihilates_basis, bell_b, log_resolvent};
use resolvent_core::numeric::{specialize_coefficient, RealContext};
use resolvent_core::powersum::{powersum_resolvent, Outcome};
use resolvent_core::tower::{apply_lodo, Lodo, MonicPoly, ProblemSpec, PseudoTerm};

/// Powersum resolvent as JSON: `{status, operator, annihilates, file}`.
pub fn resolve_json(problem: &str, template: &str, specs: &str) -> Result<String, String> {
    let p = parse_problem(problem).map_err(|e| e.to_string())?;
    let tpl = parse_template(template).map_err(|e| e.to_string())?;
    let specs = parse_specs(specs, &p, &tpl).map_err(|e| e.to_string())?;
    let out = match powersum_resolvent(&p, &tpl, &specs).map_err(|e| e.to_string())? {
        Outcome::Resolvent(r) => {
            let lodo = r.to_lodo();
            let ok = apply_lodo(&lodo, &p).map_err(|e| e.to_string())?.is_zero();
            let file: serde_json::Value =
                serde_json::from_str(&ResolventFile::powersum(&r, &specs).to_json())
                    .expect("valid json");
            json!({ "status": "ok", "operator": lodo.to_string(), "annihilates": ok, "file": file })
        }
        Outcome::IdenticallyZero => json!({ "status": "identically_zero" }),
    };
    Ok(out.to_string())
}

/// Rows `b(m, 0..=m)` for `m <= max_m`, and the log resolvent for exponent `a`.
pub fn bell_json(max_m: usize, a: usize) -> String {
    let rows: Vec<Vec<String>> = (0..=max_m)
        .map(|m| (0..=m).map(|k| bell_b(m, k).to_string()).collect())
        .collect();
    let r = log_resolvent(a);
    json!({
        "bell": rows,
        "alpha": a,
        "operator": r.to_string(),
        "annihilates": annihilates_basis(&r, a),
    })
    .to_string()
}

fn two_linear_roots() -> Lodo {
    let q = Field::Rational;
    let lin = |c: &[i64]| XRat::from_poly(resolvent_core::kernel::XPoly::from_i64s(q, c));
    let p = ProblemSpec::new(
        q,
        vec![
            MonicPoly::linear("z", lin(&[0, 1])).expect("monic"),
            MonicPoly::linear("v", lin(&[1, 1])).expect("monic"),
        ],
        vec![
            PseudoTerm::new(lin(&[1]), [("z", "alpha")]),
            PseudoTerm::new(lin(&[1]), [("v", "beta")]),
        ],
        vec!["alpha".into(), "beta".into()],
    )
    .expect("valid problem");
    match eliminate_resolvent(&p, &[0, 1, 2]).expect("three orders suffice") {
        Elimination::Resolvent(r) => r,
        Elimination::Degenerate => unreachable!("the operator is nonzero"),
    }
}

/// Values of the `D^2`, `D`, `1` coefficients of the resolvent of `x^alpha + (x+1)^beta`
/// at `samples` points of `[x_min, x_max]`, concatenated.
pub fn coefficient_samples(
    alpha: f64,
    beta: f64,
    x_min: f64,
    x_max: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    if samples < 2 || x_min.partial_cmp(&x_max) != Some(std::cmp::Ordering::Less) {
        return Err("need at least two samples on a nonempty interval".into());
    }
    let r = two_linear_roots();
    let mut ctx = RealContext::new(20).map_err(|e| e.to_string())?;
    let mut subs = BTreeMap::new();
    subs.insert(
        AlphaSymbol::new("alpha"),
        ctx.parse(&format!("{alpha:e}"))
            .map_err(|e| e.to_string())?,
    );
    subs.insert(
        AlphaSymbol::new("beta"),
        ctx.parse(&format!("{beta:e}")).map_err(|e| e.to_string())?,
    );
    let mut out = Vec::with_capacity(3 * samples);
    for m in [2, 1, 0] {
        let c = specialize_coefficient(&mut ctx, &r.coeff(m), &subs).map_err(|e| e.to_string())?;
        let c: Vec<f64> = c.iter().map(|v| ctx.to_f64(v)).collect();
        for i in 0..samples {
            let x = x_min + (x_max - x_min) * i as f64 / (samples - 1) as f64;
            out.push(c.iter().rev().fold(0.0, |acc, a| acc * x + a));
        }
    }
    Ok(out)
}

/// The symbolic operator the samples come from.
pub fn two_linear_roots_text() -> String {
    two_linear_roots().to_string()
}

#[wasm_bindgen]
pub fn resolve(problem: &str, template: &str, specs: &str) -> Result<String, JsValue> {
    resolve_json(problem, template, specs).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bell(max_m: usize, alpha: usize) -> String {
    bell_json(max_m, alpha)
}

#[wasm_bindgen]
pub fn coefficients(
    alpha: f64,
    beta: f64,
    x_min: f64,
    x_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsValue> {
    coefficient_samples(alpha, beta, x_min, x_max, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn operator_text() -> String {
    two_linear_roots_text()
}
