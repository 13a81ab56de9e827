//! Browser front end: bound curves, a Lambert W calculator and the exact
//! oracle for small families.
//!
//! Each export is a thin wrapper over a plain function so the logic runs in
//! native tests. Curves come back as flat `Float64Array`s, four numbers per
//! point: `x, new_bound, exact_threshold, gyarmati_bound`.

use wasm_bindgen::prelude::*;

use fcbound_core::bounds::BoundReport;
use fcbound_core::fcomplexity::{family_complexity, BinaryFamily};
use fcbound_core::gf::DEFAULT_ENUMERATION_BUDGET;
use fcbound_core::lambertw::{w0_complex, Complex64};
use fcbound_core::legendre_seq::build_family;
use fcbound_core::ntheory::next_prime;

/// Rows returned by the curve functions are capped at this count.
pub const MAX_POINTS: usize = 5000;
/// The in-browser oracle refuses families needing more checks than this.
pub const ORACLE_BUDGET: u64 = 20_000_000;

fn push_row(out: &mut Vec<f64>, x: f64, r: &BoundReport) {
    out.extend_from_slice(&[x, r.new_bound, r.exact_threshold, r.gyarmati_bound]);
}

pub fn curve_over_k(p: u64, k_min: u64, k_max: u64) -> Result<Vec<f64>, String> {
    if k_min == 0 || k_min > k_max {
        return Err(format!("empty degree range {k_min}..={k_max}"));
    }
    if (k_max - k_min) as usize >= MAX_POINTS {
        return Err(format!("at most {MAX_POINTS} degrees per curve"));
    }
    let mut out = Vec::new();
    for k in k_min..=k_max {
        let r = BoundReport::compute(p, k).map_err(|e| e.to_string())?;
        push_row(&mut out, k as f64, &r);
    }
    Ok(out)
}

/// Primes in `p_min..=p_max`, thinned to at most [`MAX_POINTS`] by stepping
/// through the range.
pub fn curve_over_p(k: u64, p_min: u64, p_max: u64) -> Result<Vec<f64>, String> {
    if k == 0 {
        return Err("k must be a positive integer".into());
    }
    let lo = p_min.max(3);
    if lo > p_max {
        return Err(format!("empty prime range {p_min}..={p_max}"));
    }
    let stride = ((p_max - lo) / MAX_POINTS as u64).max(1);
    let mut out = Vec::new();
    let mut start = lo;
    while start <= p_max {
        let Some(p) = next_prime(start.max(3)) else { break };
        if p > p_max {
            break;
        }
        let r = BoundReport::compute(p, k).map_err(|e| e.to_string())?;
        push_row(&mut out, p as f64, &r);
        start = p.saturating_add(stride).max(p + 1);
    }
    Ok(out)
}

pub fn lambert_w(re: f64, im: f64) -> Result<[f64; 2], String> {
    let w = w0_complex(Complex64::new(re, im)).map_err(|e| e.to_string())?;
    Ok([w.re, w.im])
}

/// Plain-text oracle report for `F_irred(k, p)`.
pub fn oracle_report(p: u64, k: usize) -> Result<String, String> {
    let family = build_family(p, k, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
    let bin = BinaryFamily::try_from(&family).map_err(|e| e.to_string())?;
    let res = family_complexity(&bin, None, ORACLE_BUDGET).map_err(|e| e.to_string())?;
    let r = BoundReport::compute(p, k as u64).map_err(|e| e.to_string())?;
    let mut s = format!(
        "F_irred({k}, {p}): {} sequences of length {p}\n\
         exact complexity      {}\n\
         guaranteed lower bound {}  (raw {:.6}, exact root {:.6})\n\
         upper bound log2|F|   {:.6}\n",
        bin.size(),
        res.gamma,
        r.guaranteed_j,
        r.new_bound,
        r.exact_threshold,
        r.upper_bound
    );
    if let Some(w) = &res.witness_failure {
        let pairs: Vec<String> = w
            .positions
            .iter()
            .zip(&w.signs)
            .map(|(i, &e)| format!("e_{i} = {}", if e > 0 { "+1" } else { "-1" }))
            .collect();
        s.push_str(&format!("no member satisfies   {}\n", pairs.join(", ")));
    }
    for m in family.members.iter().take(12) {
        let seq: String = m.values().iter().map(|&v| if v > 0 { '+' } else { '-' }).collect();
        s.push_str(&format!("  {seq}  {}\n", m.source()));
    }
    if family.members.len() > 12 {
        s.push_str(&format!("  ... {} more\n", family.members.len() - 12));
    }
    Ok(s)
}

/// JS numbers arrive as `f64`; accept only exact non-negative integers.
pub fn integer_arg(name: &str, x: f64) -> Result<u64, String> {
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= 9_007_199_254_740_992.0 {
        Ok(x as u64)
    } else {
        Err(format!("{name} must be a non-negative integer, got {x}"))
    }
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = curveOverK)]
pub fn curve_over_k_js(p: f64, k_min: f64, k_max: f64) -> Result<Vec<f64>, JsError> {
    js((|| curve_over_k(integer_arg("p", p)?, integer_arg("k_min", k_min)?, integer_arg("k_max", k_max)?))())
}

#[wasm_bindgen(js_name = curveOverP)]
pub fn curve_over_p_js(k: f64, p_min: f64, p_max: f64) -> Result<Vec<f64>, JsError> {
    js((|| curve_over_p(integer_arg("k", k)?, integer_arg("p_min", p_min)?, integer_arg("p_max", p_max)?))())
}

#[wasm_bindgen(js_name = lambertW)]
pub fn lambert_w_js(re: f64, im: f64) -> Result<Vec<f64>, JsError> {
    js(lambert_w(re, im).map(|w| w.to_vec()))
}

#[wasm_bindgen(js_name = oracleReport)]
pub fn oracle_report_js(p: f64, k: f64) -> Result<String, JsError> {
    js((|| oracle_report(integer_arg("p", p)?, integer_arg("k", k)? as usize))())
}
