//! Browser bindings for the quadric family `z1·z2 + a(z1 + z2) + 1`.
//!
//! Each export returns a JSON string. The plain functions underneath return
//! `Result<String, String>` so they can be tested natively.

use fqlab::cone::Direction;
use fqlab::crystal::{find_real_roots, real_rootedness_audit, restrict_to_line};
use fqlab::laurent::samples::quadric;
use fqlab::surface::{spectrum_table, trace_curve};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_WINDOW: f64 = 400.0;
const MAX_K_RADIUS: i64 = 8;

#[derive(Serialize)]
struct Curve {
    /// `branches[b]` is a list of `[x1, x2]` points in the unit square.
    branches: Vec<Vec<[f64; 2]>>,
    wraps: Vec<usize>,
}

#[derive(Serialize)]
struct Roots {
    roots: Vec<f64>,
    multiplicities: Vec<u32>,
    min_gap: Option<f64>,
    /// Zeros counted by the argument principle in the same window.
    contour_count: Option<i64>,
    density: f64,
}

#[derive(Serialize)]
struct Coefficient {
    k: [i64; 2],
    re: f64,
    im: f64,
    abs: f64,
    freq: f64,
}

#[derive(Serialize)]
struct Spectrum {
    mass: f64,
    coefficients: Vec<Coefficient>,
}

fn check_parameter(a: f64) -> Result<(), String> {
    if a.is_finite() && a.abs() < 1.0 {
        Ok(())
    } else {
        Err("the parameter a must satisfy |a| < 1".into())
    }
}

fn direction(l1: f64, l2: f64) -> Result<Direction, String> {
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err("both direction entries must be positive".into());
    }
    Direction::new(vec![l1, l2]).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn curve_json(a: f64, resolution: usize) -> Result<String, String> {
    check_parameter(a)?;
    if !(64..=4096).contains(&resolution) || !resolution.is_power_of_two() {
        return Err("resolution must be a power of two between 64 and 4096".into());
    }
    let c = trace_curve(&quadric(a), resolution).map_err(|e| e.to_string())?;
    Ok(to_json(&Curve {
        branches: c
            .branches
            .iter()
            .map(|b| b.iter().map(|p| p.coords()).collect())
            .collect(),
        wraps: c.wraps(),
    }))
}

pub fn roots_json(a: f64, l1: f64, l2: f64, t0: f64, t1: f64) -> Result<String, String> {
    check_parameter(a)?;
    if !(t0 < t1 && t1 - t0 <= MAX_WINDOW) {
        return Err(format!("window must satisfy t0 < t1 ≤ t0 + {MAX_WINDOW}"));
    }
    let f = restrict_to_line(&quadric(a), &direction(l1, l2)?).map_err(|e| e.to_string())?;
    let r = find_real_roots(&f, (t0, t1), 1e-10).map_err(|e| e.to_string())?;
    // the audit can refuse a window whose edge sits on a zero; report that as unknown
    let contour_count = real_rootedness_audit(&f, (t0, t1), 1.0)
        .ok()
        .map(|a| a.contour_count);
    Ok(to_json(&Roots {
        density: r.count() as f64 / (t1 - t0),
        roots: r.roots,
        multiplicities: r.multiplicities,
        min_gap: r.min_gap,
        contour_count,
    }))
}

pub fn spectrum_json(a: f64, l1: f64, l2: f64, k_radius: i64) -> Result<String, String> {
    check_parameter(a)?;
    if !(0..=MAX_K_RADIUS).contains(&k_radius) {
        return Err(format!("k radius must be between 0 and {MAX_K_RADIUS}"));
    }
    let t = spectrum_table(&quadric(a), &direction(l1, l2)?, k_radius, 256)
        .map_err(|e| e.to_string())?;
    Ok(to_json(&Spectrum {
        mass: t.mass(),
        coefficients: t
            .entries
            .iter()
            .map(|(&(k1, k2), e)| Coefficient {
                k: [k1, k2],
                re: e.coefficient.re,
                im: e.coefficient.im,
                abs: e.coefficient.norm(),
                freq: e.frequency,
            })
            .collect(),
    }))
}

/// Torus curve of the quadric with parameter `a`.
#[wasm_bindgen]
pub fn trace(a: f64, resolution: usize) -> Result<String, JsValue> {
    curve_json(a, resolution).map_err(|e| JsValue::from_str(&e))
}

/// Real zeros on `[t0, t1]` along `ℓ = (l1, l2)`.
#[wasm_bindgen]
pub fn roots(a: f64, l1: f64, l2: f64, t0: f64, t1: f64) -> Result<String, JsValue> {
    roots_json(a, l1, l2, t0, t1).map_err(|e| JsValue::from_str(&e))
}

/// Fourier coefficients `m̂(k)` for `‖k‖∞ ≤ k_radius`.
#[wasm_bindgen]
pub fn spectrum(a: f64, l1: f64, l2: f64, k_radius: i32) -> Result<String, JsValue> {
    spectrum_json(a, l1, l2, k_radius as i64).map_err(|e| JsValue::from_str(&e))
}
