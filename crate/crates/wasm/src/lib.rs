//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Every export takes and returns JSON strings; the `*_json` functions are
//! the plain Rust versions, usable and tested natively.

use wasm_bindgen::prelude::*;

use sring::duality::dual_sring;
use sring::report::analyze;
use sring::sring::{closure, parse_seed_sets, SRingJson};
use sring::SRing;

/// Largest group order the page accepts.
pub const MAX_N: u32 = 120;

fn parse(text: &str) -> Result<SRing, String> {
    let raw: SRingJson =
        serde_json::from_str(text).map_err(|e| format!("malformed S-ring JSON: {e}"))?;
    let a = SRing::try_from(raw).map_err(|e| e.to_string())?;
    check_order(a.n())?;
    Ok(a)
}

fn check_order(n: u32) -> Result<(), String> {
    if n == 0 || n > MAX_N {
        Err(format!("n must be between 1 and {MAX_N}"))
    } else {
        Ok(())
    }
}

/// Smallest S-ring over `Z_n` containing the seed sets `"a,b;c"`.
pub fn closure_json(n: u32, seeds: &str) -> Result<String, String> {
    check_order(n)?;
    let seeds = parse_seed_sets(n, seeds).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&closure(n, &seeds)).expect("serializable"))
}

/// The dual S-ring, as S-ring JSON.
pub fn dual_json(sring: &str) -> Result<String, String> {
    let a = parse(sring)?;
    let d = dual_sring(&a).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&d).expect("serializable"))
}

/// Structure summary and separability decision.
pub fn analyze_json(sring: &str) -> Result<String, String> {
    let a = parse(sring)?;
    let r = analyze(&a, false).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

#[wasm_bindgen(js_name = closure)]
pub fn closure_js(n: u32, seeds: &str) -> Result<String, JsError> {
    closure_json(n, seeds).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dual)]
pub fn dual_js(sring: &str) -> Result<String, JsError> {
    dual_json(sring).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(sring: &str) -> Result<String, JsError> {
    analyze_json(sring).map_err(|e| JsError::new(&e))
}
