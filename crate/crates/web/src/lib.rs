//! WebAssembly bindings for the static demo page in `www/`.
//!
//! The page offers three operations: droplet and gap constants for a
//! potential, the edge density profile (exact against predicted) and the
//! n-series of the r1 edge density that shows the theta oscillation.
//! Every function has a plain Rust counterpart in [`api`] used by the tests.

use wasm_bindgen::prelude::*;

pub mod api;

pub use api::Summary;

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// Droplet geometry of q(r) = Σ c_k r^{2k}.
#[wasm_bindgen]
pub fn droplet_summary(coeffs: &[f64]) -> Result<Summary, JsError> {
    api::droplet_summary(coeffs).map_err(js)
}

/// Flattened `(t, exact, predicted)` triples at `edge` = "r1" | "r2" | "outer".
#[wasm_bindgen]
pub fn edge_profile(coeffs: &[f64], n: usize, edge: &str, t_lo: f64, t_hi: f64, points: usize) -> Result<Vec<f64>, JsError> {
    api::edge_profile(coeffs, n, edge, t_lo, t_hi, points).map_err(js)
}

/// Flattened `(n, raw, residual)` triples for the r1 edge over `n_lo..=n_hi`.
#[wasm_bindgen]
pub fn edge_series(coeffs: &[f64], n_lo: usize, n_hi: usize, step: usize) -> Result<Vec<f64>, JsError> {
    api::edge_series(coeffs, n_lo, n_hi, step).map_err(js)
}
