//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function takes and returns plain strings. The result is a JSON
//! object with either an `"ok"` or an `"error"` field, so the page never
//! has to catch exceptions.

use dq_core::atlas::{self, ingest_polygon, PolygonGluing};
use dq_core::corpus;
use dq_core::moyal::StarProduct;
use dq_core::poisson::SymplecticForm;
use dq_core::text::parse_expr;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_ORDER: usize = 12;
const MAX_PAIRS: usize = 50;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": e }),
    }
    .to_string()
}

fn gluing(surface: &str) -> Result<PolygonGluing, String> {
    let trimmed = surface.trim();
    if trimmed.starts_with('{') {
        PolygonGluing::from_json(trimmed).map_err(|e| e.to_string())
    } else {
        PolygonGluing::builtin(trimmed).ok_or_else(|| format!("unknown surface {trimmed:?}"))
    }
}

/// `f ⋆ g` on `C^{2n}` with the block form, truncated at `h^order`.
#[wasm_bindgen]
pub fn star_product(copies: usize, order: usize, f: &str, g: &str) -> String {
    respond((|| {
        if copies == 0 || order > MAX_ORDER {
            return Err(format!("need 1 <= copies and order <= {MAX_ORDER}"));
        }
        let form = SymplecticForm::omega0_product(copies);
        let m = form.dim();
        let fs = parse_expr(f, m, order)
            .map_err(|e| e.to_string())?
            .into_series(order);
        let gs = parse_expr(g, m, order)
            .map_err(|e| e.to_string())?
            .into_series(order);
        let sp = StarProduct::from_form(&form, order).map_err(|e| e.to_string())?;
        let out = sp.star_series(&fs, &gs).map_err(|e| e.to_string())?;
        Ok(json!({ "product": out.to_string(), "coefficients": out.coeffs() }))
    })())
}

/// Genus, zero orders and atlas size of a built-in surface name or a
/// polygon JSON document.
#[wasm_bindgen]
pub fn surface_summary(surface: &str) -> String {
    respond((|| {
        let s = ingest_polygon(&gluing(surface)?).map_err(|e| e.to_string())?;
        Ok(json!({
            "summary": s.to_string(),
            "genus": s.genus,
            "zero_orders": s.zero_orders(),
            "charts": s.charts.len(),
            "overlaps": s.overlaps.len(),
            "triple_overlaps": s.triples.len(),
        }))
    })())
}

/// Seeded overlap-agreement, cocycle and Liouville checks on a surface.
#[wasm_bindgen]
pub fn patch_check(surface: &str, seed: u64, pairs: usize, order: usize) -> String {
    respond((|| {
        if pairs > MAX_PAIRS || order > MAX_ORDER {
            return Err(format!(
                "need pairs <= {MAX_PAIRS} and order <= {MAX_ORDER}"
            ));
        }
        let s = ingest_polygon(&gluing(surface)?).map_err(|e| e.to_string())?;
        let corpus = corpus::poly_pairs(seed, 2, pairs, 3);
        let report = atlas::patch_check(&s, &corpus, order).map_err(|e| e.to_string())?;
        Ok(json!({ "passed": report.passed(), "report": report.to_string() }))
    })())
}
