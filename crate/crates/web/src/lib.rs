//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes the map as text and returns a JSON string, so the page
//! needs no glue beyond `JSON.parse`.

use detpoly::detcore::{Certificate, Decider, DetError, Options, PolyMap, Verdict};
use detpoly::expr::{parse, parse_list};
use detpoly::{FieldSpec, MonomialOrder, Polynomial, VarContext};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Smaller than the library default so a hopeless query fails fast in a tab.
const BROWSER_STEP_BUDGET: u64 = 200_000;

fn decider() -> Decider {
    Decider::new(Options { step_budget: BROWSER_STEP_BUDGET, ..Options::default() })
}

fn setup(vars: &str, map: &str, characteristic: u32) -> Result<PolyMap, String> {
    let field = FieldSpec::from_characteristic(characteristic as u64).map_err(|e| e.to_string())?;
    let names: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    let ctx = VarContext::new(names, MonomialOrder::Grevlex, field).map_err(|e| e.to_string())?;
    let comps = parse_list(map, &ctx).map_err(|e| e.to_string())?;
    PolyMap::new(comps).map_err(|e| e.to_string())
}

fn parse_g(f: &PolyMap, poly: &str) -> Result<Polynomial, String> {
    parse(poly, f.ctx()).map_err(|e| e.to_string())
}

fn finish(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(message) => json!({ "error": message }).to_string(),
    }
}

fn det(e: DetError) -> String {
    e.to_string()
}

/// Is `poly` determined by the map, with its certificate.
#[wasm_bindgen]
pub fn check_determined(vars: &str, map: &str, poly: &str, characteristic: u32) -> String {
    finish((|| {
        let f = setup(vars, map, characteristic)?;
        let g = parse_g(&f, poly)?;
        let d = decider();
        let r = d.is_determined(&f, &g).map_err(det)?;
        let verified = r.verify(&d, &f, &g).map_err(det)?;
        let detail = match &r.certificate {
            Certificate::InRing(p) => format!("g = p(f) with p = {p}"),
            Certificate::RadChi { p, nu } => format!("g^(χ^{nu}) = p(f) with p = {p}"),
            Certificate::RationalOnly(rep) => format!("g = r(f)/s(f) with r = {}, s = {}", rep.r, rep.s),
            Certificate::CounterexampleIdeal(j) => {
                let gens: Vec<String> = j.generators().iter().map(|p| p.to_string()).collect();
                format!("pairs f(s) = f(u) with g(s) ≠ g(u) exist: {}", gens.join(", "))
            }
            other => other.kind().to_string(),
        };
        Ok(json!({
            "determined": r.determined,
            "certificate": r.certificate.kind(),
            "detail": detail,
            "verified": verified,
        }))
    })())
}

/// A polynomial `p` with `p(f) = g`, or `g^(χ^ν)` in positive
/// characteristic, when one exists.
#[wasm_bindgen]
pub fn find_decomposition(vars: &str, map: &str, poly: &str, characteristic: u32) -> String {
    finish((|| {
        let f = setup(vars, map, characteristic)?;
        let g = parse_g(&f, poly)?;
        let d = decider();
        let found = if characteristic == 0 {
            d.subalgebra_membership(&f, &g).map_err(det)?.map(|p| (p, 0))
        } else {
            d.radchi_membership(&f, &g, None).map_err(det)?.map(|dec| (dec.p, dec.nu))
        };
        Ok(match found {
            Some((p, nu)) => json!({ "found": true, "p": p.to_string(), "nu": nu }),
            None => json!({ "found": false }),
        })
    })())
}

/// Three-valued almost-surjectivity verdict with its justification.
#[wasm_bindgen]
pub fn almost_surjective(vars: &str, map: &str, characteristic: u32) -> String {
    finish((|| {
        let f = setup(vars, map, characteristic)?;
        let d = decider();
        let v = d.almost_surjectivity(&f).map_err(det)?;
        let verified = v.verify(&d, &f).map_err(det)?;
        let detail = match &v {
            Verdict::Yes { dimension, .. } => format!("non-range locus has dimension at most {dimension}"),
            Verdict::No(w) => format!("p(f) divides q(f) but p does not divide q: p = {}, q = {}", w.p, w.q),
            Verdict::Unknown { .. } => "no decision within the search".to_string(),
        };
        Ok(json!({ "verdict": v.value().to_string(), "detail": detail, "verified": verified }))
    })())
}
