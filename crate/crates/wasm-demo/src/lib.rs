//! WebAssembly bindings behind `www/index.html`.
//!
//! Every entry point takes and returns JSON text. The plain functions are
//! what the page calls through the `#[wasm_bindgen]` wrappers, and what the
//! native tests exercise.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lrc::textio::{parse_received, parse_symbols};
use lrc::{generate, AnyCode, CodeSpecFile, GenRequest};

#[derive(Serialize)]
struct Built {
    spec: CodeSpecFile,
    construction: &'static str,
    n: usize,
    k: usize,
    q: u32,
    designed_d: usize,
    locations: Vec<u32>,
    /// Codeword positions of each repair group, first route.
    groups: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct Repaired {
    position: usize,
    value: u32,
    from: Vec<usize>,
    round: usize,
}

#[derive(Serialize)]
struct RepairOutcome {
    repaired: Vec<Repaired>,
    /// Positions no recovering set could reach.
    stuck: Vec<usize>,
    codeword: Vec<Option<u32>>,
}

fn load(spec: &str) -> Result<AnyCode, String> {
    CodeSpecFile::from_json(spec)
        .and_then(|s| s.load())
        .map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn locations(code: &AnyCode) -> Vec<u32> {
    match code {
        AnyCode::Multi(c) => c.locations().iter().map(|a| a.value()).collect(),
        AnyCode::Product(_) => Vec::new(),
        _ => code.as_lrc().unwrap().locations().iter().map(|a| a.value()).collect(),
    }
}

/// Generate a code from a JSON parameter object such as
/// `{"n": 9, "k": 4, "r": 2, "q": 13}`.
pub fn build_code(request: &str) -> Result<String, String> {
    let req: GenRequest = serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    let code = generate(&req).map_err(|e| e.to_string())?;
    let groups = match code.local_codes().first() {
        Some(blocks) => blocks.iter().map(|(p, _)| p.clone()).collect(),
        None => Vec::new(),
    };
    Ok(to_json(&Built {
        spec: code.to_spec(),
        construction: code.name(),
        n: code.length(),
        k: code.dimension(),
        q: code.field().order(),
        designed_d: code.designed_distance(),
        locations: locations(&code),
        groups,
    }))
}

/// Encode whitespace-separated message symbols; returns a JSON array.
pub fn encode_message(spec: &str, message: &str) -> Result<String, String> {
    let code = load(spec)?;
    let msg = parse_symbols(code.field(), message).map_err(|e| e.to_string())?;
    let word = code.encode(&msg).map_err(|e| e.to_string())?;
    Ok(to_json(&word.iter().map(|a| a.value()).collect::<Vec<_>>()))
}

/// Repair every `?` reachable through local repair, sweeping until no
/// further symbol can be recovered. `via` picks the route to try first.
pub fn repair_erasures(spec: &str, received: &str, via: usize) -> Result<String, String> {
    let code = load(spec)?;
    let mut word = parse_received(code.field(), received).map_err(|e| e.to_string())?;
    if word.len() != code.length() {
        return Err(format!("expected {} symbols, got {}", code.length(), word.len()));
    }
    let routes: Vec<usize> = std::iter::once(via)
        .chain((1..=code.routes()).filter(|&r| r != via))
        .collect();
    let mut repaired = Vec::new();
    let mut round = 0;
    loop {
        round += 1;
        let mut progress = Vec::new();
        for position in (0..word.len()).filter(|&p| word[p].is_none()) {
            let sets = code.recovering_sets(position).map_err(|e| e.to_string())?;
            for &route in &routes {
                if let Ok(value) = code.repair(&word, position, route) {
                    let group = &sets[route - 1];
                    let from = group.iter().copied().filter(|&p| word[p].is_some()).collect();
                    progress.push((position, value, from));
                    break;
                }
            }
        }
        if progress.is_empty() {
            break;
        }
        // symbols found in this sweep become available to the next one
        for (position, value, from) in progress {
            word[position] = Some(value);
            repaired.push(Repaired {
                position,
                value: value.value(),
                from,
                round,
            });
        }
    }
    let stuck = (0..word.len()).filter(|&p| word[p].is_none()).collect();
    Ok(to_json(&RepairOutcome {
        repaired,
        stuck,
        codeword: word.iter().map(|a| a.map(|a| a.value())).collect(),
    }))
}

#[wasm_bindgen]
pub fn build(request: &str) -> Result<String, JsValue> {
    build_code(request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn encode(spec: &str, message: &str) -> Result<String, JsValue> {
    encode_message(spec, message).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn repair(spec: &str, received: &str, via: usize) -> Result<String, JsValue> {
    repair_erasures(spec, received, via).map_err(|e| JsValue::from_str(&e))
}
