//! Browser bindings: run a check over a few primes, evaluate P_[p/3] at a
//! quadratic point, and represent a prime by a binary form.
//!
//! Every export returns JSON text; failures come back as `{"error": …}`.

use congruence_core::modular::{rational_residue, sqrt_in_ext, Elem};
use congruence_core::poly::legendre_third;
use congruence_core::primes::primes_in;
use congruence_core::quadform::{represent, Scale};
use congruence_core::verifier::{find_check, list_checks, run_check, DEFAULT_SEED};
use congruence_core::PrimeCtx;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Browsers get a small range; the CLI handles real sweeps.
pub const MAX_DEMO_PRIME: u32 = 5000;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn in_demo_range(p: u32) -> Result<(), String> {
    if p > MAX_DEMO_PRIME {
        return Err(format!("the demo stops at p = {MAX_DEMO_PRIME}"));
    }
    Ok(())
}

/// The check catalog as a JSON array.
#[wasm_bindgen]
pub fn catalog() -> String {
    serde_json::to_string(&list_checks()).expect("catalog serializes")
}

/// Rows of one check over the primes in lo..=hi, sequentially.
#[wasm_bindgen]
pub fn check_range(id: &str, lo: u32, hi: u32) -> String {
    let go = || -> Result<Value, String> {
        find_check(id).map_err(|e| e.to_string())?;
        in_demo_range(hi)?;
        let rows: Vec<_> = primes_in(lo.max(5) as u64..=hi as u64)
            .into_iter()
            .map(|p| run_check(id, p, DEFAULT_SEED).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        serde_json::to_value(rows).map_err(|e| e.to_string())
    };
    go().map_or_else(error, |v| v.to_string())
}

/// P_[p/3](t) with t = (num/den)·√root (root = 1 for rational t), at both roots.
#[wasm_bindgen]
pub fn legendre_at(p: u32, num: i32, den: i32, root: i32) -> String {
    let go = || -> Result<Value, String> {
        in_demo_range(p)?;
        let ctx = PrimeCtx::new(p as u64).map_err(|e| e.to_string())?;
        let q = rational_residue(num as i64, den as i64, ctx.field()).map_err(|e| e.to_string())?;
        let w = sqrt_in_ext(ctx.residue(root as i64)).map_err(|e| e.to_string())?;
        let values: Vec<Value> = [w, -w]
            .iter()
            .map(|&w| {
                let t = w.scale(q.value());
                json!({ "root": w.to_string(), "t": t.to_string(), "value": legendre_third(&ctx, t).to_string() })
            })
            .collect();
        Ok(json!({ "p": p, "degree": p / 3, "values": values }))
    };
    go().map_or_else(error, |v| v.to_string())
}

/// x, y ≥ 0 with a·x² + b·y² = p (scale "p") or 4p (scale "4p").
#[wasm_bindgen]
pub fn represent_prime(a: u32, b: u32, scale: &str, p: u32) -> String {
    let go = || -> Result<Value, String> {
        in_demo_range(p)?;
        if a == 0 || b == 0 {
            return Err("form coefficients must be positive".into());
        }
        let scale: Scale = scale.parse()?;
        Ok(match represent(p as u64, a as u64, b as u64, scale) {
            Some(r) => json!({ "x": r.x, "y": r.y, "text": r.to_string() }),
            None => json!({ "x": null, "y": null, "text": "none" }),
        })
    };
    go().map_or_else(error, |v| v.to_string())
}
