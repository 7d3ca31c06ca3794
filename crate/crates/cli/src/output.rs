//! Machine-readable output: formal sums as JSON, in term order.

use rlw_core::scalars::{parse_scalar, Semiring};
use rlw_core::syntax::{
    parse_resource_term, render_res_term, render_term_sum, FinSum, ResTerm,
};
use serde_json::{json, Value};

/// `{"semiring": ..., "entries": [{"term": ..., "coeff": ...}]}` with
/// entries in term order.
pub fn term_sum_to_json(sum: &FinSum<ResTerm>) -> Value {
    let entries: Vec<Value> = sum
        .iter()
        .map(|(t, c)| json!({ "term": render_res_term(t), "coeff": c.to_string() }))
        .collect();
    json!({ "semiring": sum.ring().to_string(), "entries": entries })
}

pub fn term_sum_to_json_string(sum: &FinSum<ResTerm>) -> String {
    serde_json::to_string(&term_sum_to_json(sum)).expect("serializable")
}

fn ring_of(name: &str) -> Option<Semiring> {
    Some(match name {
        "nat" => Semiring::Nat,
        "int" => Semiring::Int,
        "ratnn" => Semiring::RatNonNeg,
        "rat" => Semiring::Rat,
        "bool" => Semiring::Bool,
        _ => return None,
    })
}

/// Re-parse an emitted vector; used by the round-trip checks.
pub fn term_sum_from_json(v: &Value) -> Option<FinSum<ResTerm>> {
    let ring = ring_of(v.get("semiring")?.as_str()?)?;
    let mut sum = FinSum::zero(ring);
    for entry in v.get("entries")?.as_array()? {
        let term = parse_resource_term(entry.get("term")?.as_str()?, ring).ok()?;
        let coeff = parse_scalar(ring, entry.get("coeff")?.as_str()?).ok()?;
        sum.add_entry(term, coeff);
    }
    Some(sum)
}

pub fn render_sum(sum: &FinSum<ResTerm>, json: bool) -> String {
    if json {
        term_sum_to_json_string(sum)
    } else {
        render_term_sum(sum)
    }
}
