//! Reports: exact results plus the data needed to reproduce them.
//!
//! Every number is written as a decimal string. The `diagnostics` block
//! (timings and cache counters) is the only part allowed to vary between
//! runs on the same input and flags, and `report_digest` covers everything
//! else.

use hdeg_core::context::StatsSnapshot;
use hdeg_core::Settings;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub fn num(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub instance_digest: String,
    pub results: Value,
    pub provenance: Value,
    pub exit_code: i32,
    pub elapsed_ms: u128,
    pub cache_enabled: bool,
    pub stats: StatsSnapshot,
}

pub fn provenance(settings: &Settings) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "seed": num(settings.seed),
        "degree_cap": num(settings.degree_cap),
        "fit_extra": num(settings.fit_extra),
        "table_cap": num(settings.table_cap),
        "window": num(settings.window),
        "trials": num(settings.trials),
    })
}

impl Report {
    /// The digest-covered part.
    pub fn stable(&self) -> Value {
        json!({
            "command": self.command,
            "instance_digest": self.instance_digest,
            "results": self.results,
            "provenance": self.provenance,
        })
    }

    pub fn report_digest(&self) -> String {
        let text = serde_json::to_string(&self.stable()).expect("serializable");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn to_json(&self) -> Value {
        let Value::Object(mut map) = self.stable() else { unreachable!() };
        map.insert("report_digest".into(), Value::String(self.report_digest()));
        map.insert(
            "diagnostics".into(),
            json!({
                "elapsed_ms": num(self.elapsed_ms),
                "cache": {
                    "enabled": self.cache_enabled,
                    "hits": num(self.stats.cache_hits),
                    "misses": num(self.stats.cache_misses),
                    "stores": num(self.stats.cache_stores),
                    "evictions": num(self.stats.cache_evictions),
                },
                "groebner_bases": num(self.stats.groebner),
            }),
        );
        Value::Object(map)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Indented `key: value` lines.
    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\ninstance: {}\n", self.command, self.instance_digest);
        text_value(&mut out, "results", &self.results, 0);
        text_value(&mut out, "provenance", &self.provenance, 0);
        out.push_str(&format!(
            "elapsed: {} ms, cache hits {} / misses {}\n",
            self.elapsed_ms, self.stats.cache_hits, self.stats.cache_misses
        ));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("none".into()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => text_map(out, m, depth + 1),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                text_value(out, &format!("- {i}"), x, depth + 1);
            }
        }
        _ => {}
    }
}

fn text_map(out: &mut String, m: &Map<String, Value>, depth: usize) {
    for (k, v) in m {
        text_value(out, k, v, depth);
    }
}
