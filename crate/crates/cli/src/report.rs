//! Canonical reports: sorted keys, integers and rationals as strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use tsring_core::exactarith::ScalarRing;
use tsring_core::{BasisElement, ModelParams, RingElement};

pub const SCHEMA: &str = "tsring/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Inconclusive,
    Violation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inconclusive => "inconclusive",
            Status::Violation => "violation",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Inconclusive => 3,
        }
    }

    /// Violation dominates inconclusive, which dominates ok.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: ModelParams,
    pub status: Status,
    pub payload: Value,
    /// Deterministic work counters, reported in place of wall-clock timing.
    pub counters: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(command: &str, params: ModelParams) -> Self {
        Self {
            command: command.to_string(),
            params,
            status: Status::Ok,
            payload: Value::Object(Map::new()),
            counters: BTreeMap::new(),
        }
    }

    pub fn count(&mut self, key: &str, n: usize) {
        *self.counters.entry(key.to_string()).or_default() += n as u64;
    }

    pub fn to_json(&self) -> Value {
        let counters: Map<String, Value> = self.counters.iter().map(|(k, v)| (k.clone(), int(*v))).collect();
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "params": params_json(self.params),
            "status": self.status.as_str(),
            "payload": self.payload,
            "timing": { "counters": counters },
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    /// Flattened `path,value` rows of the JSON form.
    pub fn render_csv(&self) -> Result<String, csv::Error> {
        let mut rows = Vec::new();
        flatten("", &self.to_json(), &mut rows);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(["path", "value"])?;
        for (k, v) in rows {
            w.write_record([k, v])?;
        }
        Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn int(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn params_json(p: ModelParams) -> Value {
    json!({ "p": int(p.p()), "n": int(p.n()), "e": int(p.e()) })
}

pub fn basis_json(b: &BasisElement) -> Value {
    match *b {
        BasisElement::ProjPair { lambda, mu } => json!({ "type": "P", "lambda": int(lambda), "mu": int(mu) }),
        BasisElement::NonProj { level, alpha, lambda } => {
            json!({ "type": "M", "i": int(level), "alpha": int(alpha), "lambda": int(lambda) })
        }
    }
}

pub fn terms_json(terms: &[(BasisElement, String)]) -> Value {
    Value::Array(terms.iter().map(|(b, c)| json!({ "basis": basis_json(b), "coeff": c })).collect())
}

pub fn element_json<S: ScalarRing>(x: &RingElement<S>) -> Value {
    terms_json(&x.render_terms())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_and_integers_quoted() {
        let mut r = Report::new("basis", ModelParams::new(3, 1, 1).unwrap());
        r.count("z", 2);
        r.count("a", 1);
        let s = r.render_json();
        assert!(s.find("\"command\"").unwrap() < s.find("\"params\"").unwrap());
        assert!(s.contains("\"p\": \"3\""));
        assert!(s.find("\"a\": \"1\"").unwrap() < s.find("\"z\": \"2\"").unwrap());
        assert!(r.render_csv().unwrap().starts_with("path,value\n"));
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::Ok.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Violation.combine(Status::Inconclusive), Status::Violation);
    }
}
