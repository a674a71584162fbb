use padic_hyper::{PadicNumber, PiElement, Rational};
use serde::Serialize;
use serde_json::{json, Value};

/// {valuation, digits, precision}; digits are base p, least significant first.
pub fn padic(x: &PadicNumber) -> Value {
    json!({
        "valuation": x.valuation(),
        "digits": x.digits(),
        "precision": x.abs_precision(),
    })
}

pub fn pi_element(x: &PiElement) -> Value {
    let mut v = padic(x.coeff());
    v["pi_exponent"] = json!(x.pi_exponent());
    v
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub values: Value,
    pub conditions: Value,
    pub agreements: Value,
    pub verdict: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            values: json!({}),
            conditions: Value::Null,
            agreements: Value::Null,
            verdict: "computed".into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != "fail"
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.verdict = if ok { "pass" } else { "fail" }.into();
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (name, v) in [("inputs", &self.inputs), ("values", &self.values), ("conditions", &self.conditions), ("agreements", &self.agreements)] {
            match v {
                Value::Null => {}
                Value::Object(m) => {
                    for (k, x) in m {
                        out.push_str(&format!("{name}.{k}: {x}\n"));
                    }
                }
                _ => out.push_str(&format!("{name}: {v}\n")),
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
