//! The run record printed by every command and the shared number formatting.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

/// One invocation: command, effective parameters, a digest of the input
/// bytes and the outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: Value,
    pub input_digest: String,
    pub outputs: Value,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: &str, parameters: Value, digest: &Fnv1a, outputs: Value) -> Self {
        Self {
            command: command.to_string(),
            parameters: round_json(parameters),
            input_digest: digest.hex(),
            outputs: round_json(outputs),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("record serializes");
        writeln!(out, "{text}")
    }
}

/// 64-bit FNV-1a over all input bytes, in the order they were read.
#[derive(Debug, Clone)]
pub struct Fnv1a(u64);

impl Default for Fnv1a {
    fn default() -> Self {
        Self(0xcbf2_9ce4_8422_2325)
    }
}

impl Fnv1a {
    pub fn update(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub fn hex(&self) -> String {
        format!("fnv1a64:{:016x}", self.0)
    }
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every floating-point number in a JSON tree to 12 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// C-style `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}
