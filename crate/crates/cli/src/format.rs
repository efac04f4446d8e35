//! Deterministic number formatting for text and JSON output.

use serde_json::{Number, Value};

/// Significant digits kept for real numbers.
pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// A real with [`SIG_DIGITS`] significant digits, trailing zeros removed.
pub fn real(x: f64) -> String {
    let x = round_sig(x);
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&mag) {
        return format!("{:.*e}", SIG_DIGITS - 1, x);
    }
    let decimals = (SIG_DIGITS as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Integer-valued JSON from its decimal digits (any size).
pub fn big_int(digits: &str) -> Value {
    serde_json::from_str(digits).unwrap_or_else(|_| Value::String(digits.to_string()))
}

/// Rounds every real in `v` and pretty-prints with sorted keys.
pub fn canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(&round_reals(v)).expect("JSON values serialize")
}

fn round_reals(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.iter().map(round_reals).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round_reals(v))).collect()),
        other => other.clone(),
    }
}
