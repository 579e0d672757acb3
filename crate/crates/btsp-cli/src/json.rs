//! Deterministic JSON emission: object keys sorted, integers bare,
//! reals with exactly nine decimal places. Reports and instance files
//! produced by the CLI are byte-stable for a fixed input and flag set.

use btsp::ScalarKind;

#[derive(Debug, Clone, PartialEq)]
pub enum J {
    Bool(bool),
    Int(i64),
    Real(f64),
    Str(String),
    Arr(Vec<J>),
    Obj(Vec<(&'static str, J)>),
}

/// Numeric value formatted by the matrix's scalar kind: exact-integer
/// values print bare, floating values with nine decimals.
pub fn num(v: f64, kind: ScalarKind) -> J {
    match kind {
        ScalarKind::ExactInteger => {
            debug_assert_eq!(v.fract(), 0.0);
            J::Int(v as i64)
        }
        ScalarKind::Floating => J::Real(v),
    }
}

pub fn to_string(value: &J) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &J, out: &mut String) {
    match value {
        J::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        J::Int(i) => out.push_str(&i.to_string()),
        J::Real(v) => {
            // normalize negative zero so reports stay byte-stable
            let v = if *v == 0.0 { 0.0 } else { *v };
            out.push_str(&format!("{:.9}", v));
        }
        J::Str(s) => write_string(s, out),
        J::Arr(items) => {
            out.push('[');
            for (idx, item) in items.iter().enumerate() {
                if idx > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        J::Obj(pairs) => {
            let mut sorted: Vec<&(&str, J)> = pairs.iter().collect();
            sorted.sort_by_key(|(k, _)| *k);
            out.push('{');
            for (idx, (key, val)) in sorted.iter().enumerate() {
                if idx > 0 {
                    out.push(',');
                }
                write_string(key, out);
                out.push(':');
                write_value(val, out);
            }
            out.push('}');
        }
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}
