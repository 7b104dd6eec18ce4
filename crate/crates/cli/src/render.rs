use serde_json::Value;

use crate::Format;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize"),
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}

/// Objects become indented `key: value` lines; arrays of scalars or of
/// flat arrays stay on one line.
fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                if is_inline(v) {
                    out.push_str(&format!("{pad}{key}: {}\n", inline(v)));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    text(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) if !is_inline(value) => {
            for item in items {
                if is_inline(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    text(item, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(value))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| {
            !x.is_object()
                && (!x.is_array()
                    || x.as_array()
                        .unwrap()
                        .iter()
                        .all(|y| !y.is_object() && !y.is_array()))
        }),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
