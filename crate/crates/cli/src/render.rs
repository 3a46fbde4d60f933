use serde_json::Value;

/// Indented `key: value` rendering of a JSON report.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            write_entry(&mut out, k, x, 0);
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_entry(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                write_entry(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}  - {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}  -\n"));
                        if let Value::Object(m) = x {
                            for (k, y) in m {
                                write_entry(out, k, y, depth + 2);
                            }
                        } else if let Value::Array(inner) = x {
                            for (i, y) in inner.iter().enumerate() {
                                write_entry(out, &i.to_string(), y, depth + 2);
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_rendering() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": ["x", "y"]}, "e": null});
        assert_eq!(text(&v), "a: 1\nb:\n  c: [1, 2]\n  d:\n    - x\n    - y\ne: none\n");
    }
}
