use std::io::Write;

use serde_json::Value;

use crate::args::Format;
use crate::Failure;

/// Flattens nested objects and arrays into dotted `key = value` pairs.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render(value: &Value, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Internal(e.to_string())),
        Format::Text => {
            let pairs = flatten(value);
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            Ok(pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect())
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let rows = std::iter::once(("key".to_string(), "value".to_string())).chain(flatten(value));
            for (k, v) in rows {
                writer.write_record([k, v]).map_err(|e| Failure::Internal(e.to_string()))?;
            }
            let bytes = writer.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

pub fn emit(value: &Value, format: Format) -> Result<(), Failure> {
    let text = render(value, format)?;
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"b": [1, {"c": "x"}], "a": null, "d": true});
        let flat = flatten(&v);
        assert_eq!(
            flat,
            vec![
                ("a".into(), "".into()),
                ("b.0".into(), "1".into()),
                ("b.1.c".into(), "x".into()),
                ("d".into(), "true".into())
            ]
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let out = render(&json!({"row": "1,2"}), Format::Csv).unwrap();
        assert_eq!(out, "key,value\nrow,\"1,2\"\n");
    }

    #[test]
    fn json_round_trip() {
        let v = json!({"z": 0.1, "a": "1/3", "m": [1.5, 2]});
        let text = render(&v, Format::Json).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&back, Format::Json).unwrap(), text);
    }
}
