//! Small JSON-schema-subset validator (type/required/properties/items/enum)
//! for the committed report schema.

use serde_json::Value;

pub const REPORT_SCHEMA: &str = include_str!("../assets/report.schema.json");

pub fn validate_report(doc: &Value) -> Result<(), String> {
    let schema: Value =
        serde_json::from_str(REPORT_SCHEMA).map_err(|e| format!("bad schema: {e}"))?;
    validate(doc, &schema, "$")
}

fn validate(doc: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(ty) = schema.get("type").and_then(|t| t.as_str()) {
        let ok = match ty {
            "object" => doc.is_object(),
            "array" => doc.is_array(),
            "string" => doc.is_string(),
            "boolean" => doc.is_boolean(),
            "number" => doc.is_number(),
            other => return Err(format!("{path}: unsupported schema type '{other}'")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}, got {doc}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(doc) {
            return Err(format!("{path}: value {doc} not in enum"));
        }
    }
    if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
        for key in required {
            let key = key.as_str().unwrap_or_default();
            if doc.get(key).is_none() {
                return Err(format!("{path}: missing required key '{key}'"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
        for (key, sub) in props {
            if let Some(v) = doc.get(key) {
                validate(v, sub, &format!("{path}.{key}"))?;
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = doc.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(v, items, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}
