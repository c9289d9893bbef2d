//! Reports validate against the shipped JSON schema. The validator below
//! covers the keywords the schema uses.

use mcflow::cli::{render_json, run, Command, CommandRequest};
use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    match schema.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let name = r.strip_prefix("#/$defs/").expect("local ref");
            resolve(root, &root["$defs"][name])
        }
        None => schema,
    }
}

fn type_ok(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn validate(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let s = resolve(root, schema);
    match s.get("type") {
        Some(Value::String(t)) if !type_ok(t, v) => errors.push(format!("{path}: expected {t}")),
        Some(Value::Array(ts)) if !ts.iter().any(|t| type_ok(t.as_str().unwrap(), v)) => {
            errors.push(format!("{path}: expected one of {ts:?}"))
        }
        _ => {}
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errors.push(format!("{path}: expected {c}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} not in {options:?}"));
        }
    }
    if let Some(min) = s.get("minimum").and_then(Value::as_f64) {
        if v.as_f64().is_some_and(|x| x < min) {
            errors.push(format!("{path}: below minimum {min}"));
        }
    }
    if let Value::Object(map) = v {
        let props = s.get("properties").and_then(Value::as_object);
        for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !map.contains_key(key.as_str().unwrap()) {
                errors.push(format!("{path}: missing {key}"));
            }
        }
        for (k, child) in map {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => validate(root, sub, child, &format!("{path}.{k}"), errors),
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{path}: unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    if let Value::Array(items) = v {
        if let Some(n) = s.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < n {
                errors.push(format!("{path}: fewer than {n} items"));
            }
        }
        if let Some(n) = s.get("maxItems").and_then(Value::as_u64) {
            if (items.len() as u64) > n {
                errors.push(format!("{path}: more than {n} items"));
            }
        }
        if let Some(item) = s.get("items") {
            for (i, child) in items.iter().enumerate() {
                validate(root, item, child, &format!("{path}[{i}]"), errors);
            }
        }
    }
}

fn errors_for(doc_json: &str) -> Vec<String> {
    let root: Value = serde_json::from_str(SCHEMA).unwrap();
    let doc: Value = serde_json::from_str(doc_json).unwrap();
    let mut errors = Vec::new();
    validate(&root, &root, &doc, "$", &mut errors);
    errors
}

#[test]
fn every_command_output_validates() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/");
    let cases = [
        (Command::Verify, "guillot".to_owned()),
        (Command::Verify, "dh_symmetric".to_owned()),
        (Command::Verify, "dh_classic".to_owned()),
        (Command::Verify, "heisenberg_example".to_owned()),
        (Command::Derive, "guillot".to_owned()),
        (Command::Derive, "dh_classic".to_owned()),
        (Command::Integrate, "guillot".to_owned()),
        (Command::Sample, "dh_symmetric".to_owned()),
        (Command::CheckFile, format!("{data}broken.sys")),
        (Command::CheckFile, format!("{data}bad_syntax.sys")),
        (Command::CheckFile, format!("{data}degenerate.sys")),
        (Command::Verify, "no_such_system".to_owned()),
    ];
    for (command, system) in cases {
        let doc = run(&CommandRequest::new(command, &system));
        let errors = errors_for(&render_json(&doc));
        assert!(errors.is_empty(), "{} {system}: {errors:#?}", command.name());
    }
}

#[test]
fn validator_rejects_bad_documents() {
    let doc = run(&CommandRequest::new(Command::Derive, "guillot"));
    let mut v: Value = serde_json::from_str(&render_json(&doc)).unwrap();
    v["exit_status"] = Value::from(7);
    v["surprise"] = Value::from(true);
    v.as_object_mut().unwrap().remove("checks");
    let errors = errors_for(&v.to_string());
    assert_eq!(errors.len(), 3, "{errors:#?}");
}
