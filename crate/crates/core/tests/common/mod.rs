#![allow(dead_code)]

use jsonschema::JSONSchema;
use serde_json::Value;

const SCHEMAS: &[(&str, &str)] = &[
    ("point", include_str!("../../schemas/point.schema.json")),
    ("facet", include_str!("../../schemas/facet.schema.json")),
    ("polytope", include_str!("../../schemas/polytope.schema.json")),
    ("optimization", include_str!("../../schemas/optimization.schema.json")),
    ("graph", include_str!("../../schemas/graph.schema.json")),
    ("error", include_str!("../../schemas/error.schema.json")),
    ("presets", include_str!("../../schemas/presets.schema.json")),
    ("enumeration", include_str!("../../schemas/enumeration.schema.json")),
];

pub fn schema(name: &str) -> JSONSchema {
    let mut opts = JSONSchema::options();
    for (_, text) in SCHEMAS {
        let doc: Value = serde_json::from_str(text).unwrap();
        let id = doc["$id"].as_str().unwrap().to_string();
        opts.with_document(id, doc);
    }
    let (_, text) = SCHEMAS.iter().find(|(n, _)| *n == name).expect("known schema");
    let doc: Value = serde_json::from_str(text).unwrap();
    opts.compile(&doc).expect("schema compiles")
}

pub fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} schema violations: {msgs:#?}\n{v:#}");
}
