//! JSON formats for token systems, graphs and relation families.
//!
//! Output goes through `serde_json::Value`, whose maps keep keys sorted, so
//! every document is byte-for-byte reproducible.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{Kind, RelationFamily};
use crate::graph::Graph;
use crate::token::{TokenSpec, TokenSystem};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn parse(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text)? {
        Value::Object(m) => Ok(m),
        _ => Err(Error::input("$", "expected a JSON object")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| Error::input(name, "missing field"))
}

fn string(v: &Value, at: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::input(at, "expected a string"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::input(at, "expected an array"))
}

fn strings(v: &Value, at: &str) -> Result<Vec<String>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{at}[{i}]")))
        .collect()
}

fn pair(v: &Value, at: &str) -> Result<(String, String)> {
    match array(v, at)?.as_slice() {
        [a, b] => Ok((string(a, &format!("{at}[0]"))?, string(b, &format!("{at}[1]"))?)),
        _ => Err(Error::input(at, "expected a pair")),
    }
}

/// What a JSON document describes, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Graph,
    TokenSystem,
    Family,
}

pub fn document_kind(text: &str) -> Result<DocumentKind> {
    let obj = parse(text)?;
    if obj.contains_key("vertices") {
        Ok(DocumentKind::Graph)
    } else if obj.contains_key("states") {
        Ok(DocumentKind::TokenSystem)
    } else if obj.contains_key("ground") {
        Ok(DocumentKind::Family)
    } else {
        Err(Error::input("$", "expected `vertices`, `states` or `ground`"))
    }
}

/// `{"states": [...], "tokens": [{"id": ..., "moves": [[S, V], ...]}], "reverses": {...}}`
pub fn system_from_json(text: &str) -> Result<TokenSystem> {
    let obj = parse(text)?;
    let states = strings(field(&obj, "states")?, "states")?;
    let mut specs = Vec::new();
    for (i, t) in array(field(&obj, "tokens")?, "tokens")?.iter().enumerate() {
        let at = format!("tokens[{i}]");
        let t = t.as_object().ok_or_else(|| Error::input(&at, "expected an object"))?;
        let id = string(
            t.get("id")
                .ok_or_else(|| Error::input(format!("{at}.id"), "missing field"))?,
            &format!("{at}.id"),
        )?;
        let moves_at = format!("{at}.moves");
        let moves = array(
            t.get("moves").ok_or_else(|| Error::input(&moves_at, "missing field"))?,
            &moves_at,
        )?
        .iter()
        .enumerate()
        .map(|(j, m)| pair(m, &format!("{moves_at}[{j}]")))
        .collect::<Result<Vec<_>>>()?;
        specs.push(TokenSpec { id, moves });
    }
    match obj.get("reverses") {
        None | Some(Value::Null) => TokenSystem::new(states, specs),
        Some(Value::Object(r)) => {
            let reverses = r
                .iter()
                .map(|(k, v)| Ok((k.clone(), string(v, &format!("reverses.{k}"))?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            TokenSystem::with_reverses(states, specs, &reverses)
        }
        Some(_) => Err(Error::input("reverses", "expected an object")),
    }
}

pub fn system_to_value(sys: &TokenSystem) -> Value {
    let tokens: Vec<Value> = sys
        .to_specs()
        .into_iter()
        .map(|s| json!({ "id": s.id, "moves": s.moves.into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>() }))
        .collect();
    let mut obj = Map::new();
    obj.insert("states".into(), json!(sys.state_names()));
    obj.insert("tokens".into(), Value::Array(tokens));
    let reverses = sys.reverse_names();
    if !reverses.is_empty() {
        obj.insert("reverses".into(), json!(reverses));
    }
    Value::Object(obj)
}

pub fn system_to_json(sys: &TokenSystem) -> Result<String> {
    to_json(&system_to_value(sys))
}

/// `{"vertices": [...], "edges": [[a, b], ...]}`
pub fn graph_from_json(text: &str) -> Result<Graph> {
    let obj = parse(text)?;
    let vertices = strings(field(&obj, "vertices")?, "vertices")?;
    let edges = array(field(&obj, "edges")?, "edges")?
        .iter()
        .enumerate()
        .map(|(i, e)| pair(e, &format!("edges[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Graph::new(vertices, edges)
}

pub fn graph_to_value(g: &Graph) -> Value {
    let edges: Vec<[&str; 2]> = g.edges().iter().map(|&(a, b)| [g.name(a), g.name(b)]).collect();
    json!({ "vertices": g.names(), "edges": edges })
}

pub fn graph_to_json(g: &Graph) -> Result<String> {
    to_json(&graph_to_value(g))
}

/// `{"ground": ["a", "b"], "members": [["ab"], ...]}`; read as a custom family.
pub fn family_from_json(text: &str) -> Result<RelationFamily> {
    let obj = parse(text)?;
    let ground = strings(field(&obj, "ground")?, "ground")?;
    let members = array(field(&obj, "members")?, "members")?
        .iter()
        .enumerate()
        .map(|(i, m)| strings(m, &format!("members[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    RelationFamily::from_keys(Kind::Custom, ground, &members)
}

pub fn family_to_value(f: &RelationFamily) -> Value {
    let members: Vec<Vec<String>> = f.members.iter().map(|m| m.keys(&f.ground)).collect();
    json!({ "ground": f.ground, "kind": f.kind.to_string(), "members": members })
}
