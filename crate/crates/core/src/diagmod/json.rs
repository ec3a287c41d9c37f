//! The versioned JSON formats for modules (`semihomology-module/1`) and module
//! maps (`semihomology-map/1`), plus a plain-text dump.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};

use super::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::simplexcat::{GeneratorId, Kind};

pub const MODULE_FORMAT: &str = "semihomology-module/1";
pub const MAP_FORMAT: &str = "semihomology-map/1";

pub fn matrix_to_value(m: &RatMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn matrix_from_value(v: &Value, rows: usize, cols: usize, at: &str) -> Result<RatMatrix> {
    let bad = |why: String| Error::Parse(format!("{at}: {why}"));
    let rs = v.as_array().ok_or_else(|| bad("expected an array of rows".into()))?;
    if rs.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in rs.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| bad(format!("row {i} is not an array")))?;
        if r.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        for (j, x) in r.iter().enumerate() {
            let q: Rational = match x {
                Value::String(s) => s.parse(),
                Value::Number(n) => n.to_string().parse(),
                _ => Err(Error::Parse("not a rational".into())),
            }
            .map_err(|_| bad(format!("entry [{i}][{j}] is not a rational")))?;
            data.push(q);
        }
    }
    RatMatrix::from_vec(rows, cols, data)
}

pub fn module_to_value(x: &DiagramModule) -> Value {
    let mut dims = Map::new();
    for n in x.degrees() {
        dims.insert(n.to_string(), Value::from(x.dim(n)));
    }
    let mut actions = Map::new();
    for (g, a) in x.actions() {
        actions.insert(g.token(), matrix_to_value(a));
    }
    let mut out = Map::new();
    out.insert("format".into(), Value::from(MODULE_FORMAT));
    out.insert("kind".into(), Value::from(x.kind().name()));
    out.insert("truncation".into(), Value::from(x.truncation()));
    out.insert("dims".into(), Value::Object(dims));
    out.insert("actions".into(), Value::Object(actions));
    Value::Object(out)
}

pub fn module_to_json(x: &DiagramModule) -> String {
    let mut s = serde_json::to_string_pretty(&module_to_value(x)).expect("values serialize");
    s.push('\n');
    s
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("{at}: missing field {key:?}")))
}

/// Reads a module; the result still has to pass [`DiagramModule::validated`].
pub fn module_from_value(v: &Value) -> Result<DiagramModule> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("module: expected an object".into()))?;
    if let Some(f) = obj.get("format") {
        if f.as_str() != Some(MODULE_FORMAT) {
            return Err(Error::Parse(format!("format: expected {MODULE_FORMAT:?}, found {f}")));
        }
    }
    let kind: Kind = field(obj, "kind", "module")?
        .as_str()
        .ok_or_else(|| Error::Parse("kind: expected a string".into()))?
        .parse()?;
    let truncation = field(obj, "truncation", "module")?
        .as_i64()
        .ok_or_else(|| Error::Parse("truncation: expected an integer".into()))? as i32;
    if truncation < kind.min_degree() {
        return Err(Error::Parse(format!("truncation: {truncation} is below {}", kind.min_degree())));
    }
    let dims_obj = field(obj, "dims", "module")?
        .as_object()
        .ok_or_else(|| Error::Parse("dims: expected an object".into()))?;
    let mut dims = Vec::new();
    for n in kind.min_degree()..=truncation {
        let d = match dims_obj.get(&n.to_string()) {
            Some(d) => d
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("dims.{n}: expected a nonnegative integer")))?
                as usize,
            None => 0,
        };
        dims.push(d);
    }
    if let Some(k) = dims_obj
        .keys()
        .find(|k| k.parse::<i32>().map_or(true, |n| n < kind.min_degree() || n > truncation))
    {
        return Err(Error::Parse(format!("dims.{k}: degree outside {}..={truncation}", kind.min_degree())));
    }
    let dim = |n: i32| if n < kind.min_degree() { 0 } else { dims[(n - kind.min_degree()) as usize] };
    let mut actions = BTreeMap::new();
    if let Some(acts) = obj.get("actions") {
        let acts = acts.as_object().ok_or_else(|| Error::Parse("actions: expected an object".into()))?;
        for (tok, m) in acts {
            let at = format!("actions.{tok:?}");
            let g: GeneratorId = tok.parse().map_err(|e| Error::Parse(format!("{at}: {e}")))?;
            if !g.belongs_to(kind) || g.target() > truncation {
                return Err(Error::Parse(format!("{at}: not a generator of {kind} up to {truncation}")));
            }
            actions.insert(g, matrix_from_value(m, dim(g.source()), dim(g.target()), &at)?);
        }
    }
    DiagramModule::new(kind, truncation, dims, actions)
}

pub fn module_from_json(s: &str) -> Result<DiagramModule> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    module_from_value(&v)
}

pub fn map_to_value(f: &ModuleMap) -> Value {
    let mut comps = Map::new();
    for (n, c) in f.components() {
        comps.insert(n.to_string(), matrix_to_value(c));
    }
    let mut out = Map::new();
    out.insert("format".into(), Value::from(MAP_FORMAT));
    out.insert("source".into(), module_to_value(f.source()));
    out.insert("target".into(), module_to_value(f.target()));
    out.insert("components".into(), Value::Object(comps));
    Value::Object(out)
}

pub fn map_to_json(f: &ModuleMap) -> String {
    let mut s = serde_json::to_string_pretty(&map_to_value(f)).expect("values serialize");
    s.push('\n');
    s
}

/// Reads a map with its endpoints; endpoints and commutation are not validated here.
pub fn map_from_value(v: &Value) -> Result<ModuleMap> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("map: expected an object".into()))?;
    if obj.get("format").and_then(Value::as_str) != Some(MAP_FORMAT) {
        return Err(Error::Parse(format!("format: expected {MAP_FORMAT:?}")));
    }
    let source = module_from_value(field(obj, "source", "map")?)
        .map_err(|e| Error::Parse(format!("source: {e}")))?;
    let target = module_from_value(field(obj, "target", "map")?)
        .map_err(|e| Error::Parse(format!("target: {e}")))?;
    let comps = field(obj, "components", "map")?
        .as_object()
        .ok_or_else(|| Error::Parse("components: expected an object".into()))?;
    let mut components = BTreeMap::new();
    for (k, m) in comps {
        let n: i32 = k.parse().map_err(|_| Error::Parse(format!("components.{k}: bad degree")))?;
        let at = format!("components.{k}");
        components.insert(n, matrix_from_value(m, target.dim(n), source.dim(n), &at)?);
    }
    ModuleMap::new(source, target, components)
}

pub fn map_from_json(s: &str) -> Result<ModuleMap> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    map_from_value(&v)
}

/// Human-readable listing of dimensions and action matrices.
pub fn module_text_dump(x: &DiagramModule) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind {} truncation {}", x.kind(), x.truncation());
    for n in x.degrees() {
        let _ = writeln!(s, "dim {n} = {}", x.dim(n));
    }
    for (g, a) in x.actions() {
        if a.rows() == 0 || a.cols() == 0 {
            continue;
        }
        let _ = writeln!(s, "{g}:\n{a}");
    }
    s
}
