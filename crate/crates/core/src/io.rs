//! JSON forms of the library types.
//!
//! Complex numbers are `[re, im]`, matrices are row-major nested arrays of
//! complex numbers. Objects are built with a fixed key order, and
//! [`canonicalize`] rounds every float to 15 significant digits so that the
//! rendered text is stable across runs.

use nalgebra::DMatrix;
use serde_json::{json, Map, Value};

use crate::algebra::AlgebraElement;
use crate::duality::{DualFunction, DualGroup};
use crate::error::{Error, Result};
use crate::group::{GroupTable, GroupTableJson};
use crate::linalg::{CMatrix, C64};
use crate::quantum::{FunctionOperator, StateReport};
use crate::repr::Irrep;
use crate::spectral::{PeterWeyl, SpectralBlocks, SpectrumEntry};
use crate::su2::{BandlimitedFunction, CGTable, Spin};

/// Values below this magnitude are written as zero.
pub const CHOP: f64 = 1e-14;

/// Optional tag carried by element files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    State,
    Observable,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::State => "state",
            Role::Observable => "observable",
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Round to 15 significant digits, flush tiny values and negative zero to 0.
pub fn canonical_f64(x: f64) -> f64 {
    if !x.is_finite() || x.abs() < CHOP {
        return 0.0;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Apply [`canonical_f64`] to every float in a JSON tree.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            json!(canonical_f64(n.as_f64().unwrap_or(0.0)))
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

/// Arrays without objects inside are kept on one line up to this width.
const INLINE_WIDTH: usize = 100;

/// Pretty, canonical text with a trailing newline. Objects get one key per
/// line; arrays of numbers (complex values, matrix rows) stay inline when
/// they fit.
pub fn render(v: Value) -> String {
    let mut s = String::new();
    write_value(&canonicalize(v), 0, &mut s);
    s.push('\n');
    s
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let line = compact(v);
            if !has_object(v) && indent * 2 + line.len() <= INLINE_WIDTH {
                out.push_str(&line);
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&compact(other)),
    }
}

pub fn complex_to_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_json(v: &Value, ctx: &str) -> Result<C64> {
    let num = |x: &Value| x.as_f64().ok_or_else(|| schema(format!("{ctx}: expected a number, got {x}")));
    match v {
        Value::Array(a) if a.len() == 2 => Ok(C64::new(num(&a[0])?, num(&a[1])?)),
        // bare reals are accepted for convenience
        Value::Number(_) => Ok(C64::new(num(v)?, 0.0)),
        _ => Err(schema(format!("{ctx}: expected [re, im], got {v}"))),
    }
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| complex_to_json(m[(r, c)])).collect())).collect(),
    )
}

pub fn real_matrix_to_json(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| json!(m[(r, c)])).collect())).collect())
}

pub fn matrix_from_json(v: &Value, ctx: &str) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| schema(format!("{ctx}: expected an array of rows")))?;
    let ncols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| schema(format!("{ctx}: row {r} is not an array")))?;
        if row.len() != ncols {
            return Err(schema(format!("{ctx}: ragged matrix, row {r} has {} entries, expected {ncols}", row.len())));
        }
        for (c, z) in row.iter().enumerate() {
            data.push(complex_from_json(z, &format!("{ctx}[{r}][{c}]"))?);
        }
    }
    let m = CMatrix::from_row_slice(rows.len(), ncols, &data);
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(schema(format!("{ctx}: non-finite entry")));
    }
    Ok(m)
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(format!("{ctx}: missing field `{key}`")))
}

/// Resolve the group named in a file against an expected group, comparing
/// canonical labels so that `cyclic:4` and `cyclic: 4` agree. A file without
/// a `group` field takes the expected group.
fn check_group(v: &Value, g: &GroupTable, ctx: &str) -> Result<()> {
    let Some(name) = v.get("group") else {
        return Ok(());
    };
    let name = name.as_str().ok_or_else(|| schema(format!("{ctx}: `group` must be a string")))?;
    let label = GroupTable::parse(name).map(|t| t.label().to_string()).unwrap_or_else(|_| name.to_string());
    if label != g.label() {
        return Err(Error::GroupMismatch { left: label, right: g.label().to_string() });
    }
    Ok(())
}

/// The group named in a file, if the file names one.
pub fn group_of(v: &Value) -> Option<&str> {
    v.get("group").and_then(Value::as_str)
}

pub fn group_to_json(g: &GroupTable) -> Value {
    let t = GroupTableJson::from(g);
    json!({ "label": t.label, "order": t.order, "mul": t.mul, "inv": t.inv, "identity": t.identity })
}

pub fn irrep_to_json(d: &Irrep) -> Value {
    let matrices: Map<String, Value> =
        d.matrices.iter().enumerate().map(|(x, m)| (x.to_string(), matrix_to_json(m))).collect();
    json!({ "label": d.label, "dim": d.dim, "matrices": matrices })
}

pub fn irreps_to_json(g: &GroupTable, irreps: &[Irrep]) -> Value {
    json!({ "group": g.label(), "irreps": irreps.iter().map(irrep_to_json).collect::<Vec<_>>() })
}

pub fn element_to_json(f: &AlgebraElement, role: Option<Role>) -> Value {
    let mut m = Map::new();
    m.insert("group".into(), json!(f.group));
    if let Some(r) = role {
        m.insert("role".into(), json!(r.as_str()));
    }
    m.insert("values".into(), Value::Array(f.values.iter().map(|&z| complex_to_json(z)).collect()));
    Value::Object(m)
}

pub fn element_from_json(v: &Value, g: &GroupTable) -> Result<(AlgebraElement, Option<Role>)> {
    let ctx = "algebra element";
    check_group(v, g, ctx)?;
    let role = match v.get("role") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "state" => Some(Role::State),
        Some(Value::String(s)) if s == "observable" => Some(Role::Observable),
        Some(other) => return Err(schema(format!("{ctx}: unknown role {other}"))),
    };
    let values =
        field(v, "values", ctx)?.as_array().ok_or_else(|| schema(format!("{ctx}: `values` must be an array")))?;
    let values = values
        .iter()
        .enumerate()
        .map(|(i, z)| complex_from_json(z, &format!("values[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let f = AlgebraElement::new(g, values).map_err(|e| schema(format!("{ctx}: {e}")))?;
    Ok((f, role))
}

pub fn blocks_to_json(b: &SpectralBlocks) -> Value {
    let blocks: Map<String, Value> =
        b.labels.iter().zip(&b.blocks).map(|(l, m)| (l.clone(), matrix_to_json(m))).collect();
    json!({ "group": b.group, "blocks": blocks })
}

pub fn blocks_from_json(v: &Value, pw: &PeterWeyl) -> Result<SpectralBlocks> {
    let ctx = "spectral blocks";
    check_group(v, pw.group(), ctx)?;
    let blocks =
        field(v, "blocks", ctx)?.as_object().ok_or_else(|| schema(format!("{ctx}: `blocks` must be an object")))?;
    let pairs = blocks
        .iter()
        .map(|(label, m)| Ok((label.clone(), matrix_from_json(m, &format!("block {label}"))?)))
        .collect::<Result<Vec<_>>>()?;
    pw.blocks_from_labeled(pairs).map_err(|e| schema(format!("{ctx}: {e}")))
}

pub fn spectrum_to_json(group: &str, entries: &[SpectrumEntry]) -> Value {
    let eig: Vec<Value> =
        entries.iter().map(|e| json!({ "value": complex_to_json(e.value), "multiplicity": e.multiplicity })).collect();
    json!({ "group": group, "spectrum": eig })
}

pub fn state_report_to_json(group: &str, r: &StateReport) -> Value {
    json!({
        "group": group,
        "hermitian": r.hermitian(),
        "trace": complex_to_json(r.trace),
        "normalized": r.normalized(),
        "positive": r.positive(),
        "pure": r.pure(),
        "state": r.violations().is_empty(),
        "hermitian_deviation": r.hermitian_deviation,
        "min_block_eigenvalue": r.min_block_eigenvalue,
        "purity_residual": r.purity_residual,
    })
}

pub fn operator_to_json(group: &str, op: &FunctionOperator) -> Value {
    json!({
        "group": group,
        "kind": op.provenance.tag(),
        "rows": op.matrix.nrows(),
        "cols": op.matrix.ncols(),
        "matrix": matrix_to_json(&op.matrix),
    })
}

/// `"j1,j2"`, for instance `"1/2,1"`.
pub fn cg_key(j1: Spin, j2: Spin) -> String {
    format!("{j1},{j2}")
}

pub fn cg_to_json(t: &CGTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .into_iter()
        .map(|(tm1, tm2, tj, tm, v)| json!([tm1 as f64 / 2.0, tm2 as f64 / 2.0, tj as f64 / 2.0, tm as f64 / 2.0, v]))
        .collect();
    let mut m = Map::new();
    m.insert(cg_key(t.j1, t.j2), Value::Array(entries));
    Value::Object(m)
}

fn twice(x: &Value, ctx: &str) -> Result<i64> {
    let v = x.as_f64().ok_or_else(|| schema(format!("{ctx}: expected a number")))?;
    let t = (2.0 * v).round();
    if (2.0 * v - t).abs() > 1e-9 {
        return Err(schema(format!("{ctx}: {v} is not a half-integer")));
    }
    Ok(t as i64)
}

pub fn cg_from_json(v: &Value, j1: Spin, j2: Spin) -> Result<CGTable> {
    let key = cg_key(j1, j2);
    let entries = field(v, &key, "cg table")?.as_array().ok_or_else(|| schema("cg table: entries must be an array"))?;
    let mut t = CGTable::zeros(j1, j2);
    for (i, e) in entries.iter().enumerate() {
        let ctx = format!("cg entry {i}");
        let e = e.as_array().filter(|a| a.len() == 5).ok_or_else(|| schema(format!("{ctx}: expected 5 numbers")))?;
        let (tm1, tm2, tj, tm) = (twice(&e[0], &ctx)?, twice(&e[1], &ctx)?, twice(&e[2], &ctx)?, twice(&e[3], &ctx)?);
        let value = e[4].as_f64().ok_or_else(|| schema(format!("{ctx}: value must be a number")))?;
        let r = t.rows.iter().position(|&(a, b)| a as i64 == tj && b as i64 == tm);
        let c = t.cols.iter().position(|&(a, b)| a as i64 == tm1 && b as i64 == tm2);
        match (r, c) {
            (Some(r), Some(c)) if tm1 + tm2 == tm => t.matrix[(r, c)] = value,
            _ => return Err(schema(format!("{ctx}: indices outside the table or violating m = m1 + m2"))),
        }
    }
    Ok(t)
}

pub fn bandlimited_to_json(f: &BandlimitedFunction) -> Value {
    let blocks: Map<String, Value> =
        f.blocks.iter().enumerate().map(|(tj, m)| (Spin(tj as u32).to_string(), matrix_to_json(m))).collect();
    json!({ "J": f.band.to_string(), "blocks": blocks })
}

pub fn bandlimited_from_json(v: &Value) -> Result<BandlimitedFunction> {
    let ctx = "band-limited function";
    let band = match field(v, "J", ctx)? {
        Value::String(s) => s.parse::<Spin>().map_err(|e| schema(format!("{ctx}: {e}")))?,
        x => Spin(twice(x, ctx)? as u32),
    };
    let blocks =
        field(v, "blocks", ctx)?.as_object().ok_or_else(|| schema(format!("{ctx}: `blocks` must be an object")))?;
    let mut out = BandlimitedFunction::zero(band);
    for (key, m) in blocks {
        let spin: Spin = key.parse().map_err(|e| schema(format!("{ctx}: block key {e}")))?;
        if spin.0 > band.0 {
            return Err(schema(format!("{ctx}: block j = {spin} above the band limit {band}")));
        }
        out.blocks[spin.0 as usize] = matrix_from_json(m, &format!("block {key}"))?;
    }
    BandlimitedFunction::new(band, out.blocks).map_err(|e| schema(format!("{ctx}: {e}")))
}

pub fn dual_to_json(d: &DualGroup, f: &DualFunction) -> Value {
    let values: Vec<Value> = f
        .values
        .iter()
        .enumerate()
        .map(|(chi, &z)| json!({ "chi": d.character_tuple(chi), "value": complex_to_json(z) }))
        .collect();
    json!({ "group": f.group, "values": values })
}

/// Entries may come in any order; each character must appear exactly once.
pub fn dual_from_json(v: &Value, d: &DualGroup, g: &GroupTable) -> Result<DualFunction> {
    let ctx = "dual function";
    check_group(v, g, ctx)?;
    let items =
        field(v, "values", ctx)?.as_array().ok_or_else(|| schema(format!("{ctx}: `values` must be an array")))?;
    if items.len() != d.order() {
        return Err(schema(format!("{ctx}: expected {} values, got {}", d.order(), items.len())));
    }
    let mut values: Vec<Option<C64>> = vec![None; d.order()];
    for (i, item) in items.iter().enumerate() {
        let ictx = format!("values[{i}]");
        let k = field(item, "chi", &ictx)?
            .as_array()
            .ok_or_else(|| schema(format!("{ictx}: `chi` must be an array")))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| schema(format!("{ictx}: bad character index"))))
            .collect::<Result<Vec<_>>>()?;
        if k.len() != d.factors().len() || k.iter().zip(d.factors()).any(|(a, n)| a >= n) {
            return Err(schema(format!("{ictx}: character {k:?} does not index {}", d.group())));
        }
        let chi = crate::group::mixed_radix_index(&k, d.factors());
        if values[chi].is_some() {
            return Err(schema(format!("{ictx}: character {k:?} listed twice")));
        }
        values[chi] = Some(complex_from_json(field(item, "value", &ictx)?, &ictx)?);
    }
    Ok(DualFunction {
        group: g.label().to_string(),
        values: values.into_iter().map(|z| z.expect("all filled")).collect(),
    })
}
