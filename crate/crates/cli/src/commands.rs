use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use harmonika::io::{self, Role};
use harmonika::quantum::{
    convolution_operator, expectation, make_observable, make_state, state_report, unitarity_check, ConvolutionKind,
};
use harmonika::su2::{clebsch_gordan_cached, pointwise_product_expand, pointwise_structure_constants};
use harmonika::{
    irreps_of, AlgebraElement, BandlimitedFunction, CGTable, DualGroup, Error, Euler, GroupTable, PeterWeyl,
    SpectralBlocks, Spin,
};
use serde_json::{json, Value};

use crate::output::{read_json, Cell, CliError, Report, Table};

type Res = Result<Report, CliError>;

fn parse_group(desc: &str) -> Result<GroupTable, CliError> {
    Ok(GroupTable::parse(desc)?)
}

/// The group named by `--group`, or else by the file's `group` field.
fn resolve(flag: Option<&str>, doc: &Value) -> Result<GroupTable, CliError> {
    let desc = flag
        .or_else(|| io::group_of(doc))
        .ok_or_else(|| Error::Schema("no group given: pass --group or add a `group` field".into()))?;
    parse_group(desc)
}

fn parse_spin(s: &str) -> Result<Spin, CliError> {
    Ok(s.parse::<Spin>()?)
}

fn element_table(g: &GroupTable, f: &AlgebraElement) -> Table {
    Table {
        header: vec!["index", "element", "re", "im"],
        rows: f
            .values
            .iter()
            .enumerate()
            .map(|(x, z)| {
                vec![Cell::Int(x as i64), Cell::Text(g.element_name(x)), Cell::Float(z.re), Cell::Float(z.im)]
            })
            .collect(),
    }
}

fn element_report(g: &GroupTable, f: &AlgebraElement, role: Option<Role>) -> Report {
    Report::with_table(io::element_to_json(f, role), element_table(g, f))
}

fn blocks_report(b: &SpectralBlocks) -> Report {
    let mut rows = Vec::new();
    for (label, m) in b.labels.iter().zip(&b.blocks) {
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                rows.push(vec![
                    Cell::Text(label.clone()),
                    Cell::Int(r as i64),
                    Cell::Int(c as i64),
                    Cell::Float(z.re),
                    Cell::Float(z.im),
                ]);
            }
        }
    }
    Report::with_table(io::blocks_to_json(b), Table { header: vec!["irrep", "row", "col", "re", "im"], rows })
}

fn load_element(flag: Option<&str>, path: &Path) -> Result<(GroupTable, AlgebraElement, Option<Role>), CliError> {
    let doc = read_json(path)?;
    let g = resolve(flag, &doc)?;
    let (f, role) = io::element_from_json(&doc, &g)?;
    Ok((g, f, role))
}

pub fn group_show(desc: &str) -> Res {
    Ok(Report::json(io::group_to_json(&parse_group(desc)?)))
}

pub fn group_irreps(desc: &str) -> Res {
    let g = parse_group(desc)?;
    let irreps = irreps_of(&g)?;
    Ok(Report::json(io::irreps_to_json(&g, &irreps)))
}

pub fn transform(flag: Option<&str>, path: &Path) -> Res {
    let (g, f, _) = load_element(flag, path)?;
    let pw = PeterWeyl::new(&g)?;
    Ok(blocks_report(&pw.forward(&f)?))
}

pub fn itransform(flag: Option<&str>, path: &Path) -> Res {
    let doc = read_json(path)?;
    let g = resolve(flag, &doc)?;
    let pw = PeterWeyl::new(&g)?;
    let b = io::blocks_from_json(&doc, &pw)?;
    Ok(element_report(&g, &pw.inverse(&b)?, None))
}

pub fn convolve(flag: Option<&str>, left: &Path, right: &Path) -> Res {
    let (g, f, _) = load_element(flag, left)?;
    let (h, _) = io::element_from_json(&read_json(right)?, &g)?;
    let out = harmonika::GroupAlgebra::new(&g).convolve(&f, &h)?;
    Ok(element_report(&g, &out, None))
}

pub fn spectrum(flag: Option<&str>, path: &Path) -> Res {
    let (g, f, _) = load_element(flag, path)?;
    let entries = PeterWeyl::new(&g)?.spectrum(&f)?;
    let rows = entries
        .iter()
        .map(|e| vec![Cell::Float(e.value.re), Cell::Float(e.value.im), Cell::Int(e.multiplicity as i64)])
        .collect();
    Ok(Report::with_table(
        io::spectrum_to_json(g.label(), &entries),
        Table { header: vec!["re", "im", "multiplicity"], rows },
    ))
}

pub fn state_check(flag: Option<&str>, path: &Path) -> Res {
    let (g, f, _) = load_element(flag, path)?;
    let report = state_report(&PeterWeyl::new(&g)?, &f)?;
    Ok(Report::json(io::state_report_to_json(g.label(), &report)))
}

pub fn expect(flag: Option<&str>, obs: &Path, state: &Path) -> Res {
    let (g, a, _) = load_element(flag, obs)?;
    let (rho, _) = io::element_from_json(&read_json(state)?, &g)?;
    let pw = PeterWeyl::new(&g)?;
    let a = make_observable(&pw, &a)?;
    let rho = make_state(&pw, &rho)?;
    let v = expectation(&pw, &a, &rho)?;
    Ok(Report::json(json!({ "group": g.label(), "expectation": v, "pure": rho.is_pure() })))
}

pub fn project(flag: Option<&str>, path: &Path, label: &str) -> Res {
    let (g, f, role) = load_element(flag, path)?;
    let pw = PeterWeyl::new(&g)?;
    let alpha = pw.index_of(label)?;
    Ok(element_report(&g, &pw.project_ideal(&f, alpha)?, role))
}

pub fn operator_check(flag: Option<&str>, path: &Path, kind: ConvolutionKind, tol: f64) -> Res {
    let (g, f, _) = load_element(flag, path)?;
    let pw = PeterWeyl::new(&g)?;
    let op = convolution_operator(&pw, kind, &f)?;
    let u = unitarity_check(&pw, &f, tol)?;
    let operator_deviation = op.unitarity_deviation();
    let mut doc = io::operator_to_json(g.label(), &op);
    let obj = doc.as_object_mut().expect("operator JSON is an object");
    let matrix = obj.shift_remove("matrix").expect("operator JSON has a matrix");
    obj.insert("unitary".into(), json!(u.unitary && operator_deviation <= tol));
    obj.insert("operator_deviation".into(), json!(operator_deviation));
    obj.insert("block_deviation".into(), json!(u.block_deviation));
    obj.insert("algebra_deviation".into(), json!(u.algebra_deviation));
    obj.insert("matrix".into(), matrix);
    let mut rows = Vec::new();
    for r in 0..op.matrix.nrows() {
        for c in 0..op.matrix.ncols() {
            let z = op.matrix[(r, c)];
            rows.push(vec![Cell::Int(r as i64), Cell::Int(c as i64), Cell::Float(z.re), Cell::Float(z.im)]);
        }
    }
    Ok(Report::with_table(doc, Table { header: vec!["row", "col", "re", "im"], rows }))
}

/// `$HARMONIKA_CACHE_DIR/cg_<2j1>_<2j2>.json`, when the variable is set.
fn cg_cache_path(j1: Spin, j2: Spin) -> Option<PathBuf> {
    let dir = env::var_os("HARMONIKA_CACHE_DIR")?;
    Some(Path::new(&dir).join(format!("cg_{}_{}.json", j1.twice(), j2.twice())))
}

fn cg_table(j1: Spin, j2: Spin) -> Result<CGTable, CliError> {
    let path = cg_cache_path(j1, j2);
    if let Some(p) = &path {
        // an unreadable or stale cache entry is rebuilt, never trusted
        if let Some(t) = fs::read_to_string(p)
            .ok()
            .and_then(|s| serde_json::from_str::<Value>(&s).ok())
            .and_then(|v| io::cg_from_json(&v, j1, j2).ok())
        {
            return Ok(t);
        }
    }
    let table = (*clebsch_gordan_cached(j1, j2)?).clone();
    if let Some(p) = path {
        let io_err = |e: std::io::Error| CliError::Io { path: p.clone(), message: e.to_string() };
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir).map_err(io_err)?;
        }
        // write then rename so readers never see a partial file
        let tmp = p.with_extension(format!("json.{}", std::process::id()));
        fs::write(&tmp, io::render(io::cg_to_json(&table))).map_err(io_err)?;
        fs::rename(&tmp, &p).map_err(io_err)?;
    }
    Ok(table)
}

pub fn cg(j1: &str, j2: &str) -> Res {
    let (j1, j2) = (parse_spin(j1)?, parse_spin(j2)?);
    let table = cg_table(j1, j2)?;
    let half = |t: i64| Cell::Float(t as f64 / 2.0);
    let rows = table
        .entries()
        .into_iter()
        .map(|(tm1, tm2, tj, tm, v)| {
            vec![half(tm1 as i64), half(tm2 as i64), half(tj as i64), half(tm as i64), Cell::Float(v)]
        })
        .collect();
    Ok(Report::with_table(io::cg_to_json(&table), Table { header: vec!["m1", "m2", "j", "m", "value"], rows }))
}

pub fn su2_expand(j1: &str, ab: (usize, usize), j2: &str, rs: (usize, usize), normalized: bool) -> Res {
    let (j1, j2) = (parse_spin(j1)?, parse_spin(j2)?);
    let exp = if normalized {
        pointwise_structure_constants(j1, ab, j2, rs)?
    } else {
        pointwise_product_expand(j1, ab, j2, rs)?
    };
    let mut rows = Vec::new();
    let terms: Vec<Value> = exp
        .terms
        .iter()
        .map(|(kappa, c)| {
            for k in 0..c.nrows() {
                for l in 0..c.ncols() {
                    rows.push(vec![
                        Cell::Text(kappa.to_string()),
                        Cell::Int(k as i64),
                        Cell::Int(l as i64),
                        Cell::Float(c[(k, l)]),
                    ]);
                }
            }
            json!({ "kappa": kappa.to_string(), "coefficients": io::real_matrix_to_json(c) })
        })
        .collect();
    let doc = json!({
        "j1": j1.to_string(),
        "a": ab.0,
        "b": ab.1,
        "j2": j2.to_string(),
        "r": rs.0,
        "s": rs.1,
        "basis": if normalized { "e" } else { "D" },
        "terms": terms,
    });
    Ok(Report::with_table(doc, Table { header: vec!["kappa", "k", "l", "value"], rows }))
}

fn load_bandlimited(path: &Path) -> Result<BandlimitedFunction, CliError> {
    Ok(io::bandlimited_from_json(&read_json(path)?)?)
}

pub fn su2_evaluate(path: &Path, alpha: f64, beta: f64, gamma: f64) -> Res {
    let f = load_bandlimited(path)?;
    let v = f.evaluate(Euler::new(alpha, beta, gamma))?;
    Ok(Report::json(json!({
        "J": f.band.to_string(),
        "euler": [alpha, beta, gamma],
        "value": io::complex_to_json(v),
    })))
}

pub fn su2_convolve(left: &Path, right: &Path) -> Res {
    let f = load_bandlimited(left)?;
    let h = load_bandlimited(right)?;
    Ok(Report::json(io::bandlimited_to_json(&f.convolve(&h)?)))
}

pub fn dft(flag: Option<&str>, path: &Path, inverse: bool) -> Res {
    let doc = read_json(path)?;
    let g = resolve(flag, &doc)?;
    let d = DualGroup::new(&g)?;
    if inverse {
        let f = io::dual_from_json(&doc, &d, &g)?;
        return Ok(element_report(&g, &d.inverse(&f)?, None));
    }
    let (f, _) = io::element_from_json(&doc, &g)?;
    let hat = d.forward(&f)?;
    let rows = hat
        .values
        .iter()
        .enumerate()
        .map(|(chi, z)| {
            let k: Vec<String> = d.character_tuple(chi).iter().map(|x| x.to_string()).collect();
            vec![Cell::Text(k.join(",")), Cell::Float(z.re), Cell::Float(z.im)]
        })
        .collect();
    Ok(Report::with_table(io::dual_to_json(&d, &hat), Table { header: vec!["chi", "re", "im"], rows }))
}
