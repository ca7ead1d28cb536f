use std::fs;
use std::path::{Path, PathBuf};

use harmonika::io::{canonical_f64, render};
use harmonika::Error;
use serde_json::{json, Value};

pub enum Format {
    Json,
    Csv,
}

/// A flat view of a result for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            // same digits as the JSON output
            Cell::Float(x) => json!(canonical_f64(*x)).to_string(),
        }
    }
}

pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Report { json, table: None }
    }

    pub fn with_table(json: Value, table: Table) -> Self {
        Report { json, table: Some(table) }
    }
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io { path: PathBuf, message: String },
    Unsupported(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn lib_code(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedGroup(_) => "unsupported_group",
        Error::OutOfRange { .. } => "out_of_range",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::GroupMismatch { .. } => "group_mismatch",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::Schema(_) => "schema",
        Error::NotFinite(_) => "not_finite",
        Error::SingularGram { .. } => "singular_gram",
        Error::NonCatalog(_) => "non_catalog",
        Error::IncompleteIrreps { .. } => "incomplete_irreps",
        Error::UnknownIrrep(_) => "unknown_irrep",
        Error::NotHermitian { .. } => "not_hermitian",
        Error::InvalidState(_) => "invalid_state",
        Error::NotPure { .. } => "not_pure",
        Error::NotInSpectrum(_) => "not_in_spectrum",
        Error::NonAbelian(_) => "non_abelian",
        Error::NotCyclicProduct(_) => "not_cyclic_product",
        Error::EmptySubset => "empty_subset",
        Error::EigenSolver(_) => "eigen_solver",
        Error::InvalidSpin(_) => "invalid_spin",
        Error::InvalidProjection { .. } => "invalid_projection",
        Error::UnsupportedProvenance(_) => "unsupported_provenance",
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_precondition() => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let (code, message, max_violation) = match self {
            CliError::Lib(e) => (lib_code(e), e.to_string(), e.max_violation()),
            CliError::Io { path, message } => ("io", format!("{}: {message}", path.display()), None),
            CliError::Unsupported(m) => ("unsupported", m.clone(), None),
        };
        render(json!({ "code": code, "message": message, "max_violation": max_violation }))
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Lib(Error::Schema(format!("{}: not valid JSON: {e}", path.display()))))
}

fn to_csv(t: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Unsupported(format!("csv output failed: {e}"));
    w.write_record(&t.header).map_err(fail)?;
    for row in &t.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Unsupported(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 cells is UTF-8"))
}

pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Json => render(report.json.clone()),
        Format::Csv => match &report.table {
            Some(t) => to_csv(t)?,
            None => return Err(CliError::Unsupported("this command has no csv form; use --format json".into())),
        },
    };
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io { path: p.to_owned(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
