//! Flat keyed problem-specification files:
//!
//!   kind = regularized | constrained
//!   f = hinge(x1)
//!   A = [[0, 1]]
//!   b = [1]
//!   checks = existence,compactness,uniqueness   (optional)
//!
//! Chosen over nested formats so golden files diff line by line.

use crate::atoms::dsl::parse_func;
use crate::atoms::FuncExpr;
use crate::linalg::RationalMatrix;
use crate::scalar::{parse_rat, render_rat, Rat};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SpecError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension error: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Regularized,
    Constrained,
}

impl ProblemKind {
    pub fn render(&self) -> &'static str {
        match self {
            ProblemKind::Regularized => "regularized",
            ProblemKind::Constrained => "constrained",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Existence,
    Compactness,
    Uniqueness,
}

impl Check {
    pub fn render(&self) -> &'static str {
        match self {
            Check::Existence => "existence",
            Check::Compactness => "compactness",
            Check::Uniqueness => "uniqueness",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub f_src: String,
    pub f: FuncExpr,
    pub a: RationalMatrix,
    pub b: Vec<Rat>,
    pub checks: Option<Vec<Check>>,
}

fn err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_matrix(text: &str, line: usize) -> Result<Vec<Vec<Rat>>, SpecError> {
    let t = text.trim();
    if !t.starts_with("[[") || !t.ends_with("]]") {
        return Err(err(line, "matrix must look like [[1, 0], [0, 1]]"));
    }
    let inner = &t[2..t.len() - 2];
    let mut rows = Vec::new();
    for row_text in inner.split("],") {
        let row_text = row_text.trim().trim_start_matches('[');
        let mut row = Vec::new();
        for cell in row_text.split(',') {
            let cell = cell.trim();
            if cell.is_empty() {
                continue;
            }
            row.push(parse_rat(cell).map_err(|e| err(line, e))?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_vector(text: &str, line: usize) -> Result<Vec<Rat>, SpecError> {
    let t = text.trim();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(err(line, "vector must look like [1, 2]"));
    }
    let inner = &t[1..t.len() - 1];
    let mut out = Vec::new();
    for cell in inner.split(',') {
        let cell = cell.trim();
        if cell.is_empty() {
            continue;
        }
        out.push(parse_rat(cell).map_err(|e| err(line, e))?);
    }
    Ok(out)
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let mut kind = None;
    let mut f_src = None;
    let mut a_rows = None;
    let mut b = None;
    let mut checks = None;
    let mut f_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "kind" => {
                kind = Some(match value {
                    "regularized" => ProblemKind::Regularized,
                    "constrained" => ProblemKind::Constrained,
                    other => {
                        return Err(err(
                            line_no,
                            format!("kind must be regularized or constrained, got '{other}'"),
                        ))
                    }
                })
            }
            "f" => {
                f_src = Some(value.to_string());
                f_line = line_no;
            }
            "A" => a_rows = Some(parse_matrix(value, line_no)?),
            "b" => b = Some(parse_vector(value, line_no)?),
            "checks" => {
                let mut list = Vec::new();
                for c in value.split(',') {
                    list.push(match c.trim() {
                        "existence" => Check::Existence,
                        "compactness" => Check::Compactness,
                        "uniqueness" => Check::Uniqueness,
                        other => {
                            return Err(err(line_no, format!("unknown check '{other}'")))
                        }
                    });
                }
                checks = Some(list);
            }
            other => return Err(err(line_no, format!("unknown key '{other}'"))),
        }
    }
    let kind = kind.ok_or_else(|| err(1, "missing 'kind'"))?;
    let f_src = f_src.ok_or_else(|| err(1, "missing 'f'"))?;
    let a_rows = a_rows.ok_or_else(|| err(1, "missing 'A'"))?;
    let b = b.ok_or_else(|| err(1, "missing 'b'"))?;
    let cols = a_rows.first().map(|r| r.len()).unwrap_or(0);
    if cols == 0 || a_rows.iter().any(|r| r.len() != cols) {
        return Err(SpecError::Dimension("ragged or empty matrix".into()));
    }
    let a = RationalMatrix::from_rows(a_rows)
        .map_err(|e| SpecError::Dimension(e.to_string()))?;
    if b.len() != a.rows() {
        return Err(SpecError::Dimension(format!(
            "b has {} entries but A has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let f = parse_func(&f_src, a.cols()).map_err(|e| SpecError::Parse {
        line: f_line,
        message: e.to_string(),
    })?;
    Ok(ProblemSpec {
        kind,
        f_src,
        f,
        a,
        b,
        checks,
    })
}

/// Canonical rendering; parse(render(spec)) round-trips byte-identically.
pub fn render_spec(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("kind = {}\n", spec.kind.render()));
    out.push_str(&format!("f = {}\n", spec.f_src));
    let rows: Vec<String> = (0..spec.a.rows())
        .map(|i| {
            let cells: Vec<String> = (0..spec.a.cols())
                .map(|j| render_rat(spec.a.at(i, j)))
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    out.push_str(&format!("A = [{}]\n", rows.join(", ")));
    let cells: Vec<String> = spec.b.iter().map(render_rat).collect();
    out.push_str(&format!("b = [{}]\n", cells.join(", ")));
    if let Some(checks) = &spec.checks {
        let cs: Vec<&str> = checks.iter().map(|c| c.render()).collect();
        out.push_str(&format!("checks = {}\n", cs.join(",")));
    }
    out
}
