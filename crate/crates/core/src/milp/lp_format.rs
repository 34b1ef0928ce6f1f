//! Sparse text export in an LP-file dialect.
//!
//! ```text
//! \ free-form comment lines start with a backslash
//! Minimize multi-objectives
//!  THETA_LO: + 1 theta_lo
//!  THETA_MID: + 1 theta_mid
//!  THETA_HI: + 1 theta_hi
//! Subject To
//!  mo1_1: + 2 x_1_lo - 1 theta_lo <= -3
//! Bounds
//!  0 <= x_1_lo <= +inf
//!  theta_lo free
//! Binaries
//!  y_1
//! End
//! ```
//!
//! A single-objective file uses the plain `Minimize` header. Every variable
//! gets a line in `Bounds`, in index order, so reading a file back restores
//! the variable order exactly. Each objective and row sits on one line, and
//! numbers are written in shortest round-trip form.

use std::fmt::Write as _;

use thiserror::Error;

use super::{LinearForm, LinearProgram, LinearRow, Relation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Contents of an LP file: a program with one or more named objectives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpFile {
    pub var_names: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub binaries: Vec<usize>,
    pub rows: Vec<LinearRow>,
    pub objectives: Vec<(String, LinearForm)>,
}

fn num(v: f64) -> String {
    if v == f64::INFINITY {
        "+inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:?}")
    }
}

fn write_form(out: &mut String, names: &[String], form: &[(usize, f64)]) {
    if form.is_empty() {
        out.push_str(" 0");
    }
    for &(v, c) in form {
        let sign = if c.is_sign_negative() { '-' } else { '+' };
        let _ = write!(out, " {sign} {} {}", num(c.abs()), names[v]);
    }
}

impl LpFile {
    pub fn from_program(lp: &LinearProgram, binaries: &[usize]) -> Self {
        LpFile {
            var_names: lp.var_names.clone(),
            lower: lp.lower.clone(),
            upper: lp.upper.clone(),
            binaries: binaries.to_vec(),
            rows: lp.rows.clone(),
            objectives: vec![("obj".into(), lp.objective.clone())],
        }
    }

    /// The program with objective `k` selected.
    pub fn program(&self, k: usize) -> LinearProgram {
        LinearProgram {
            var_names: self.var_names.clone(),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            rows: self.rows.clone(),
            objective: self.objectives.get(k).map(|(_, f)| f.clone()).unwrap_or_default(),
        }
    }

    pub fn write(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "\\ {line}");
            }
        }
        out.push_str(if self.objectives.len() == 1 {
            "Minimize\n"
        } else {
            "Minimize multi-objectives\n"
        });
        for (name, form) in &self.objectives {
            let _ = write!(out, " {name}:");
            write_form(&mut out, &self.var_names, form);
            out.push('\n');
        }
        out.push_str("Subject To\n");
        for row in &self.rows {
            let _ = write!(out, " {}:", row.name);
            write_form(&mut out, &self.var_names, &row.coeffs);
            let _ = writeln!(out, " {} {}", row.relation.symbol(), num(row.rhs));
        }
        out.push_str("Bounds\n");
        for (j, name) in self.var_names.iter().enumerate() {
            let (l, u) = (self.lower[j], self.upper[j]);
            if l == f64::NEG_INFINITY && u == f64::INFINITY {
                let _ = writeln!(out, " {name} free");
            } else {
                let _ = writeln!(out, " {} <= {name} <= {}", num(l), num(u));
            }
        }
        if !self.binaries.is_empty() {
            out.push_str("Binaries\n");
            for &b in &self.binaries {
                let _ = writeln!(out, " {}", self.var_names[b]);
            }
        }
        out.push_str("End\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, LpFormatError> {
        #[derive(PartialEq)]
        enum Section {
            Start,
            Objective,
            Rows,
            Bounds,
            Binaries,
            End,
        }
        struct PendingForm {
            line: usize,
            tokens: Vec<String>,
        }
        let mut section = Section::Start;
        let mut file = LpFile::default();
        let mut objectives: Vec<(String, PendingForm)> = Vec::new();
        let mut rows: Vec<(String, PendingForm, Relation, f64)> = Vec::new();
        let mut binaries: Vec<(usize, String)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| LpFormatError::Syntax { line: line_no, message };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('\\') {
                continue;
            }
            match line.to_ascii_lowercase().as_str() {
                "minimize" | "minimize multi-objectives" => {
                    section = Section::Objective;
                    continue;
                }
                "subject to" => {
                    section = Section::Rows;
                    continue;
                }
                "bounds" => {
                    section = Section::Bounds;
                    continue;
                }
                "binaries" => {
                    section = Section::Binaries;
                    continue;
                }
                "end" => {
                    section = Section::End;
                    continue;
                }
                _ => {}
            }
            match section {
                Section::Start | Section::End => return Err(err(format!("unexpected `{line}`"))),
                Section::Objective => {
                    let (name, body) = line.split_once(':').ok_or_else(|| err("objective needs a name".into()))?;
                    objectives.push((
                        name.trim().to_string(),
                        PendingForm {
                            line: line_no,
                            tokens: body.split_whitespace().map(str::to_string).collect(),
                        },
                    ));
                }
                Section::Rows => {
                    let (name, body) = line.split_once(':').ok_or_else(|| err("row needs a name".into()))?;
                    let mut tokens: Vec<String> = body.split_whitespace().map(str::to_string).collect();
                    if tokens.len() < 2 {
                        return Err(err("row needs a relation and a right-hand side".into()));
                    }
                    let rhs_tok = tokens.pop().unwrap();
                    let rel_tok = tokens.pop().unwrap();
                    let relation = match rel_tok.as_str() {
                        "<=" => Relation::Le,
                        ">=" => Relation::Ge,
                        "=" => Relation::Eq,
                        other => return Err(err(format!("unknown relation `{other}`"))),
                    };
                    let rhs = parse_num(&rhs_tok).ok_or_else(|| err(format!("bad number `{rhs_tok}`")))?;
                    rows.push((name.trim().to_string(), PendingForm { line: line_no, tokens }, relation, rhs));
                }
                Section::Bounds => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    let (name, l, u) = match tokens.as_slice() {
                        [name, "free"] => (*name, f64::NEG_INFINITY, f64::INFINITY),
                        [l, "<=", name, "<=", u] => (
                            *name,
                            parse_num(l).ok_or_else(|| err(format!("bad number `{l}`")))?,
                            parse_num(u).ok_or_else(|| err(format!("bad number `{u}`")))?,
                        ),
                        _ => return Err(err(format!("unsupported bound `{line}`"))),
                    };
                    if file.var_names.iter().any(|n| n == name) {
                        return Err(err(format!("variable `{name}` bounded twice")));
                    }
                    file.var_names.push(name.to_string());
                    file.lower.push(l);
                    file.upper.push(u);
                }
                Section::Binaries => {
                    for name in line.split_whitespace() {
                        binaries.push((line_no, name.to_string()));
                    }
                }
            }
        }
        if section != Section::End {
            return Err(LpFormatError::Syntax {
                line: text.lines().count(),
                message: "missing `End`".into(),
            });
        }

        let lookup = |line: usize, name: &str| -> Result<usize, LpFormatError> {
            file.var_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| LpFormatError::Syntax {
                    line,
                    message: format!("variable `{name}` has no bounds line"),
                })
        };
        let parse_form = |p: &PendingForm| -> Result<LinearForm, LpFormatError> {
            let err = |message: String| LpFormatError::Syntax { line: p.line, message };
            let mut form = LinearForm::new();
            let mut toks = p.tokens.iter().peekable();
            if p.tokens.len() == 1 && p.tokens[0] == "0" {
                return Ok(form);
            }
            while let Some(tok) = toks.next() {
                let sign = match tok.as_str() {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => return Err(err(format!("expected a sign, found `{tok}`"))),
                };
                let coef_tok = toks.next().ok_or_else(|| err("dangling sign".into()))?;
                let coef = parse_num(coef_tok).ok_or_else(|| err(format!("bad number `{coef_tok}`")))?;
                let name = toks.next().ok_or_else(|| err("missing variable name".into()))?;
                form.push((lookup(p.line, name)?, sign * coef));
            }
            Ok(form)
        };
        let objectives = objectives
            .iter()
            .map(|(name, p)| Ok((name.clone(), parse_form(p)?)))
            .collect::<Result<Vec<_>, LpFormatError>>()?;
        let rows = rows
            .iter()
            .map(|(name, p, relation, rhs)| Ok(LinearRow::new(name.clone(), parse_form(p)?, *relation, *rhs)))
            .collect::<Result<Vec<_>, LpFormatError>>()?;
        let binaries = binaries
            .iter()
            .map(|(line, name)| lookup(*line, name))
            .collect::<Result<Vec<_>, _>>()?;
        file.objectives = objectives;
        file.rows = rows;
        file.binaries = binaries;
        Ok(file)
    }
}

fn parse_num(tok: &str) -> Option<f64> {
    match tok {
        "+inf" | "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => tok.parse().ok(),
    }
}
