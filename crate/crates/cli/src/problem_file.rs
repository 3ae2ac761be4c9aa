//! JSON problem files.
//!
//! ```json
//! {
//!   "name": "rotation",
//!   "k": 2,
//!   "L": [[1, 0], [0, -1]],
//!   "N": { "type": "linear", "matrix": [[0, -1], [1, 0]] }
//! }
//! ```
//!
//! `N` is one of `{"type": "linear", "matrix": [[..]]}`,
//! `{"type": "constant", "vector": [..]}` or
//! `{"type": "polynomial", "components": [[{"coef": c, "exp": [..]}, ..], ..]}`
//! with one term list per output coordinate. Unknown fields are rejected.

use std::path::Path;

use eigdeg_core::{Matrix, NonlinearMap, Problem, Term, Vector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: Vec<Vec<f64>>,
    #[serde(rename = "N")]
    pub n: NSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum NSpec {
    Linear { matrix: Vec<Vec<f64>> },
    Constant { vector: Vec<f64> },
    Polynomial { components: Vec<Vec<TermSpec>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coef: f64,
    pub exp: Vec<u32>,
}

fn square(rows: &[Vec<f64>], k: usize, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(CliError::input(format!("{what} must be a {k}×{k} array")));
    }
    Ok(Matrix::new(k, k, rows.concat())?)
}

fn rows_of(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid problem file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn to_problem(&self) -> Result<Problem, CliError> {
        let k = self.k;
        if k == 0 {
            return Err(CliError::input("k must be at least 1"));
        }
        let l = square(&self.l, k, "L")?;
        let n = match &self.n {
            NSpec::Linear { matrix } => NonlinearMap::Linear(square(matrix, k, "N.matrix")?),
            NSpec::Constant { vector } => {
                if vector.len() != k {
                    return Err(CliError::input(format!("N.vector must have length {k}")));
                }
                NonlinearMap::Constant(Vector(vector.clone()))
            }
            NSpec::Polynomial { components } => {
                if components.len() != k {
                    return Err(CliError::input(format!("N.components must list {k} coordinates")));
                }
                let mut out = Vec::with_capacity(k);
                for terms in components {
                    let mut row = Vec::with_capacity(terms.len());
                    for t in terms {
                        if t.exp.len() != k {
                            return Err(CliError::input(format!("every exp must have length {k}")));
                        }
                        row.push(Term::new(t.coef, t.exp.clone()));
                    }
                    out.push(row);
                }
                NonlinearMap::Polynomial(out)
            }
        };
        Ok(Problem::new(l, n, self.name.clone())?)
    }

    pub fn from_problem(p: &Problem) -> Self {
        let n = match &p.n {
            NonlinearMap::Linear(m) => NSpec::Linear { matrix: rows_of(m) },
            NonlinearMap::Constant(c) => NSpec::Constant { vector: c.0.clone() },
            NonlinearMap::Polynomial(comps) => NSpec::Polynomial {
                components: comps
                    .iter()
                    .map(|terms| terms.iter().map(|t| TermSpec { coef: t.coef, exp: t.exps.clone() }).collect())
                    .collect(),
            },
        };
        ProblemFile { name: p.name.clone(), k: p.k, l: rows_of(&p.l), n }
    }
}

/// Reads and validates a problem file.
pub fn load(path: &Path) -> Result<Problem, CliError> {
    ProblemFile::read(path)?.to_problem()
}
