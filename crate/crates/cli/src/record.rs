//! Traced branches on disk.
//!
//! JSON holds `{"metadata": .., "points": [[s, λ, v_1, …, v_k], ..]}` and
//! reproduces every value bit for bit. CSV starts with one `# ` line carrying
//! the metadata as compact JSON, then the header `s,lambda,v1,…,vk` and one
//! row per point with 17 significant digits.

use std::io::{BufRead, Write};

use eigdeg_core::{Branch, BranchClass, SolutionTriple, StallReason, TraceOptions};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Tolerance on `‖v‖ = 1` when reading points back.
const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ClassRecord {
    ClosedLoop,
    UnboundedExceededBound { bound: f64 },
    Stalled { reason: StallRecord },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StallRecord {
    MaxPoints,
    CorrectorFailure,
    SingularTangent,
}

impl From<BranchClass> for ClassRecord {
    fn from(c: BranchClass) -> Self {
        match c {
            BranchClass::ClosedLoop => ClassRecord::ClosedLoop,
            BranchClass::UnboundedExceededBound(bound) => ClassRecord::UnboundedExceededBound { bound },
            BranchClass::Stalled(r) => ClassRecord::Stalled {
                reason: match r {
                    StallReason::MaxPoints => StallRecord::MaxPoints,
                    StallReason::CorrectorFailure => StallRecord::CorrectorFailure,
                    StallReason::SingularTangent => StallRecord::SingularTangent,
                },
            },
        }
    }
}

impl std::fmt::Display for ClassRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassRecord::ClosedLoop => write!(f, "ClosedLoop"),
            ClassRecord::UnboundedExceededBound { bound } => write!(f, "UnboundedExceededBound({bound})"),
            ClassRecord::Stalled { reason } => write!(f, "Stalled({reason:?})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsRecord {
    pub h0: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub bound: f64,
    pub max_points: usize,
    pub newton_tol: f64,
    pub max_newton_iter: usize,
    pub reverse: bool,
}

impl From<&TraceOptions> for OptionsRecord {
    fn from(o: &TraceOptions) -> Self {
        OptionsRecord {
            h0: o.h0,
            min_step: o.min_step,
            max_step: o.max_step,
            bound: o.bound,
            max_points: o.max_points,
            newton_tol: o.newton_tol,
            max_newton_iter: o.max_newton_iter,
            reverse: o.reverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub problem: Option<String>,
    pub k: usize,
    /// `[s, λ, v_1, …, v_k]`.
    pub start: Vec<f64>,
    pub options: OptionsRecord,
    pub classification: ClassRecord,
    pub ends: Vec<ClassRecord>,
    pub trivial_solutions: Vec<Vec<f64>>,
    pub branch_points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    pub metadata: Metadata,
    pub points: Vec<Vec<f64>>,
}

impl BranchRecord {
    pub fn new(problem: Option<String>, k: usize, branch: &Branch, opts: &TraceOptions) -> Self {
        let rows = |ps: &[SolutionTriple]| ps.iter().map(|p| p.to_state()).collect::<Vec<_>>();
        BranchRecord {
            metadata: Metadata {
                problem,
                k,
                start: branch.start.to_state(),
                options: opts.into(),
                classification: branch.classification.into(),
                ends: branch.ends.iter().map(|&c| c.into()).collect(),
                trivial_solutions: rows(&branch.trivial_solutions_met),
                branch_points: rows(&branch.branch_points),
            },
            points: rows(&branch.points),
        }
    }

    /// The point rows as solution triples, checking shape and `‖v‖ = 1`.
    pub fn solution_triples(&self) -> Result<Vec<SolutionTriple>, CliError> {
        let k = self.metadata.k;
        self.points
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != k + 2 {
                    return Err(CliError::input(format!("point {i}: expected {} values, found {}", k + 2, row.len())));
                }
                if row.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::input(format!("point {i}: non-finite value")));
                }
                let p = SolutionTriple::from_state(row);
                if (p.v.norm() - 1.0).abs() > UNIT_TOL {
                    return Err(CliError::input(format!("point {i}: v is not a unit vector")));
                }
                Ok(p)
            })
            .collect()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        let io = |e| CliError::io("output", e);
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self).map_err(|e| CliError::io("output", e.into()))?;
                writeln!(out).map_err(io)
            }
            Format::Csv => {
                let meta = serde_json::to_string(&self.metadata).expect("metadata serializes");
                writeln!(out, "# {meta}").map_err(io)?;
                let mut w = csv::Writer::from_writer(&mut *out);
                let mut header = vec!["s".to_string(), "lambda".to_string()];
                header.extend((1..=self.metadata.k).map(|i| format!("v{i}")));
                w.write_record(&header).map_err(|e| CliError::io("output", e.into()))?;
                for row in &self.points {
                    w.write_record(row.iter().map(|x| format!("{x:.16e}")))
                        .map_err(|e| CliError::io("output", e.into()))?;
                }
                w.flush().map_err(io)
            }
        }
    }

    pub fn read(format: Format, input: &mut dyn BufRead) -> Result<Self, CliError> {
        let io = |e| CliError::io("input", e);
        match format {
            Format::Json => serde_json::from_reader(input)
                .map_err(|e| CliError::input(format!("invalid branch record: {e}"))),
            Format::Csv => {
                let mut first = String::new();
                input.read_line(&mut first).map_err(io)?;
                let meta = first
                    .strip_prefix("# ")
                    .ok_or_else(|| CliError::input("csv branch record must start with a '# ' metadata line"))?;
                let metadata: Metadata = serde_json::from_str(meta.trim_end())
                    .map_err(|e| CliError::input(format!("invalid metadata line: {e}")))?;
                let mut r = csv::Reader::from_reader(input);
                let expected = metadata.k + 2;
                if r.headers().map_err(|e| CliError::input(e.to_string()))?.len() != expected {
                    return Err(CliError::input(format!("csv header must have {expected} columns")));
                }
                let mut points = Vec::new();
                for rec in r.records() {
                    let rec = rec.map_err(|e| CliError::input(e.to_string()))?;
                    let row = rec
                        .iter()
                        .map(|f| f.trim().parse::<f64>().map_err(|e| CliError::input(format!("bad number {f:?}: {e}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    points.push(row);
                }
                Ok(BranchRecord { metadata, points })
            }
        }
    }
}
