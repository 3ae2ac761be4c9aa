//! One function per subcommand. Structured results go to `out` as JSON;
//! `verify` prints a table.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use eigdeg_core::examples::{self, VerifyReport};
use eigdeg_core::perturbed::{self, EigenpairGrid};
use eigdeg_core::{spectral, Eigenpoint, Problem, SolutionTriple, TraceOptions, Vector};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem_file::ProblemFile;
use crate::record::{BranchRecord, ClassRecord, Format};

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::io("stdout", e.into()))?;
    writeln!(out).map_err(|e| CliError::io("stdout", e))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn unit(v: &[f64], k: usize, what: &str) -> Result<Vector, CliError> {
    if v.len() != k {
        return Err(CliError::input(format!("{what} needs {k} components, got {}", v.len())));
    }
    Vector(v.to_vec()).normalized().map_err(|_| CliError::input(format!("{what} must be nonzero")))
}

pub fn eigen(prob: &Problem, tol: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let sets = spectral::eigensets(&prob.l, tol)?;
    let mut rows = Vec::with_capacity(sets.len());
    for es in &sets {
        let degree = spectral::ldegree_eigenset(&prob.l, es)?;
        rows.push(json!({
            "lambda": es.lambda,
            "algebraic_multiplicity": es.algebraic_multiplicity,
            "geometric_multiplicity": es.geometric_multiplicity,
            "kernel_basis": es.kernel_basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>(),
            "degree": degree.value,
        }));
    }
    emit(out, &json!({ "problem": prob.name, "eigensets": rows }))
}

pub fn degree(prob: &Problem, lambda: f64, point: Option<&[f64]>, out: &mut dyn Write) -> Result<(), CliError> {
    let es = spectral::eigenset_for(&prob.l, lambda)?;
    let set_degree = spectral::ldegree_eigenset(&prob.l, &es)?;
    let mut report = json!({
        "lambda": es.lambda,
        "algebraic_multiplicity": es.algebraic_multiplicity,
        "geometric_multiplicity": es.geometric_multiplicity,
        "eigenset_degree": set_degree.value,
    });
    if let Some(v) = point {
        let p = Eigenpoint::new(es.lambda, unit(v, prob.k, "--point")?);
        let formula = spectral::ldegree_eigenpoint_formula(&prob.l, &p)?;
        let oracle = spectral::ldegree_eigenpoint_oracle(&prob.l, &p)?;
        if formula.value != oracle.value {
            return Err(eigdeg_core::Error::Inconsistent("point degree: formula and oracle disagree").into());
        }
        report["point"] = json!({ "v": p.v.0, "formula": formula.value, "oracle": oracle.value });
    }
    emit(out, &report)
}

pub fn interval_degree(prob: &Problem, a: f64, b: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let d = spectral::interval_degree(&prob.l, a, b)?;
    emit(out, &json!({ "a": a, "b": b, "degree": d }))
}

/// `path` for the first branch, `stem-2.ext`, `stem-3.ext`, … for later ones.
pub fn numbered(path: &Path, i: usize) -> PathBuf {
    if i == 0 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{}.{}", i + 1, ext.to_string_lossy()),
        None => format!("{stem}-{}", i + 1),
    };
    path.with_file_name(name)
}

pub struct ContinueArgs<'a> {
    pub start_lambda: f64,
    pub start_v: &'a [f64],
    pub opts: TraceOptions,
    pub out: Option<&'a Path>,
    pub format: Format,
}

/// Traces everything reachable from the trivial solution `(0, λ, v)`.
pub fn continue_branch(prob: &Problem, args: &ContinueArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let v = unit(args.start_v, prob.k, "--start-v")?;
    let start = SolutionTriple::new(0.0, args.start_lambda, v);
    let branches = perturbed::trace_from_trivial(prob, &start, &args.opts)?;
    let mut summary = Vec::with_capacity(branches.len());
    for (i, b) in branches.iter().enumerate() {
        let record = BranchRecord::new(prob.name.clone(), prob.k, b, &args.opts);
        let file = match args.out {
            Some(path) => {
                let path = numbered(path, i);
                let mut w = create(&path)?;
                record.write(args.format, &mut w)?;
                w.flush().map_err(|e| CliError::io(path.display().to_string(), e))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        summary.push(json!({
            "classification": ClassRecord::from(b.classification).to_string(),
            "points": b.points.len(),
            "arclength": b.arclength(),
            "trivial_solutions": record.metadata.trivial_solutions,
            "file": file,
        }));
    }
    emit(out, &json!({ "problem": prob.name, "branches": summary }))
}

/// Samples of `det(L + sN − λI) = 0` as CSV `s,lambda`.
pub fn eigenpairs(prob: &Problem, grid: &EigenpairGrid, out: &mut dyn Write) -> Result<(), CliError> {
    let pts = perturbed::eigenpair_curve_linear(prob, grid)?;
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| CliError::io("output", e.into());
    w.write_record(["s", "lambda"]).map_err(err)?;
    for (s, l) in pts {
        w.write_record([format!("{s:.16e}"), format!("{l:.16e}")]).map_err(err)?;
    }
    w.flush().map_err(|e| CliError::io("output", e))
}

/// Runs the examples concurrently and prints a pass/fail table.
pub fn verify(ids: &[u32], out: &mut dyn Write) -> Result<(), CliError> {
    for &id in ids {
        examples::example(id)?;
    }
    let reports: Vec<Result<VerifyReport, eigdeg_core::Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ids.iter().map(|&id| scope.spawn(move || examples::verify_example(id))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let io = |e| CliError::io("stdout", e);
    writeln!(out, "{:<8} {:<6} {:>8} {:>13}  notes", "example", "result", "branches", "max-distance").map_err(io)?;
    let mut passed = 0;
    for (id, r) in ids.iter().zip(reports) {
        let r = r?;
        if r.passed {
            passed += 1;
        }
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{:<8} {:<6} {:>8} {:>13.3e}  {}",
            id,
            status,
            r.branches.len(),
            r.max_distance,
            r.notes.join("; ")
        )
        .map_err(io)?;
        for f in &r.failures {
            writeln!(out, "         - {f}").map_err(io)?;
        }
    }
    writeln!(out, "{passed}/{} passed", ids.len()).map_err(io)?;
    if passed == ids.len() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} of {} examples failed", ids.len() - passed, ids.len())))
    }
}

pub fn probe(
    prob: &Problem,
    a: f64,
    b: f64,
    radius: f64,
    trials: usize,
    seed: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let r = spectral::degree_stability_probe(&prob.l, a, b, radius, trials, seed)?;
    emit(
        out,
        &json!({
            "a": a,
            "b": b,
            "radius": radius,
            "seed": seed,
            "values": r.values,
            "evaluated": r.evaluated,
            "skipped_inadmissible": r.skipped_inadmissible,
            "margin": r.margin,
            "violation": r.violation,
        }),
    )
}

/// Problem file of a built-in example.
pub fn example(id: u32, out: &mut dyn Write) -> Result<(), CliError> {
    let (prob, _) = examples::example(id)?;
    writeln!(out, "{}", ProblemFile::from_problem(&prob).to_json()).map_err(|e| CliError::io("output", e))
}
