use alloc::vec::Vec;

use super::trace::{Branch, BranchClass};
use super::{NonlinearMap, Problem};
use crate::error::{Error, Result};
use crate::fmath::{abs, sign};
use crate::linalg::{self, Matrix};
use crate::poly::{self, ROOT_TOL};
use crate::spectral;

/// Trivial solutions further apart than this in λ belong to different eigenvalues.
pub const EIGENVALUE_SEPARATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PersistenceOutcome {
    Unbounded,
    OtherEigenvalueFound(f64),
    OnlySameEigenvalue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Persistence {
    pub outcome: PersistenceOutcome,
    pub algebraic_multiplicity: usize,
    /// A bounded branch from an odd-multiplicity eigenvalue that meets no
    /// other eigenvalue: the global persistence property fails.
    pub theorem_violation: bool,
}

/// Checks a branch traced from a trivial solution over `lambda_star` against
/// the alternative "unbounded, or meets a trivial solution with a different
/// eigenvalue". A loop through a branch point is only part of its component
/// and gives `Inconclusive`; see [`classify_component_persistence`].
pub fn classify_persistence(prob: &Problem, branch: &Branch, lambda_star: f64) -> Result<Persistence> {
    let es = spectral::eigenset_for(&prob.l, lambda_star)?;
    let outcome = match branch.classification {
        BranchClass::Stalled(_) => return Err(Error::Inconclusive),
        BranchClass::UnboundedExceededBound(_) => PersistenceOutcome::Unbounded,
        // the component continues along the crossing branches
        BranchClass::ClosedLoop if !branch.branch_points.is_empty() => return Err(Error::Inconclusive),
        BranchClass::ClosedLoop => branch
            .trivial_solutions_met
            .iter()
            .find(|z| abs(z.lambda - es.lambda) > EIGENVALUE_SEPARATION)
            .map_or(PersistenceOutcome::OnlySameEigenvalue, |z| {
                PersistenceOutcome::OtherEigenvalueFound(z.lambda)
            }),
    };
    let odd = es.algebraic_multiplicity % 2 == 1;
    Ok(Persistence {
        outcome,
        algebraic_multiplicity: es.algebraic_multiplicity,
        theorem_violation: odd && outcome == PersistenceOutcome::OnlySameEigenvalue,
    })
}

/// Indices of the branches joined to `branches[i]` through chains of
/// crossings, i.e. pairs of polylines passing within `tol` of each other.
pub fn connected_component(branches: &[Branch], i: usize, tol: f64) -> Vec<usize> {
    let mut member = alloc::vec![false; branches.len()];
    member[i] = true;
    let mut stack = alloc::vec![i];
    while let Some(a) = stack.pop() {
        for b in 0..branches.len() {
            if !member[b] && branches[a].meets(&branches[b], tol) {
                member[b] = true;
                stack.push(b);
            }
        }
    }
    (0..branches.len()).filter(|&b| member[b]).collect()
}

/// Persistence alternative for the connected component containing
/// `branches[i]`. Branches crossing at singular points are traced separately,
/// so a closed loop may belong to an unbounded component.
pub fn classify_component_persistence(
    prob: &Problem,
    branches: &[Branch],
    i: usize,
    lambda_star: f64,
    tol: f64,
) -> Result<Persistence> {
    let es = spectral::eigenset_for(&prob.l, lambda_star)?;
    let members = connected_component(branches, i, tol);
    let classes = members.iter().map(|&m| &branches[m].classification);
    let outcome = if classes.clone().any(|c| matches!(c, BranchClass::UnboundedExceededBound(_))) {
        PersistenceOutcome::Unbounded
    } else if classes.clone().any(|c| matches!(c, BranchClass::Stalled(_))) {
        return Err(Error::Inconclusive);
    } else {
        members
            .iter()
            .flat_map(|&m| branches[m].trivial_solutions_met.iter())
            .find(|z| abs(z.lambda - es.lambda) > EIGENVALUE_SEPARATION)
            .map_or(PersistenceOutcome::OnlySameEigenvalue, |z| {
                PersistenceOutcome::OtherEigenvalueFound(z.lambda)
            })
    };
    let odd = es.algebraic_multiplicity % 2 == 1;
    Ok(Persistence {
        outcome,
        algebraic_multiplicity: es.algebraic_multiplicity,
        theorem_violation: odd && outcome == PersistenceOutcome::OnlySameEigenvalue,
    })
}

/// Sum of L-degrees of the trivial solutions on a closed branch. Over each
/// eigenvalue the eigenset degree is counted once when both antipodal
/// eigenpoints (or, for a higher-dimensional eigensphere, any point) were met;
/// otherwise each isolated point contributes its point degree.
pub fn loop_degree_sum(prob: &Problem, branch: &Branch) -> Result<i32> {
    if branch.classification != BranchClass::ClosedLoop {
        return Err(Error::Precondition("degree sum is defined for closed loops"));
    }
    let sets = spectral::eigensets(&prob.l, ROOT_TOL)?;
    let p = poly::char_poly(&prob.l)?;
    let mut total = 0;
    for es in &sets {
        let met: Vec<_> = branch
            .trivial_solutions_met
            .iter()
            .filter(|z| abs(z.lambda - es.lambda) <= EIGENVALUE_SEPARATION)
            .collect();
        if met.is_empty() {
            continue;
        }
        let jump = poly::sign_jump(&p, es.lambda, &es.root)?;
        if es.geometric_multiplicity > 1 {
            total += jump;
            continue;
        }
        let axis = &es.kernel_basis[0];
        let has_plus = met.iter().any(|z| z.v.dot(axis) > 0.0);
        let has_minus = met.iter().any(|z| z.v.dot(axis) < 0.0);
        total += match (has_plus, has_minus) {
            (true, true) => jump,
            _ => jump / 2,
        };
    }
    Ok(total)
}

/// Rectangle and resolution of the `(s, λ)` sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenpairGrid {
    pub s_min: f64,
    pub s_max: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Cells per side.
    pub resolution: usize,
}

fn pencil_det(l: &Matrix, n: &Matrix, s: f64, lambda: f64) -> f64 {
    let m = l.add_scaled(s, n).expect("same shape").shift(lambda);
    linalg::det(&m).expect("square")
}

/// Samples of `ℰ = {(s, λ) : det(L + sN − λI) = 0}` for linear `N`: one
/// bisection-refined root on every grid edge where the determinant changes
/// sign, plus grid nodes where it vanishes exactly.
pub fn eigenpair_curve_linear(prob: &Problem, grid: &EigenpairGrid) -> Result<Vec<(f64, f64)>> {
    let n = match &prob.n {
        NonlinearMap::Linear(n) => n,
        _ => return Err(Error::Unsupported("eigenpair curve needs a linear perturbation")),
    };
    if grid.resolution == 0 || !(grid.s_min < grid.s_max) || !(grid.lambda_min < grid.lambda_max) {
        return Err(Error::Precondition("grid needs positive extent and resolution"));
    }
    let r = grid.resolution;
    let sv = |i: usize| grid.s_min + (grid.s_max - grid.s_min) * i as f64 / r as f64;
    let lv = |j: usize| grid.lambda_min + (grid.lambda_max - grid.lambda_min) * j as f64 / r as f64;
    let d = |s: f64, l: f64| pencil_det(&prob.l, n, s, l);
    let values: Vec<Vec<f64>> = (0..=r).map(|i| (0..=r).map(|j| d(sv(i), lv(j))).collect()).collect();

    let bisect = |a: (f64, f64), b: (f64, f64), fa: f64| -> (f64, f64) {
        let (mut lo, mut hi) = (a, b);
        let mut flo = sign(fa);
        for _ in 0..200 {
            let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
            if mid == lo || mid == hi {
                break;
            }
            let fm = sign(d(mid.0, mid.1));
            if fm == 0 {
                return mid;
            }
            if fm == flo {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1))
    };

    let mut out = Vec::new();
    for i in 0..=r {
        for j in 0..=r {
            let f = values[i][j];
            let here = (sv(i), lv(j));
            if f == 0.0 {
                out.push(here);
                continue;
            }
            if i < r && sign(values[i + 1][j]) == -sign(f) {
                out.push(bisect(here, (sv(i + 1), lv(j)), f));
            }
            if j < r && sign(values[i][j + 1]) == -sign(f) {
                out.push(bisect(here, (sv(i), lv(j + 1)), f));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OddDimensionReport {
    /// For each sampled `s`, the real `λ` with `(s, λ) ∈ ℰ`.
    pub witnesses: Vec<(f64, Vec<f64>)>,
    pub all_found: bool,
}

/// For odd `k`, every `s` has at least one eigenpair `(s, λ)`. Linear `N`
/// is checked through the roots of `det(L + sN − λI)`; for `k = 1` the
/// two solutions `λ = L + s·N(v)·v`, `v = ±1`, are enumerated directly.
pub fn odd_dimension_check(prob: &Problem, s_samples: &[f64]) -> Result<OddDimensionReport> {
    if prob.k % 2 == 0 {
        return Err(Error::Precondition("odd dimension check needs odd k"));
    }
    let mut witnesses = Vec::with_capacity(s_samples.len());
    for &s in s_samples {
        let lambdas: Vec<f64> = match &prob.n {
            NonlinearMap::Linear(n) => {
                let p = poly::char_poly(&prob.l.add_scaled(s, n)?)?;
                poly::real_roots(&p, ROOT_TOL)?.into_iter().map(|r| r.value).collect()
            }
            _ if prob.k == 1 => [1.0, -1.0]
                .iter()
                .map(|&v| prob.l[(0, 0)] + s * prob.n.eval(&[v])[0] * v)
                .collect(),
            _ => return Err(Error::Unsupported("odd dimension check needs a linear perturbation")),
        };
        witnesses.push((s, lambdas));
    }
    let all_found = witnesses.iter().all(|(_, l)| !l.is_empty());
    Ok(OddDimensionReport { witnesses, all_found })
}
