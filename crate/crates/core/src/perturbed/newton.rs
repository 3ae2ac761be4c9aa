use alloc::vec::Vec;

use super::{phi_jacobian, phi_unchecked, Problem, SolutionTriple};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm, Matrix};

/// Affine scalar constraint `⟨normal, (s, λ, v)⟩ = offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Constraint {
    /// Hyperplane orthogonal to `normal` through `point`.
    pub fn hyperplane(normal: &[f64], point: &[f64]) -> Self {
        Constraint { normal: normal.to_vec(), offset: dot(normal, point) }
    }

    /// `s = value` in a problem of dimension `k`.
    pub fn fix_s(k: usize, value: f64) -> Self {
        let mut normal = alloc::vec![0.0; k + 2];
        normal[0] = 1.0;
        Constraint { normal, offset: value }
    }

    /// `λ = value` in a problem of dimension `k`.
    pub fn fix_lambda(k: usize, value: f64) -> Self {
        let mut normal = alloc::vec![0.0; k + 2];
        normal[1] = 1.0;
        Constraint { normal, offset: value }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Converged once `‖F‖ ≤ tol · (1 + ‖L‖_F)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-12, max_iter: 50 }
    }
}

/// `F(x) = (Φ(x), (‖v‖² − 1)/2, constraint(x))`.
fn residual(prob: &Problem, x: &[f64], c: &Constraint) -> Vec<f64> {
    let mut f = phi_unchecked(prob, x[0], x[1], &x[2..]).into_inner();
    f.push(0.5 * (dot(&x[2..], &x[2..]) - 1.0));
    f.push(c.eval(x));
    f
}

fn jacobian(prob: &Problem, x: &[f64], c: &Constraint) -> Matrix {
    let k = prob.k;
    let j = phi_jacobian(prob, x[0], x[1], &x[2..]).expect("state has problem dimension");
    let mut full = Matrix::zeros(k + 2, k + 2);
    for i in 0..k {
        for col in 0..k + 2 {
            full[(i, col)] = j[(i, col)];
        }
    }
    for col in 0..k {
        full[(k, col + 2)] = x[col + 2];
    }
    for col in 0..k + 2 {
        full[(k + 1, col)] = c.normal[col];
    }
    full
}

/// Damped Newton on the square system `F = 0`. Returns the solution and the
/// number of Newton steps taken.
pub(crate) fn newton_solve(
    prob: &Problem,
    x0: &[f64],
    c: &Constraint,
    opts: &NewtonOptions,
) -> Result<(Vec<f64>, usize)> {
    let target = opts.tol * prob.residual_scale();
    let mut x = x0.to_vec();
    let mut f = residual(prob, &x, c);
    let mut r = norm(&f);
    for iter in 0..=opts.max_iter {
        if !r.is_finite() {
            break;
        }
        if r <= target {
            return Ok((x, iter));
        }
        if iter == opts.max_iter {
            break;
        }
        let j = jacobian(prob, &x, c);
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let dx = linalg::solve(&j, &rhs)
            .map_err(|_| Error::CorrectorFailure { iterations: iter, residual: r })?;
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a + alpha * d).collect();
            let ft = residual(prob, &trial, c);
            let rt = norm(&ft);
            if rt < r || rt <= target {
                x = trial;
                f = ft;
                r = rt;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Err(Error::CorrectorFailure { iterations: iter + 1, residual: r });
        }
    }
    Err(Error::CorrectorFailure { iterations: opts.max_iter, residual: r })
}

/// Solves `{Φ = 0, ‖v‖ = 1, constraint}` from `guess` by damped Newton.
pub fn newton_correct(
    prob: &Problem,
    guess: &SolutionTriple,
    constraint: &Constraint,
    opts: &NewtonOptions,
) -> Result<SolutionTriple> {
    if guess.v.len() != prob.k {
        return Err(Error::Dimension { expected: prob.k, found: guess.v.len() });
    }
    if constraint.normal.len() != prob.k + 2 {
        return Err(Error::Dimension { expected: prob.k + 2, found: constraint.normal.len() });
    }
    let (x, _) = newton_solve(prob, &guess.to_state(), constraint, opts)?;
    Ok(SolutionTriple::from_state(&x))
}
