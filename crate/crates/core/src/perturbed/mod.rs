//! The perturbed eigenvalue problem `Φ(s, λ, v) = Lv − λv + sN(v) = 0`,
//! `‖v‖ = 1`: evaluation, analytic Jacobians, a Newton corrector, a
//! pseudo-arclength branch tracer, and the analyses built on top of it.

mod analysis;
mod newton;
mod trace;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{abs, powi, sqrt};
use crate::linalg::{Matrix, Vector};

pub use analysis::{
    classify_component_persistence, classify_persistence, connected_component,
    eigenpair_curve_linear, loop_degree_sum, odd_dimension_check,
    EigenpairGrid, OddDimensionReport, Persistence, PersistenceOutcome,
};
pub use newton::{newton_correct, Constraint, NewtonOptions};
pub use trace::{
    nearby_starts, trace_branch, trace_from_trivial, Branch, BranchClass, StallReason,
    TraceOptions,
};

/// One monomial `coef · Π v_i^{exps_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub exps: Vec<u32>,
}

impl Term {
    pub fn new(coef: f64, exps: Vec<u32>) -> Self {
        Term { coef, exps }
    }

    fn eval(&self, v: &[f64]) -> f64 {
        self.exps.iter().zip(v).fold(self.coef, |acc, (&e, &x)| acc * powi(x, e))
    }

    /// `∂/∂v_j` of the monomial.
    fn partial(&self, v: &[f64], j: usize) -> f64 {
        let ej = self.exps[j];
        if ej == 0 {
            return 0.0;
        }
        let mut acc = self.coef * ej as f64;
        for (i, (&e, &x)) in self.exps.iter().zip(v).enumerate() {
            acc *= if i == j { powi(x, e - 1) } else { powi(x, e) };
        }
        acc
    }

    fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// The perturbation `N`, restricted to polynomial maps `ℝ^k → ℝ^k`.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearMap {
    Linear(Matrix),
    Constant(Vector),
    /// One list of terms per output coordinate.
    Polynomial(Vec<Vec<Term>>),
}

impl NonlinearMap {
    /// Output dimension.
    pub fn dim(&self) -> usize {
        match self {
            NonlinearMap::Linear(m) => m.rows(),
            NonlinearMap::Constant(c) => c.len(),
            NonlinearMap::Polynomial(p) => p.len(),
        }
    }

    fn validate(&self, k: usize) -> Result<()> {
        match self {
            NonlinearMap::Linear(m) => {
                if m.rows() != k || m.cols() != k {
                    return Err(Error::Dimension { expected: k, found: m.rows().max(m.cols()) });
                }
            }
            NonlinearMap::Constant(c) => {
                if c.len() != k {
                    return Err(Error::Dimension { expected: k, found: c.len() });
                }
                if c.iter().any(|x| !x.is_finite()) {
                    return Err(Error::DegenerateInput("non-finite constant"));
                }
            }
            NonlinearMap::Polynomial(p) => {
                if p.len() != k {
                    return Err(Error::Dimension { expected: k, found: p.len() });
                }
                for t in p.iter().flatten() {
                    if t.exps.len() != k {
                        return Err(Error::Dimension { expected: k, found: t.exps.len() });
                    }
                    if !t.coef.is_finite() {
                        return Err(Error::DegenerateInput("non-finite coefficient"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, v: &[f64]) -> Vector {
        match self {
            NonlinearMap::Linear(m) => m.mul_vec(v),
            NonlinearMap::Constant(c) => c.clone(),
            NonlinearMap::Polynomial(p) => {
                Vector(p.iter().map(|terms| terms.iter().map(|t| t.eval(v)).sum()).collect())
            }
        }
    }

    /// `DN(v)`, a `k × k` matrix.
    pub fn jacobian(&self, v: &[f64]) -> Matrix {
        let k = v.len();
        match self {
            NonlinearMap::Linear(m) => m.clone(),
            NonlinearMap::Constant(_) => Matrix::zeros(k, k),
            NonlinearMap::Polynomial(p) => {
                let mut j = Matrix::zeros(p.len(), k);
                for (i, terms) in p.iter().enumerate() {
                    for c in 0..k {
                        j[(i, c)] = terms.iter().map(|t| t.partial(v, c)).sum();
                    }
                }
                j
            }
        }
    }

    /// The same map written as a polynomial.
    pub fn to_polynomial(&self) -> NonlinearMap {
        match self {
            NonlinearMap::Polynomial(_) => self.clone(),
            NonlinearMap::Linear(m) => {
                let k = m.cols();
                NonlinearMap::Polynomial(
                    (0..m.rows())
                        .map(|i| {
                            (0..k)
                                .filter(|&j| m[(i, j)] != 0.0)
                                .map(|j| {
                                    let mut e = alloc::vec![0; k];
                                    e[j] = 1;
                                    Term::new(m[(i, j)], e)
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            NonlinearMap::Constant(c) => {
                let k = c.len();
                NonlinearMap::Polynomial(
                    c.iter()
                        .map(|&x| {
                            if x == 0.0 {
                                Vec::new()
                            } else {
                                alloc::vec![Term::new(x, alloc::vec![0; k])]
                            }
                        })
                        .collect(),
                )
            }
        }
    }

    /// `N(−v) = −N(v)` for every `v`.
    pub fn is_odd(&self) -> bool {
        match self {
            NonlinearMap::Linear(_) => true,
            NonlinearMap::Constant(c) => c.iter().all(|&x| x == 0.0),
            NonlinearMap::Polynomial(p) => {
                p.iter().flatten().all(|t| t.coef == 0.0 || t.total_degree() % 2 == 1)
            }
        }
    }

    /// Largest absolute coefficient, a crude size for tolerances.
    pub fn size(&self) -> f64 {
        match self {
            NonlinearMap::Linear(m) => m.frobenius_norm(),
            NonlinearMap::Constant(c) => c.norm(),
            NonlinearMap::Polynomial(p) => {
                p.iter().flatten().fold(0.0, |m, t| f64::max(m, abs(t.coef)))
            }
        }
    }
}

/// The pair `(L, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub k: usize,
    pub l: Matrix,
    pub n: NonlinearMap,
    pub name: Option<String>,
}

impl Problem {
    pub fn new(l: Matrix, n: NonlinearMap, name: Option<String>) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::Dimension { expected: l.rows(), found: l.cols() });
        }
        let k = l.rows();
        if k == 0 {
            return Err(Error::DegenerateInput("dimension must be at least 1"));
        }
        n.validate(k)?;
        Ok(Problem { k, l, n, name })
    }

    /// `1 + ‖L‖_F`, the scale of residual tolerances.
    pub fn residual_scale(&self) -> f64 {
        1.0 + self.l.frobenius_norm()
    }
}

/// A point `(s, λ, v)` of `ℝ × ℝ × S^{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTriple {
    pub s: f64,
    pub lambda: f64,
    pub v: Vector,
}

impl SolutionTriple {
    pub fn new(s: f64, lambda: f64, v: Vector) -> Self {
        SolutionTriple { s, lambda, v }
    }

    /// Flattened `(s, λ, v_1, …, v_k)`.
    pub fn to_state(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.v.len() + 2);
        x.push(self.s);
        x.push(self.lambda);
        x.extend_from_slice(&self.v);
        x
    }

    pub fn from_state(x: &[f64]) -> Self {
        SolutionTriple { s: x[0], lambda: x[1], v: Vector(x[2..].to_vec()) }
    }

    /// `max(|Δs|, |Δλ|, ‖Δv‖)`.
    pub fn distance(&self, other: &SolutionTriple) -> f64 {
        product_distance(&self.to_state(), &other.to_state())
    }

    pub fn residual(&self, prob: &Problem) -> f64 {
        phi_unchecked(prob, self.s, self.lambda, &self.v).norm()
    }
}

pub fn product_distance(a: &[f64], b: &[f64]) -> f64 {
    let dv2: f64 = a[2..].iter().zip(&b[2..]).map(|(x, y)| (x - y) * (x - y)).sum();
    f64::max(f64::max(abs(a[0] - b[0]), abs(a[1] - b[1])), sqrt(dv2))
}

fn phi_unchecked(prob: &Problem, s: f64, lambda: f64, v: &[f64]) -> Vector {
    let lv = prob.l.mul_vec(v);
    let nv = prob.n.eval(v);
    Vector(lv.iter().zip(v).zip(nv.iter()).map(|((a, x), n)| a - lambda * x + s * n).collect())
}

/// `Φ(s, λ, v) = Lv − λv + sN(v)`.
pub fn phi(prob: &Problem, s: f64, lambda: f64, v: &[f64]) -> Result<Vector> {
    if v.len() != prob.k {
        return Err(Error::Dimension { expected: prob.k, found: v.len() });
    }
    Ok(phi_unchecked(prob, s, lambda, v))
}

/// `k × (k+2)` Jacobian of `Φ` in the variables `(s, λ, v)`.
pub fn phi_jacobian(prob: &Problem, s: f64, lambda: f64, v: &[f64]) -> Result<Matrix> {
    let k = prob.k;
    if v.len() != k {
        return Err(Error::Dimension { expected: k, found: v.len() });
    }
    let nv = prob.n.eval(v);
    let dn = prob.n.jacobian(v);
    let mut j = Matrix::zeros(k, k + 2);
    for i in 0..k {
        j[(i, 0)] = nv[i];
        j[(i, 1)] = -v[i];
        for c in 0..k {
            j[(i, c + 2)] = prob.l[(i, c)] + s * dn[(i, c)];
        }
        j[(i, i + 2)] -= lambda;
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ex1() -> Problem {
        Problem::new(
            Matrix::from_rows(&[[1.0, 0.0], [0.0, -1.0]]),
            NonlinearMap::Linear(Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]])),
            None,
        )
        .unwrap()
    }

    #[test]
    fn phi_vanishes_at_trivial_solutions() {
        let p = ex1();
        assert_eq!(phi(&p, 0.0, 1.0, &[1.0, 0.0]).unwrap().0, vec![0.0, 0.0]);
        assert_eq!(phi(&p, 0.0, -1.0, &[0.0, -1.0]).unwrap().0, vec![0.0, 0.0]);
        assert!(matches!(phi(&p, 0.0, 1.0, &[1.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn phi_on_constant_perturbation_circle() {
        let p = Problem::new(
            Matrix::diag(&[1.0, 2.0]),
            NonlinearMap::Constant(Vector(vec![1.0, 0.0])),
            None,
        )
        .unwrap();
        let s: f64 = 0.5;
        let r = phi(&p, s, 2.0, &[s, (1.0 - s * s).sqrt()]).unwrap();
        assert!(r.norm() < 1e-15);
    }

    #[test]
    fn linear_and_constant_jacobians() {
        let p = ex1();
        let (s, lambda, v) = (0.3, -0.2, [0.6, 0.8]);
        let j = phi_jacobian(&p, s, lambda, &v).unwrap();
        let expect_v = p.l.add_scaled(s, &Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]])).unwrap().shift(lambda);
        for i in 0..2 {
            for c in 0..2 {
                assert_eq!(j[(i, c + 2)], expect_v[(i, c)]);
            }
            assert_eq!(j[(i, 1)], -v[i]);
        }
        let c = Problem::new(
            Matrix::diag(&[1.0, 2.0]),
            NonlinearMap::Constant(Vector(vec![1.0, -3.0])),
            None,
        )
        .unwrap();
        let j = phi_jacobian(&c, 0.7, 0.1, &v).unwrap();
        assert_eq!((j[(0, 0)], j[(1, 0)]), (1.0, -3.0));
        assert_eq!(j[(0, 2)], 1.0 - 0.1);
        assert_eq!(j[(0, 3)], 0.0);
    }

    #[test]
    fn canonical_polynomial_forms_agree() {
        let lin = NonlinearMap::Linear(Matrix::from_rows(&[[0.0, 1.0], [-1.0, 2.0]]));
        let con = NonlinearMap::Constant(Vector(vec![0.5, 0.0]));
        for map in [lin, con] {
            let poly = map.to_polynomial();
            for v in [[0.3, -0.7], [1.0, 0.0], [-0.2, 0.9]] {
                assert_eq!(map.eval(&v), poly.eval(&v));
                assert_eq!(map.jacobian(&v), poly.jacobian(&v));
            }
        }
    }

    #[test]
    fn oddness() {
        assert!(ex1().n.is_odd());
        assert!(!NonlinearMap::Constant(Vector(vec![1.0, 0.0])).is_odd());
        let cubic = NonlinearMap::Polynomial(vec![
            vec![Term::new(1.0, vec![3, 0])],
            vec![Term::new(-2.0, vec![1, 2])],
        ]);
        assert!(cubic.is_odd());
    }

    #[test]
    fn problem_validation() {
        let bad = Problem::new(
            Matrix::identity(2),
            NonlinearMap::Constant(Vector(vec![1.0, 0.0, 0.0])),
            None,
        );
        assert!(matches!(bad, Err(Error::Dimension { .. })));
        let bad = Problem::new(
            Matrix::identity(2),
            NonlinearMap::Polynomial(vec![vec![Term::new(1.0, vec![1])], vec![]]),
            None,
        );
        assert!(matches!(bad, Err(Error::Dimension { .. })));
    }
}
