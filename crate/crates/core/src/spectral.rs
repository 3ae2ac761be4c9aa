//! Eigenpoints and eigensets of `L` on the cylinder `ℝ × S^{k-1}`, and the
//! L-degree computed two independent ways:
//!
//! * from sign-jumps of the characteristic polynomial ([`ldegree_eigenset`],
//!   [`ldegree_eigenpoint_formula`], [`interval_degree`]);
//! * as the sign of the differential of `Ψ_L(λ, v) = Lv − λv` on a positively
//!   oriented tangent basis ([`ldegree_eigenpoint_oracle`]).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::fmath::{abs, cos, sign, sin};
use crate::linalg::{self, Matrix, Vector, RANK_TOL};
use crate::poly::{self, Poly, RealRoot, ROOT_TOL};

/// Relative residual below which `(λ, v)` counts as an eigenpoint.
pub const EIGENPOINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpoint {
    pub lambda: f64,
    pub v: Vector,
}

impl Eigenpoint {
    pub fn new(lambda: f64, v: Vector) -> Self {
        Eigenpoint { lambda, v }
    }

    /// The antipodal eigenpoint `(λ, −v)`.
    pub fn twin(&self) -> Eigenpoint {
        Eigenpoint { lambda: self.lambda, v: self.v.neg() }
    }

    /// `‖Lv − λv‖`.
    pub fn residual(&self, l: &Matrix) -> f64 {
        l.shift(self.lambda).mul_vec(&self.v).norm()
    }
}

/// The set `{λ} × S_λ` of eigenpoints over one real eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenset {
    pub lambda: f64,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    /// Orthonormal basis of `Ker(L − λI)`.
    pub kernel_basis: Vec<Vector>,
    /// Both antipodal eigenpoints when the eigensphere is `S^0`, otherwise a
    /// fixed sampling of great circles of the eigensphere.
    pub representative_eigenpoints: Vec<Eigenpoint>,
    /// The root of the characteristic polynomial this eigenset sits over.
    pub root: RealRoot,
}

impl Eigenset {
    pub fn is_simple(&self) -> bool {
        self.algebraic_multiplicity == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMethod {
    SignJumpFormula,
    DifferentialOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeValue {
    pub value: i32,
    pub method: DegreeMethod,
}

/// Flips `v` so that its largest-magnitude entry is positive.
fn canonical_sign(v: Vector) -> Vector {
    let pivot = (0..v.len()).fold(0, |b, i| if abs(v[i]) > abs(v[b]) { i } else { b });
    if v[pivot] < 0.0 {
        v.neg()
    } else {
        v
    }
}

fn sample_eigensphere(lambda: f64, basis: &[Vector]) -> Vec<Eigenpoint> {
    if basis.len() == 1 {
        let p = Eigenpoint::new(lambda, basis[0].clone());
        let twin = p.twin();
        return vec![p, twin];
    }
    const PER_CIRCLE: usize = 8;
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for n in 0..PER_CIRCLE {
                let t = 2.0 * core::f64::consts::PI * n as f64 / PER_CIRCLE as f64;
                let v = basis[i].scaled(cos(t)).axpy(sin(t), &basis[j]);
                out.push(Eigenpoint::new(lambda, v));
            }
        }
    }
    out
}

/// One eigenset per real root of the characteristic polynomial, ascending in λ.
pub fn eigensets(l: &Matrix, tol: f64) -> Result<Vec<Eigenset>> {
    let p = poly::char_poly(l)?;
    let roots = poly::real_roots(&p, tol)?;
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let t = l.shift(root.value);
        let d = linalg::svd(&t);
        let thr = RANK_TOL * d.sigma[0];
        let mut kernel: Vec<Vector> = d
            .sigma
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= thr)
            .map(|(j, _)| d.v.column(j))
            .collect();
        if kernel.is_empty() {
            // λ is a root, so the smallest singular direction is the kernel
            kernel.push(d.v.column(d.sigma.len() - 1));
        }
        kernel.truncate(root.multiplicity.max(1));
        if kernel.len() == 1 {
            let v = kernel.pop().unwrap();
            kernel.push(canonical_sign(v));
        }
        out.push(Eigenset {
            lambda: root.value,
            algebraic_multiplicity: root.multiplicity,
            geometric_multiplicity: kernel.len(),
            representative_eigenpoints: sample_eigensphere(root.value, &kernel),
            kernel_basis: kernel,
            root,
        });
    }
    Ok(out)
}

fn eigenpoint_tolerance(l: &Matrix) -> f64 {
    EIGENPOINT_TOL * (1.0 + l.frobenius_norm())
}

fn check_eigenpoint(l: &Matrix, p: &Eigenpoint) -> Result<()> {
    if !l.is_square() {
        return Err(Error::Dimension { expected: l.rows(), found: l.cols() });
    }
    if p.v.len() != l.rows() {
        return Err(Error::Dimension { expected: l.rows(), found: p.v.len() });
    }
    if abs(p.v.norm() - 1.0) > 1e-10 {
        return Err(Error::Normalization);
    }
    let residual = p.residual(l);
    if residual > eigenpoint_tolerance(l) {
        return Err(Error::NotASolution { residual });
    }
    Ok(())
}

/// Eigenset of `l` whose eigenvalue matches `lambda`.
pub fn eigenset_for(l: &Matrix, lambda: f64) -> Result<Eigenset> {
    let sets = eigensets(l, ROOT_TOL)?;
    let tol = EIGENPOINT_TOL * (1.0 + abs(lambda));
    sets.into_iter()
        .filter(|e| {
            let (a, b) = e.root.isolating_interval;
            (a < lambda && lambda < b) || abs(e.lambda - lambda) <= tol
        })
        .min_by(|x, y| abs(x.lambda - lambda).total_cmp(&abs(y.lambda - lambda)))
        .ok_or_else(|| {
            let residual = abs(poly::char_poly(l).map(|p| p.eval(lambda)).unwrap_or(f64::NAN));
            Error::NotARoot { lambda, residual }
        })
}

/// Point degree of an isolated eigenpoint: half the sign-jump of `P_L` at λ.
pub fn ldegree_eigenpoint_formula(l: &Matrix, p: &Eigenpoint) -> Result<DegreeValue> {
    check_eigenpoint(l, p)?;
    let es = eigenset_for(l, p.lambda)?;
    if es.geometric_multiplicity > 1 {
        return Err(Error::NotIsolated {
            lambda: es.lambda,
            geometric_multiplicity: es.geometric_multiplicity,
        });
    }
    let poly = poly::char_poly(l)?;
    let jump = poly::sign_jump(&poly, es.lambda, &es.root)?;
    Ok(DegreeValue { value: jump / 2, method: DegreeMethod::SignJumpFormula })
}

/// Columns of `d(Ψ_L)_p` applied to the oriented tangent basis at `p`:
/// `(1, 0) ↦ −v` and `(0, w_i) ↦ (L − λI) w_i`.
pub fn differential_matrix(l: &Matrix, p: &Eigenpoint) -> Result<(Matrix, i32)> {
    let basis = linalg::oriented_tangent_basis(p.lambda, &p.v)?;
    let t = l.shift(p.lambda);
    let mut cols = Vec::with_capacity(p.v.len());
    cols.push(p.v.neg());
    cols.extend(basis.w.iter().map(|w| t.mul_vec(w)));
    Ok((Matrix::from_columns(&cols), basis.orientation))
}

/// Point degree as the sign of the differential of `Ψ_L` at a regular zero.
pub fn ldegree_eigenpoint_oracle(l: &Matrix, p: &Eigenpoint) -> Result<DegreeValue> {
    check_eigenpoint(l, p)?;
    let (dm, orientation) = differential_matrix(l, p)?;
    let d = linalg::det(&dm)?;
    let k = p.v.len() as u32;
    let scale = crate::fmath::powi(f64::max(1.0, dm.frobenius_norm()), k.saturating_sub(1));
    if abs(d) <= RANK_TOL * scale {
        return Err(Error::DegenerateDifferential { det: d });
    }
    Ok(DegreeValue { value: sign(d) * orientation, method: DegreeMethod::DifferentialOracle })
}

/// Degree of the whole eigenset: the sign-jump of `P_L` at λ.
pub fn ldegree_eigenset(l: &Matrix, es: &Eigenset) -> Result<DegreeValue> {
    let p = poly::char_poly(l)?;
    let jump = poly::sign_jump(&p, es.lambda, &es.root)?;
    Ok(DegreeValue { value: jump, method: DegreeMethod::SignJumpFormula })
}

/// `true` when `x` is not numerically a root of `p`.
pub fn is_admissible(p: &Poly, x: f64) -> bool {
    abs(p.eval(x)) > ROOT_TOL * p.scale_at(x)
}

fn interval_degree_of(p: &Poly, a: f64, b: f64) -> Result<i32> {
    if !(a < b) {
        return Err(Error::Precondition("interval requires a < b"));
    }
    for x in [a, b] {
        if !is_admissible(p, x) {
            return Err(Error::Admissibility { endpoint: x });
        }
    }
    Ok(sign(p.eval(b)) - sign(p.eval(a)))
}

/// Degree of `Ψ_L` on `(a, b) × S`: `sign P_L(b) − sign P_L(a)`.
pub fn interval_degree(l: &Matrix, a: f64, b: f64) -> Result<i32> {
    interval_degree_of(&poly::char_poly(l)?, a, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Distinct interval degrees observed over the retained samples.
    pub values: Vec<i32>,
    pub evaluated: usize,
    /// Samples dropped because an endpoint was an eigenvalue of the perturbed
    /// matrix or a real eigenvalue came within `radius` of an endpoint.
    pub skipped_inadmissible: usize,
    /// Distance from `{a, b}` to the nearest real eigenvalue of `L`.
    pub margin: f64,
    /// More than one degree observed while `radius < margin`.
    pub violation: bool,
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples perturbations `L + E`, `max|E_ij| ≤ radius`, and records the
/// interval degree over `(a, b)` of each admissible one.
pub fn degree_stability_probe(
    l: &Matrix,
    a: f64,
    b: f64,
    radius: f64,
    trials: usize,
    seed: u64,
) -> Result<StabilityReport> {
    let p = poly::char_poly(l)?;
    interval_degree_of(&p, a, b)?;
    let margin = poly::real_roots(&p, ROOT_TOL)?
        .iter()
        .flat_map(|r| [abs(r.value - a), abs(r.value - b)])
        .fold(f64::INFINITY, f64::min);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = l.rows();
    let mut values = BTreeSet::new();
    let mut evaluated = 0;
    let mut skipped = 0;
    for _ in 0..trials {
        let mut data = l.as_slice().to_vec();
        for x in data.iter_mut() {
            *x += radius * (2.0 * uniform(&mut rng) - 1.0);
        }
        let t = Matrix::new(k, k, data)?;
        let pt = poly::char_poly(&t)?;
        let near = poly::real_roots(&pt, ROOT_TOL)?
            .iter()
            .any(|r| abs(r.value - a) <= radius || abs(r.value - b) <= radius);
        match interval_degree_of(&pt, a, b) {
            Ok(d) if !near => {
                values.insert(d);
                evaluated += 1;
            }
            _ => skipped += 1,
        }
    }
    let violation = values.len() > 1 && radius < margin;
    Ok(StabilityReport {
        values: values.into_iter().collect(),
        evaluated,
        skipped_inadmissible: skipped,
        margin,
        violation,
    })
}
