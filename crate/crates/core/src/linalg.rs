//! Dense kernels for small real matrices: determinant, linear solve, a
//! one-sided Jacobi SVD, numerical kernel and image, and positively oriented
//! tangent bases of the cylinder `ℝ × S^{k-1}`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Deref, DerefMut, Index, IndexMut};

use crate::error::{Error, Result};
use crate::fmath::{abs, sqrt};

/// Default relative threshold for rank and kernel decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateInput("matrix entries must be finite"));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row slices. Panics on ragged input; meant for
    /// literals in code and tests.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), m, "ragged matrix literal");
            data.extend_from_slice(r);
        }
        Matrix { rows: n, cols: m, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vector {
        debug_assert_eq!(x.len(), self.cols);
        Vector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: f64, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + factor * b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self − λ I`.
    pub fn shift(&self, lambda: f64) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| f64::max(m, abs(*x)))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A point of `ℝ^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn zeros(k: usize) -> Self {
        Vector(vec![0.0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = Self::zeros(k);
        v.0[i] = 1.0;
        v
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        dot(self, other)
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm();
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::Normalization);
        }
        Ok(self.scaled(1.0 / n))
    }

    pub fn scaled(&self, a: f64) -> Vector {
        Vector(self.0.iter().map(|x| a * x).collect())
    }

    pub fn neg(&self) -> Vector {
        self.scaled(-1.0)
    }

    /// `self + a · other`.
    pub fn axpy(&self, a: f64, other: &[f64]) -> Vector {
        Vector(self.0.iter().zip(other).map(|(x, y)| x + a * y).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| f64::max(m, abs(*x)))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector(v.to_vec())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

/// LU factorisation with partial pivoting, packed in place.
struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    swaps: usize,
    singular: bool,
}

fn lu_decompose(m: &Matrix) -> Lu {
    let n = m.rows;
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;
    for col in 0..n {
        let (p, pv) = (col..n)
            .map(|r| (r, abs(lu[(r, col)])))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pv == 0.0 {
            singular = true;
            continue;
        }
        if p != col {
            for j in 0..n {
                lu.data.swap(p * n + j, col * n + j);
            }
            perm.swap(p, col);
            swaps += 1;
        }
        let pivot = lu[(col, col)];
        for r in col + 1..n {
            let f = lu[(r, col)] / pivot;
            lu[(r, col)] = f;
            if f != 0.0 {
                for j in col + 1..n {
                    lu[(r, j)] -= f * lu[(col, j)];
                }
            }
        }
    }
    Lu { lu, perm, swaps, singular }
}

/// Determinant by partially pivoted Gaussian elimination.
pub fn det(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Dimension { expected: m.rows, found: m.cols });
    }
    if m.rows == 0 {
        return Ok(1.0);
    }
    let f = lu_decompose(m);
    if f.singular {
        return Ok(0.0);
    }
    let mut d = if f.swaps % 2 == 0 { 1.0 } else { -1.0 };
    for i in 0..m.rows {
        d *= f.lu[(i, i)];
    }
    Ok(d)
}

/// Solves `m x = b`. Fails with [`Error::Singular`] when a pivot is below
/// `1e-14 · max|m|`.
pub fn solve(m: &Matrix, b: &[f64]) -> Result<Vector> {
    if !m.is_square() {
        return Err(Error::Dimension { expected: m.rows, found: m.cols });
    }
    if b.len() != m.rows {
        return Err(Error::Dimension { expected: m.rows, found: b.len() });
    }
    let n = m.rows;
    let f = lu_decompose(m);
    let floor = 1e-14 * m.max_abs();
    if f.singular || (0..n).any(|i| abs(f.lu[(i, i)]) <= floor) {
        return Err(Error::Singular);
    }
    let mut x: Vec<f64> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for j in 0..i {
            x[i] -= f.lu[(i, j)] * x[j];
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            x[i] -= f.lu[(i, j)] * x[j];
        }
        x[i] /= f.lu[(i, i)];
    }
    Ok(Vector(x))
}

/// Thin singular value decomposition `A = U Σ Vᵀ` with singular values in
/// descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × n` matrix of left singular vectors (columns); a column is zero
    /// when its singular value is exactly zero.
    pub u: Matrix,
    pub sigma: Vec<f64>,
    /// `n × n` orthogonal matrix of right singular vectors (columns).
    pub v: Matrix,
}

/// One-sided (Hestenes) Jacobi SVD. Matrices with fewer rows than columns are
/// padded with zero rows.
pub fn svd(a: &Matrix) -> Svd {
    let n = a.cols;
    let m = a.rows.max(n);
    let mut w = Matrix::zeros(m, n);
    for i in 0..a.rows {
        for j in 0..n {
            w[(i, j)] = a[(i, j)];
        }
    }
    let mut v = Matrix::identity(n);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || abs(gamma) <= f64::EPSILON * sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (abs(zeta) + sqrt(1.0 + zeta * zeta));
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    w[(i, p)] = c * x - s * y;
                    w[(i, q)] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * x - s * y;
                    v[(i, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(usize, f64)> =
        (0..n).map(|j| (j, sqrt((0..m).map(|i| w[(i, j)] * w[(i, j)]).sum()))).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    let mut u = Matrix::zeros(m, n);
    let mut vs = Matrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (dst, &(src, s)) in order.iter().enumerate() {
        sigma.push(s);
        for i in 0..m {
            u[(i, dst)] = if s > 0.0 { w[(i, src)] / s } else { 0.0 };
        }
        for i in 0..n {
            vs[(i, dst)] = v[(i, src)];
        }
    }
    Svd { u, sigma, v: vs }
}

fn rank_threshold(sigma: &[f64], tol: f64) -> f64 {
    tol * sigma.first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular value is below `tol · ‖m‖₂`. The zero matrix has full kernel.
pub fn nullspace(m: &Matrix, tol: f64) -> Vec<Vector> {
    let d = svd(m);
    let thr = rank_threshold(&d.sigma, tol);
    d.sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thr)
        .map(|(j, _)| d.v.column(j))
        .collect()
}

/// Numerical rank of `m` at relative threshold `tol`.
pub fn rank(m: &Matrix, tol: f64) -> usize {
    let d = svd(m);
    let thr = rank_threshold(&d.sigma, tol);
    d.sigma.iter().filter(|&&s| s > thr).count()
}

/// `T` restricted to its image, in an orthonormal basis of `Im T`.
#[derive(Debug, Clone)]
pub struct ImageRestriction {
    pub basis: Vec<Vector>,
    pub matrix: Matrix,
}

impl ImageRestriction {
    /// Sign of `det T̂`; independent of the chosen basis.
    pub fn det_sign(&self) -> Result<i32> {
        Ok(crate::fmath::sign(det(&self.matrix)?))
    }
}

/// Restricts `t` to its image. Fails when `T(Im T) ⊄ Im T` numerically or when
/// the restriction is singular (kernel and image intersect).
pub fn image_restriction(t: &Matrix, tol: f64) -> Result<ImageRestriction> {
    if !t.is_square() {
        return Err(Error::Dimension { expected: t.rows, found: t.cols });
    }
    let d = svd(t);
    let thr = rank_threshold(&d.sigma, tol);
    let r = d.sigma.iter().filter(|&&s| s > thr).count();
    let basis: Vec<Vector> = (0..r).map(|j| d.u.column(j)).collect();
    let b = Matrix::from_columns(&basis);
    let tb = t.matmul(&b)?;
    let hat = b.transpose().matmul(&tb)?;
    let back = b.matmul(&hat)?;
    let scale = d.sigma.first().copied().unwrap_or(0.0).max(1.0);
    let defect = tb.add_scaled(-1.0, &back)?.max_abs() / scale;
    if defect > sqrt(tol) {
        return Err(Error::Invariance { defect });
    }
    if r > 0 {
        let hs = svd(&hat);
        let smallest = hs.sigma.last().copied().unwrap_or(0.0);
        if smallest <= tol * scale * 1e2 {
            return Err(Error::Invariance { defect: smallest });
        }
    }
    Ok(ImageRestriction { basis, matrix: hat })
}

/// Ordered basis of `T_{(λ,v)}(ℝ × S) = ℝ × v^⊥`: the `ℝ` direction first,
/// then `(0, w_i)` for an orthonormal basis `w_i` of `v^⊥` with
/// `det[v w_1 … w_{k-1}] > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentBasis {
    pub lambda: f64,
    pub v: Vector,
    pub w: Vec<Vector>,
    /// Orientation sign of the basis relative to the cylinder orientation.
    /// Always `+1` for `k ≥ 2`; for `k = 1` the sphere is `{±1}` and the
    /// boundary orientation of a point is its sign.
    pub orientation: i32,
}

impl TangentBasis {
    /// The `k` basis vectors of `ℝ × ℝ^k`, flattened as `(λ̇, v̇)`.
    pub fn vectors(&self) -> Vec<Vec<f64>> {
        let k = self.v.len();
        let mut out = Vec::with_capacity(k);
        let mut first = vec![0.0; k + 1];
        first[0] = 1.0;
        out.push(first);
        for w in &self.w {
            let mut e = Vec::with_capacity(k + 1);
            e.push(0.0);
            e.extend_from_slice(w);
            out.push(e);
        }
        out
    }
}

pub fn oriented_tangent_basis(lambda: f64, v: &Vector) -> Result<TangentBasis> {
    let k = v.len();
    if k == 0 {
        return Err(Error::Normalization);
    }
    let n = v.norm();
    if !(n > 1e-12) || abs(n - 1.0) > 1e-10 {
        return Err(Error::Normalization);
    }
    if k == 1 {
        return Ok(TangentBasis {
            lambda,
            v: v.clone(),
            w: Vec::new(),
            orientation: if v[0] > 0.0 { 1 } else { -1 },
        });
    }
    let pivot = (0..k).fold(0, |best, i| if abs(v[i]) > abs(v[best]) { i } else { best });
    let mut frame: Vec<Vector> = vec![v.clone()];
    for i in (0..k).filter(|&i| i != pivot) {
        let mut e = Vector::unit(k, i);
        // modified Gram-Schmidt, twice for stability
        for _ in 0..2 {
            for f in &frame {
                let c = e.dot(f);
                e = e.axpy(-c, f);
            }
        }
        frame.push(e.normalized()?);
    }
    if det(&Matrix::from_columns(&frame))? < 0.0 {
        let last = frame.len() - 1;
        frame[last] = frame[last].neg();
    }
    let w = frame.split_off(1);
    Ok(TangentBasis { lambda, v: v.clone(), w, orientation: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&Matrix::from_rows(&[[1.0, 0.0], [0.0, -1.0]])).unwrap(), -1.0);
        assert_eq!(det(&Matrix::identity(3)).unwrap(), 1.0);
        assert_eq!(det(&Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])).unwrap(), -1.0);
        assert!(matches!(
            det(&Matrix::zeros(2, 3)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn solve_roundtrip() {
        let m = Matrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]);
        let x = solve(&m, &[1.0, 2.0, 3.0]).unwrap();
        assert!(close(&m.mul_vec(&x), &[1.0, 2.0, 3.0], 1e-14));
        assert_eq!(solve(&Matrix::zeros(2, 2), &[1.0, 1.0]), Err(Error::Singular));
    }

    #[test]
    fn nullspace_diagonal() {
        let ns = nullspace(&Matrix::diag(&[0.0, -2.0]), RANK_TOL);
        assert_eq!(ns.len(), 1);
        assert!((ns[0][0].abs() - 1.0).abs() < 1e-15 && ns[0][1] == 0.0);
        assert!(nullspace(&Matrix::diag(&[1.0, 2.0, 3.0]), RANK_TOL).is_empty());
    }

    #[test]
    fn nullspace_jordan_like() {
        // L − I for L = [[1,0,1],[0,1,0],[0,0,1]]
        let m = Matrix::from_rows(&[[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let ns = nullspace(&m, RANK_TOL);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v[2].abs() < 1e-15);
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
        assert!(ns[0].dot(&ns[1]).abs() < 1e-14);
    }

    #[test]
    fn image_restriction_signs() {
        let r = image_restriction(&Matrix::diag(&[0.0, -2.0]), RANK_TOL).unwrap();
        assert_eq!(r.matrix.rows(), 1);
        assert!((r.matrix[(0, 0)] + 2.0).abs() < 1e-14);
        assert_eq!(r.det_sign().unwrap(), -1);
        let r = image_restriction(&Matrix::diag(&[0.0, 3.0, 5.0]), RANK_TOL).unwrap();
        assert_eq!(r.det_sign().unwrap(), 1);
    }

    #[test]
    fn image_restriction_rejects_nilpotent() {
        let t = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(image_restriction(&t, RANK_TOL), Err(Error::Invariance { .. })));
    }

    #[test]
    fn tangent_basis_cases() {
        let b = oriented_tangent_basis(0.0, &Vector(vec![1.0, 0.0])).unwrap();
        assert!(close(&b.w[0], &[0.0, 1.0], 0.0));
        let b = oriented_tangent_basis(0.0, &Vector(vec![0.0, 1.0])).unwrap();
        assert!(close(&b.w[0], &[-1.0, 0.0], 0.0));
        let v = Vector(vec![0.0, 0.0, 1.0]);
        let b = oriented_tangent_basis(0.0, &v).unwrap();
        let mut cols = vec![v.clone()];
        cols.extend(b.w.iter().cloned());
        assert!((det(&Matrix::from_columns(&cols)).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(
            oriented_tangent_basis(0.0, &Vector(vec![0.0, 0.0])),
            Err(Error::Normalization)
        );
    }

    #[test]
    fn tangent_basis_k1() {
        assert_eq!(oriented_tangent_basis(2.0, &Vector(vec![-1.0])).unwrap().orientation, -1);
        assert_eq!(oriented_tangent_basis(2.0, &Vector(vec![1.0])).unwrap().orientation, 1);
    }

    #[test]
    fn svd_reconstructs() {
        let a = Matrix::from_rows(&[[3.0, 1.0, 2.0], [-1.0, 4.0, 0.5], [2.0, 2.0, 4.0]]);
        let d = svd(&a);
        for i in 0..3 {
            for j in 0..3 {
                let x: f64 = (0..3).map(|l| d.u[(i, l)] * d.sigma[l] * d.v[(j, l)]).sum();
                assert!((x - a[(i, j)]).abs() < 1e-13);
            }
        }
        assert!(d.sigma.windows(2).all(|w| w[0] >= w[1]));
    }
}
