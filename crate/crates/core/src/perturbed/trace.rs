//! Pseudo-arclength continuation of the solution set through a start point.

use alloc::vec;
use alloc::vec::Vec;

use super::newton::{newton_solve, Constraint, NewtonOptions};
use super::{phi_jacobian, product_distance, NonlinearMap, Problem, SolutionTriple};
use crate::error::{Error, Result};
use crate::fmath::{abs, sign, sqrt};
use crate::linalg::{self, dot, norm, Matrix};
use crate::poly;

/// Trivial solutions are recorded once refined to `|s|` below this.
const TRIVIAL_S_TOL: f64 = 1e-10;
/// Relative singular-value threshold for a regular start point.
const START_RANK_TOL: f64 = 1e-8;
/// Minimum cosine between consecutive tangents.
const MIN_TANGENT_COS: f64 = 0.8;
/// Newton iteration count that still counts as an easy step.
const EASY_ITERS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    pub h0: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// A branch counts as unbounded once `|s|` or `|λ|` exceeds this, or its
    /// arclength exceeds `20 · bound`.
    pub bound: f64,
    pub max_points: usize,
    pub newton_tol: f64,
    pub max_newton_iter: usize,
    /// Start along the negated initial tangent.
    pub reverse: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            h0: 0.02,
            min_step: 1e-6,
            max_step: 0.1,
            bound: 10.0,
            max_points: 200_000,
            newton_tol: 1e-12,
            max_newton_iter: 50,
            reverse: false,
        }
    }
}

impl TraceOptions {
    fn newton(&self) -> NewtonOptions {
        NewtonOptions { tol: self.newton_tol, max_iter: self.max_newton_iter }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StallReason {
    MaxPoints,
    CorrectorFailure,
    SingularTangent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchClass {
    ClosedLoop,
    /// Finite-budget stand-in for "unbounded": the branch left the box
    /// `|s|, |λ| ≤ bound` or ran longer than `20 · bound`.
    UnboundedExceededBound(f64),
    Stalled(StallReason),
}

/// A traced piece of the solution set.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// Polyline in arclength order.
    pub points: Vec<SolutionTriple>,
    pub classification: BranchClass,
    /// Refined solutions with `s = 0` met along the way.
    pub trivial_solutions_met: Vec<SolutionTriple>,
    pub start: SolutionTriple,
    /// How each traced direction ended: one entry for a loop, else two
    /// (backward end first).
    pub ends: Vec<BranchClass>,
    /// Approximate locations where the branch crossed another branch of
    /// solutions (sign change of the bordered Jacobian determinant).
    pub branch_points: Vec<SolutionTriple>,
}

impl Branch {
    /// Distance in the product metric from `p` to the polyline.
    pub fn distance_to(&self, p: &SolutionTriple) -> f64 {
        let x = p.to_state();
        let states: Vec<Vec<f64>> = self.points.iter().map(|q| q.to_state()).collect();
        if states.len() == 1 {
            return product_distance(&x, &states[0]);
        }
        states
            .windows(2)
            .map(|w| segment_distance(&x, &w[0], &w[1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest product-metric distance between the two polylines.
    pub fn distance_to_branch(&self, other: &Branch) -> f64 {
        self.closest_approach(other, f64::INFINITY)
    }

    /// Whether the two polylines pass within `tol` of each other.
    pub fn meets(&self, other: &Branch, tol: f64) -> bool {
        self.closest_approach(other, tol) <= tol
    }

    /// Smallest segment-pair distance, exact when it is at most `cutoff`.
    fn closest_approach(&self, other: &Branch, cutoff: f64) -> f64 {
        let (a, b) = (segments(self), segments(other));
        let mut best = f64::INFINITY;
        for (p0, p1, pb) in &a {
            for (q0, q1, qb) in &b {
                let gap = box_gap(pb, qb);
                if gap < best && gap <= cutoff {
                    best = best.min(segment_pair_distance(p0, p1, q0, q1));
                    if best <= cutoff && cutoff.is_finite() {
                        return best;
                    }
                }
            }
        }
        best
    }

    pub fn arclength(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0].to_state(), w[1].to_state());
                norm(&sub(&b, &a))
            })
            .sum()
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Product-metric distance between `a + s(b − a)` and `c + t(d − c)`.
fn interpolated_distance(a: &[f64], b: &[f64], s: f64, c: &[f64], d: &[f64], t: f64) -> f64 {
    let at = |i: usize| a[i] + s * (b[i] - a[i]) - c[i] - t * (d[i] - c[i]);
    let dv2: f64 = (2..a.len()).map(|i| at(i) * at(i)).sum();
    f64::max(f64::max(abs(at(0)), abs(at(1))), sqrt(dv2))
}

/// Product-metric distance from `p` to the Euclidean projection of `p` on `[a, b]`.
fn segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let (mut dd, mut pd) = (0.0, 0.0);
    for i in 0..p.len() {
        let d = b[i] - a[i];
        dd += d * d;
        pd += (p[i] - a[i]) * d;
    }
    let t = if dd > 0.0 { (pd / dd).clamp(0.0, 1.0) } else { 0.0 };
    interpolated_distance(a, b, t, p, p, 0.0)
}

/// Product-metric distance between the Euclidean closest points of `[p0, p1]`
/// and `[q0, q1]`.
fn segment_pair_distance(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64]) -> f64 {
    let (mut a, mut b, mut c, mut e, mut f) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..p0.len() {
        let (d1, d2, r) = (p1[i] - p0[i], q1[i] - q0[i], p0[i] - q0[i]);
        a += d1 * d1;
        b += d1 * d2;
        c += d1 * r;
        e += d2 * d2;
        f += d2 * r;
    }
    let (s, t) = if a == 0.0 && e == 0.0 {
        (0.0, 0.0)
    } else if a == 0.0 {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else if e == 0.0 {
        ((-c / a).clamp(0.0, 1.0), 0.0)
    } else {
        let denom = a * e - b * b;
        let mut s = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
        let mut t = (b * s + f) / e;
        if t < 0.0 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else if t > 1.0 {
            t = 1.0;
            s = ((b - c) / a).clamp(0.0, 1.0);
        }
        (s, t)
    };
    interpolated_distance(p0, p1, s, q0, q1, t)
}

/// Lower bound on the product-metric distance between two boxes given as
/// per-coordinate `(min, max)`.
fn box_gap(x: &[(f64, f64)], y: &[(f64, f64)]) -> f64 {
    let gap = |i: usize| f64::max(0.0, f64::max(x[i].0 - y[i].1, y[i].0 - x[i].1));
    let g2: f64 = (2..x.len()).map(|i| gap(i) * gap(i)).sum();
    f64::max(f64::max(gap(0), gap(1)), sqrt(g2))
}

type Segment = (Vec<f64>, Vec<f64>, Vec<(f64, f64)>);

fn segments(b: &Branch) -> Vec<Segment> {
    let st: Vec<Vec<f64>> = b.points.iter().map(|q| q.to_state()).collect();
    if st.len() == 1 {
        let bx = segment_box(&st[0], &st[0]);
        return vec![(st[0].clone(), st[0].clone(), bx)];
    }
    st.windows(2).map(|w| (w[0].clone(), w[1].clone(), segment_box(&w[0], &w[1]))).collect()
}

fn segment_box(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter().zip(b).map(|(x, y)| (x.min(*y), x.max(*y))).collect()
}

/// `(k+1) × (k+2)` matrix `[DΦ; (0, 0, vᵀ)]` whose kernel is the tangent line.
fn augmented(prob: &Problem, x: &[f64]) -> Matrix {
    let k = prob.k;
    let j = phi_jacobian(prob, x[0], x[1], &x[2..]).expect("state has problem dimension");
    let mut a = Matrix::zeros(k + 1, k + 2);
    for i in 0..k {
        for c in 0..k + 2 {
            a[(i, c)] = j[(i, c)];
        }
    }
    for c in 0..k {
        a[(k, c + 2)] = x[c + 2];
    }
    a
}

/// Unit tangent at `x` with `⟨t, reference⟩ > 0`, from the bordered system
/// `[A; referenceᵀ] t = e_last`.
fn tangent(prob: &Problem, x: &[f64], reference: &[f64]) -> Result<Vec<f64>> {
    let k = prob.k;
    let a = augmented(prob, x);
    let mut m = Matrix::zeros(k + 2, k + 2);
    for i in 0..k + 1 {
        for c in 0..k + 2 {
            m[(i, c)] = a[(i, c)];
        }
    }
    for c in 0..k + 2 {
        m[(k + 1, c)] = reference[c];
    }
    let mut rhs = vec![0.0; k + 2];
    rhs[k + 1] = 1.0;
    let t = linalg::solve(&m, &rhs)?;
    let n = t.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::Singular);
    }
    Ok(t.scaled(1.0 / n).into_inner())
}

/// Unit null vector of the augmented Jacobian at a regular point, with a
/// deterministic sign: `ṡ > 0`, else `λ̇ > 0`, else first nonzero `v̇_i > 0`.
fn initial_tangent(prob: &Problem, x: &[f64]) -> Result<Vec<f64>> {
    let d = linalg::svd(&augmented(prob, x));
    let k = prob.k;
    let scale = d.sigma[0].max(1.0);
    if d.sigma[k] <= START_RANK_TOL * scale {
        return Err(Error::BranchStart { sigma: d.sigma[k] });
    }
    let mut t = d.v.column(k + 1).into_inner();
    let lead = t.iter().copied().find(|c| abs(*c) > 1e-12).unwrap_or(1.0);
    if lead < 0.0 {
        t.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(t)
}

struct DirectionTrace {
    points: Vec<Vec<f64>>,
    trivials: Vec<Vec<f64>>,
    branch_points: Vec<Vec<f64>>,
    end: BranchClass,
}

/// `det [A(x); tᵀ]`. Keeps its sign along a regular arc traced with a
/// continuous tangent and flips across a simple branch point.
fn branch_test(prob: &Problem, x: &[f64], t: &[f64]) -> f64 {
    let a = augmented(prob, x);
    let k = prob.k;
    let mut m = Matrix::zeros(k + 2, k + 2);
    for i in 0..k + 1 {
        for c in 0..k + 2 {
            m[(i, c)] = a[(i, c)];
        }
    }
    for c in 0..k + 2 {
        m[(k + 1, c)] = t[c];
    }
    linalg::det(&m).unwrap_or(0.0)
}

fn push_trivial(list: &mut Vec<Vec<f64>>, x: Vec<f64>) {
    if abs(x[0]) <= TRIVIAL_S_TOL && list.iter().all(|y| product_distance(y, &x) > 1e-6) {
        list.push(x);
    }
}

/// Finds the `s = 0` crossing between consecutive branch points `a` and `b`.
fn refine_crossing(prob: &Problem, a: &[f64], b: &[f64], opts: &TraceOptions) -> Option<Vec<f64>> {
    let k = prob.k;
    let chord = norm(&sub(b, a));
    let theta = a[0] / (a[0] - b[0]);
    let guess = lerp(a, b, theta);
    if let Ok((x, _)) = newton_solve(prob, &guess, &Constraint::fix_s(k, 0.0), &opts.newton()) {
        if norm(&sub(&x, &guess)) <= chord {
            return Some(x);
        }
    }
    // Illinois iteration on the chord parameter; each trial is corrected on
    // the hyperplane through the chord point orthogonal to the chord.
    let d = sub(b, a);
    let correct = |t: f64| -> Option<Vec<f64>> {
        let g = lerp(a, b, t);
        newton_solve(prob, &g, &Constraint::hyperplane(&d, &g), &opts.newton()).ok().map(|r| r.0)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    let (mut flo, mut fhi) = (a[0], b[0]);
    let mut side = 0;
    let mut best: Option<Vec<f64>> = None;
    for _ in 0..100 {
        let t = (lo * fhi - hi * flo) / (fhi - flo);
        let x = correct(t)?;
        let fx = x[0];
        if abs(fx) <= TRIVIAL_S_TOL * 1e-2 {
            return Some(x);
        }
        if best.as_ref().map_or(true, |y| abs(fx) < abs(y[0])) {
            best = Some(x);
        }
        if (fx > 0.0) == (fhi > 0.0) {
            hi = t;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        } else {
            lo = t;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        }
    }
    best
}

/// Locates a turning point of `s` between `a` and `b` (the tangent's `s`
/// component changes sign) by bisection on the chord parameter.
fn refine_turning(
    prob: &Problem,
    a: &[f64],
    ta: &[f64],
    b: &[f64],
    opts: &TraceOptions,
) -> Option<Vec<f64>> {
    let d = sub(b, a);
    let eval = |t: f64| -> Option<(Vec<f64>, f64)> {
        let g = lerp(a, b, t);
        let (x, _) = newton_solve(prob, &g, &Constraint::hyperplane(&d, &g), &opts.newton()).ok()?;
        let tx = tangent(prob, &x, ta).ok()?;
        Some((x, tx[0]))
    };
    let sa = ta[0];
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut last = None;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (x, ts) = eval(mid)?;
        let done = abs(x[0]) < 1e-3 * TRIVIAL_S_TOL;
        last = Some(x);
        if done || hi - lo < 1e-15 {
            break;
        }
        if (ts > 0.0) == (sa > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    last
}

fn trace_direction(
    prob: &Problem,
    start: &[f64],
    t0: Vec<f64>,
    opts: &TraceOptions,
    budget: usize,
) -> DirectionTrace {
    let nopts = opts.newton();
    let mut x = start.to_vec();
    let mut t = t0;
    let mut h = opts.h0.clamp(opts.min_step, opts.max_step);
    let mut easy = 0;
    let mut arclength = 0.0;
    let mut points = vec![x.clone()];
    let mut trivials = Vec::new();
    let mut branch_points = Vec::new();
    let mut test = branch_test(prob, &x, &t);

    let end = loop {
        if points.len() >= budget {
            break BranchClass::Stalled(StallReason::MaxPoints);
        }
        let pred: Vec<f64> = x.iter().zip(&t).map(|(a, d)| a + h * d).collect();
        let step = newton_solve(prob, &pred, &Constraint::hyperplane(&t, &pred), &nopts)
            .ok()
            .filter(|(xn, _)| norm(&sub(xn, &pred)) <= h)
            .and_then(|(xn, iters)| {
                let tn = tangent(prob, &xn, &t).ok()?;
                (dot(&tn, &t) >= MIN_TANGENT_COS).then_some((xn, tn, iters))
            });
        let (xn, tn, iters) = match step {
            Some(s) => s,
            None => {
                easy = 0;
                h *= 0.5;
                if h < opts.min_step {
                    let reason = if tangent(prob, &x, &t).is_err() {
                        StallReason::SingularTangent
                    } else {
                        StallReason::CorrectorFailure
                    };
                    break BranchClass::Stalled(reason);
                }
                continue;
            }
        };

        let seg = norm(&sub(&xn, &x));
        arclength += seg;

        let test_n = branch_test(prob, &xn, &tn);
        if sign(test) * sign(test_n) < 0 {
            branch_points.push(lerp(&x, &xn, test / (test - test_n)));
        }
        test = test_n;

        if xn[0] == 0.0 {
            push_trivial(&mut trivials, xn.clone());
        } else if x[0] * xn[0] < 0.0 {
            if let Some(z) = refine_crossing(prob, &x, &xn, opts) {
                push_trivial(&mut trivials, z);
            }
        } else if t[0] * tn[0] < 0.0 && f64::min(abs(x[0]), abs(xn[0])) <= seg {
            if let Some(z) = refine_turning(prob, &x, &t, &xn, opts) {
                push_trivial(&mut trivials, z);
            }
        }

        if arclength > 3.0 * opts.h0 && segment_distance(start, &x, &xn) < 0.5 * opts.h0 {
            points.push(start.to_vec());
            break BranchClass::ClosedLoop;
        }
        points.push(xn.clone());

        if abs(xn[0]) > opts.bound || abs(xn[1]) > opts.bound || arclength > 20.0 * opts.bound {
            break BranchClass::UnboundedExceededBound(opts.bound);
        }

        if iters <= EASY_ITERS {
            easy += 1;
            if easy >= 4 {
                h = f64::min(h * 1.3, opts.max_step);
                easy = 0;
            }
        } else {
            easy = 0;
        }
        x = xn;
        t = tn;
    };
    DirectionTrace { points, trivials, branch_points, end }
}

fn check_start(prob: &Problem, start: &SolutionTriple, opts: &TraceOptions) -> Result<Vec<f64>> {
    if start.v.len() != prob.k {
        return Err(Error::Dimension { expected: prob.k, found: start.v.len() });
    }
    if abs(start.v.norm() - 1.0) > 1e-10 {
        return Err(Error::Normalization);
    }
    let residual = start.residual(prob);
    let scale = prob.residual_scale();
    if residual > 1e-8 * scale {
        return Err(Error::NotASolution { residual });
    }
    let x = start.to_state();
    if residual <= opts.newton_tol * scale {
        return Ok(x);
    }
    // polish at fixed s
    Ok(newton_solve(prob, &x, &Constraint::fix_s(prob.k, start.s), &opts.newton())
        .map(|r| r.0)
        .unwrap_or(x))
}

/// Traces the component of the solution set through a regular `start`.
///
/// The first direction follows the initial tangent (negated when
/// `opts.reverse`); unless it closes into a loop, the opposite direction is
/// traced as well and the two polylines are joined.
pub fn trace_branch(prob: &Problem, start: &SolutionTriple, opts: &TraceOptions) -> Result<Branch> {
    let x0 = check_start(prob, start, opts)?;
    let mut t0 = initial_tangent(prob, &x0)?;
    if opts.reverse {
        t0.iter_mut().for_each(|c| *c = -*c);
    }
    let mut start_trivials = Vec::new();
    push_trivial(&mut start_trivials, x0.clone());

    let fwd = trace_direction(prob, &x0, t0.clone(), opts, opts.max_points);
    let to_triples = |v: &[Vec<f64>]| v.iter().map(|x| SolutionTriple::from_state(x)).collect::<Vec<_>>();

    let (points, trivials, branch_points, classification, ends) = if fwd.end == BranchClass::ClosedLoop {
        let mut tr = start_trivials;
        for z in fwd.trivials {
            push_trivial(&mut tr, z);
        }
        (fwd.points, tr, fwd.branch_points, BranchClass::ClosedLoop, vec![BranchClass::ClosedLoop])
    } else {
        let back_t: Vec<f64> = t0.iter().map(|c| -c).collect();
        let budget = opts.max_points.saturating_sub(fwd.points.len()).max(2);
        let bwd = trace_direction(prob, &x0, back_t, opts, budget);
        let mut pts: Vec<Vec<f64>> = bwd.points[1..].iter().rev().cloned().collect();
        pts.extend(fwd.points);
        let mut tr = Vec::new();
        for z in bwd.trivials.into_iter().rev().chain(start_trivials).chain(fwd.trivials) {
            push_trivial(&mut tr, z);
        }
        let bp: Vec<Vec<f64>> = bwd.branch_points.into_iter().rev().chain(fwd.branch_points).collect();
        let class = match (bwd.end, fwd.end) {
            (BranchClass::UnboundedExceededBound(b), _) | (_, BranchClass::UnboundedExceededBound(b)) => {
                BranchClass::UnboundedExceededBound(b)
            }
            (BranchClass::ClosedLoop, _) => BranchClass::ClosedLoop,
            (_, other) => other,
        };
        (pts, tr, bp, class, vec![bwd.end, fwd.end])
    };

    Ok(Branch {
        points: to_triples(&points),
        classification,
        trivial_solutions_met: to_triples(&trivials),
        start: SolutionTriple::from_state(&x0),
        ends,
        branch_points: to_triples(&branch_points),
    })
}

/// Non-trivial solutions close to a (possibly singular) trivial solution
/// `start`, used to begin continuation away from it. For linear `N` they come
/// from the real eigenpairs of `L ± h0·N` near `λ*`; otherwise from Newton
/// solves with `s` or `λ` pinned.
pub fn nearby_starts(prob: &Problem, start: &SolutionTriple, h0: f64) -> Result<Vec<SolutionTriple>> {
    let k = prob.k;
    let radius = 4.0 * sqrt(h0) * (1.0 + prob.n.size());
    let mut out: Vec<SolutionTriple> = Vec::new();
    let add = |c: SolutionTriple, out: &mut Vec<SolutionTriple>| {
        if c.residual(prob) <= 1e-8 * prob.residual_scale()
            && out.iter().all(|o| o.distance(&c) > 1e-8)
        {
            out.push(c);
        }
    };
    match &prob.n {
        NonlinearMap::Linear(n) => {
            for s in [h0, -h0] {
                let m = prob.l.add_scaled(s, n)?;
                let p = poly::char_poly(&m)?;
                let roots = poly::real_roots(&p, poly::ROOT_TOL)?;
                for r in roots.iter().filter(|r| abs(r.value - start.lambda) <= radius) {
                    let kernel = linalg::nullspace(&m.shift(r.value), 1e-8);
                    let kernel = if kernel.is_empty() {
                        let d = linalg::svd(&m.shift(r.value));
                        vec![d.v.column(k - 1)]
                    } else {
                        kernel
                    };
                    for w in kernel {
                        let align = w.dot(&start.v);
                        let signs: &[f64] = if abs(align) > 1e-8 {
                            if align > 0.0 { &[1.0] } else { &[-1.0] }
                        } else {
                            &[1.0, -1.0]
                        };
                        for &sg in signs {
                            add(SolutionTriple::new(s, r.value, w.scaled(sg)), &mut out);
                        }
                    }
                }
            }
        }
        _ => {
            let nopts = NewtonOptions::default();
            let x0 = start.to_state();
            let offsets = [0.0, h0, -h0, sqrt(h0), -sqrt(h0)];
            for s in [h0, -h0] {
                for dl in offsets {
                    let mut g = x0.clone();
                    g[0] = s;
                    g[1] += dl;
                    if let Ok((x, _)) = newton_solve(prob, &g, &Constraint::fix_s(k, s), &nopts) {
                        add(SolutionTriple::from_state(&x), &mut out);
                    }
                }
            }
            for dl in [h0, -h0] {
                let lam = start.lambda + dl;
                let mut g = x0.clone();
                g[1] = lam;
                if let Ok((x, _)) = newton_solve(prob, &g, &Constraint::fix_lambda(k, lam), &nopts) {
                    if abs(x[0]) > TRIVIAL_S_TOL {
                        add(SolutionTriple::from_state(&x), &mut out);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::BranchStart { sigma: 0.0 });
    }
    Ok(out)
}

/// Traces everything reachable from a trivial solution. A regular start over
/// a one-dimensional kernel gives one branch; otherwise the tracer begins
/// from each nearby non-trivial solution not already covered by an earlier
/// branch.
pub fn trace_from_trivial(
    prob: &Problem,
    start: &SolutionTriple,
    opts: &TraceOptions,
) -> Result<Vec<Branch>> {
    // over a kernel of dimension ≥ 2 the trivial solutions themselves form a
    // smooth curve through the start, which the tracer would follow
    let geometric = linalg::nullspace(&prob.l.shift(start.lambda), 1e-8).len();
    if geometric < 2 {
        match trace_branch(prob, start, opts) {
            Err(Error::BranchStart { .. }) => {}
            other => return other.map(|b| vec![b]),
        }
    }
    let candidates = nearby_starts(prob, start, opts.h0)?;
    let mut branches: Vec<Branch> = Vec::new();
    for c in candidates {
        if branches.iter().any(|b| b.distance_to(&c) < 5e-3) {
            continue;
        }
        branches.push(trace_branch(prob, &c, opts)?);
    }
    Ok(branches)
}
