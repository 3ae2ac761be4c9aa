//! Real univariate polynomials: characteristic polynomials, real roots with
//! multiplicities, and sign-jumps at roots.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{abs, pow, powi, sign};
use crate::linalg::Matrix;

/// Default bisection width for root refinement.
pub const ROOT_TOL: f64 = 1e-10;
/// Default relative threshold of the derivative test for multiplicities.
pub const MULT_TOL: f64 = 1e-8;
/// Remainders whose normalised coefficients all fall below this vanish.
const STURM_DROP: f64 = 1e-7;
/// Relative radius of the window in which roots are polished.
const POLISH_RADIUS: f64 = 1e-5;
/// Half-width of a reported isolating interval, relative to `max(1, |λ|)`.
const ISOLATION_HALF_WIDTH: f64 = 1e-3;

/// Real polynomial, `coeffs[i]` multiplying `λ^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// Monic-free product `Π (λ − r_i)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Poly::constant(1.0), |acc, &r| acc.mul(&Poly::new(vec![-r, 1.0])))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + other.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    pub fn scale(&self, a: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| a * c).collect())
    }

    /// Euclidean division; `None` when dividing by the zero polynomial.
    pub fn div_rem(&self, d: &Poly) -> Option<(Poly, Poly)> {
        if d.is_zero() {
            return None;
        }
        let dn = d.degree();
        if self.degree() < dn || self.is_zero() {
            return Some((Poly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![0.0; self.degree() - dn + 1];
        let lead = d.leading();
        for i in (0..q.len()).rev() {
            let f = r[i + dn] / lead;
            q[i] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= f * dc;
            }
            r[i + dn] = 0.0;
        }
        r.truncate(dn.max(1));
        Some((Poly::new(q), Poly::new(r)))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| f64::max(m, abs(*c)))
    }

    /// Magnitude scale used by tolerance tests at `x`:
    /// `max|coeff| · max(1, |x|)^degree`.
    pub fn scale_at(&self, x: f64) -> f64 {
        self.max_abs_coeff() * powi(f64::max(1.0, abs(x)), self.degree() as u32)
    }

    /// Cauchy bound: every root satisfies `|λ| < 1 + max |a_i / a_n|`.
    pub fn cauchy_bound(&self) -> f64 {
        let n = self.degree();
        let lead = abs(self.leading());
        1.0 + self.coeffs[..n].iter().fold(0.0, |m, c| f64::max(m, abs(*c) / lead))
    }
}

/// Rescales so the largest coefficient is 1 in magnitude and drops leading
/// coefficients that fell below the drop threshold. `None` if nothing survives.
fn normalize_trim(p: &Poly, reference: f64) -> Option<Poly> {
    let m = p.max_abs_coeff();
    if reference <= 0.0 || m <= STURM_DROP * reference {
        return None;
    }
    let mut c: Vec<f64> = p.coeffs.iter().map(|x| x / m).collect();
    while c.len() > 1 && abs(*c.last().unwrap()) <= STURM_DROP {
        c.pop();
    }
    Some(Poly::new(c))
}

/// Sturm sequence `P, P', −rem(P, P'), …` with every member rescaled to
/// unit max-coefficient. For a polynomial with repeated roots the last member
/// is `gcd(P, P')`. Integer polynomials get an exact chain; otherwise it is
/// computed in floating point and the last member approximates the gcd.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    if let Some(seq) = exact::sturm_sequence(p) {
        return seq.iter().map(|q| q.scale(1.0 / q.max_abs_coeff())).collect();
    }
    let first = match normalize_trim(p, p.max_abs_coeff()) {
        Some(f) => f,
        None => return Vec::new(),
    };
    let mut seq = vec![first.clone()];
    if first.degree() == 0 {
        return seq;
    }
    let d = first.derivative();
    let second = normalize_trim(&d, d.max_abs_coeff()).unwrap();
    seq.push(second);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.degree() == 0 {
            break;
        }
        let (_, r) = a.div_rem(b).unwrap();
        match normalize_trim(&r.scale(-1.0), 1.0) {
            Some(next) => seq.push(next),
            None => break,
        }
    }
    seq
}

/// Sign variations of a Sturm sequence at `x`, zeros skipped.
pub fn sign_variations(seq: &[Poly], x: f64) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in seq {
        let v = sign(s.eval(x));
        if v == 0 {
            continue;
        }
        if last != 0 && v != last {
            count += 1;
        }
        last = v;
    }
    count
}

/// Number of distinct real roots in `(a, b]` by Sturm's theorem.
pub fn sturm_count(seq: &[Poly], a: f64, b: f64) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// A real root with its algebraic multiplicity and an isolating interval.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
    /// `(a, b)` with `a < value < b` and no other root in `[a, b]`.
    pub isolating_interval: (f64, f64),
}

/// Real roots with the default refinement and multiplicity tolerances.
pub fn real_roots(p: &Poly, tol: f64) -> Result<Vec<RealRoot>> {
    real_roots_with(p, tol, MULT_TOL)
}

/// Every real root of `p`, ascending.
///
/// Distinct roots are isolated by Sturm counts on the squarefree part
/// `p / gcd(p, p')` of `p(ρμ)`, with `ρ` a power of two that brings large
/// roots to moderate size, then bisected to width `< tol`.
/// Integer polynomials are split exactly as `Π a_i^i` with squarefree `a_i`,
/// and the roots of `a_i` have multiplicity `i`. Otherwise the multiplicity of
/// a root `r` is the smallest `m ≥ 1` with `|p^(m)(r)| > mult_tol · scale(p, r)`.
pub fn real_roots_with(p: &Poly, tol: f64, mult_tol: f64) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial has no isolated roots"));
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let bound = p.cauchy_bound() * (1.0 + 1e-9) + 1e-9;
    if let Some(factors) = exact::factor_by_multiplicity(p) {
        // the roots of each squarefree factor carry its multiplicity
        let mut found: Vec<(f64, usize)> = Vec::new();
        for (a, m) in &factors {
            found.extend(isolate(a, bound, tol).into_iter().map(|r| (r, *m)));
        }
        found.sort_by(|x, y| x.0.total_cmp(&y.0));
        return Ok(with_intervals(&found, 1.0, bound));
    }
    // work with p(ρμ), ρ a power of two, so that the roots have moderate size
    let rho = root_scale(p);
    let mut pr = 1.0;
    let scaled = Poly::new(
        p.coeffs
            .iter()
            .map(|c| {
                let v = c * pr;
                pr *= rho;
                v
            })
            .collect(),
    );
    let found = scaled_roots(&scaled, tol / rho, mult_tol);
    Ok(with_intervals(&found, rho, bound))
}

/// Maps `(μ, m)` pairs to roots `ρμ` with isolating intervals inside `±bound`.
fn with_intervals(found: &[(f64, usize)], rho: f64, bound: f64) -> Vec<RealRoot> {
    let values: Vec<f64> = found.iter().map(|&(mu, _)| mu * rho).collect();
    let n = values.len();
    let mut roots = Vec::with_capacity(n);
    for (i, &r) in values.iter().enumerate() {
        let w = ISOLATION_HALF_WIDTH * f64::max(1.0, abs(r));
        let lo = if i > 0 { 0.5 * (values[i - 1] + r) } else { -bound };
        let hi = if i + 1 < n { 0.5 * (values[i + 1] + r) } else { bound };
        roots.push(RealRoot {
            value: r,
            multiplicity: found[i].1,
            isolating_interval: (f64::max(lo, r - w), f64::min(hi, r + w)),
        });
    }
    roots
}

/// Least power of two `ρ ≥ 1` with the Fujiwara root bound at most `8ρ`.
fn root_scale(p: &Poly) -> f64 {
    let n = p.degree();
    let lead = abs(p.leading());
    let mut bound: f64 = 0.0;
    for i in 1..=n {
        let c = abs(p.coeffs[n - i]) / lead;
        let c = if i == n { 0.5 * c } else { c };
        if c > 0.0 {
            bound = bound.max(pow(c, 1.0 / i as f64));
        }
    }
    let mut rho = 1.0;
    while bound > 8.0 * rho && rho < 1e150 {
        rho *= 2.0;
    }
    rho
}

/// Distinct real roots of `p` with multiplicities, ascending.
fn scaled_roots(p: &Poly, tol: f64, mult_tol: f64) -> Vec<(f64, usize)> {
    let q = squarefree_part(p);
    let values = isolate(&q, p.cauchy_bound(), tol);
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    for (i, &r) in values.iter().enumerate() {
        let left = if i > 0 { r - values[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < n { values[i + 1] - r } else { f64::INFINITY };
        let w = f64::min(POLISH_RADIUS * f64::max(1.0, abs(r)), 0.25 * f64::min(left, right));
        out.push(polish(p, r, w, mult_tol));
    }
    out
}

/// Roots of the squarefree `q`, isolated by Sturm counts inside
/// `max(cauchy(q), bound)` and bisected. Ascending.
fn isolate(q: &Poly, bound: f64, tol: f64) -> Vec<f64> {
    let seq = sturm_sequence(q);
    let bound = q.cauchy_bound().max(bound) * (1.0 + 1e-9) + 1e-9;

    let mut isolated: Vec<(f64, f64)> = Vec::new();
    let mut stack = vec![(-bound, bound, sturm_count(&seq, -bound, bound))];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 || b - a <= 4.0 * f64::EPSILON * f64::max(1.0, abs(a) + abs(b)) {
            isolated.push((a, b));
            continue;
        }
        let mut mid = 0.5 * (a + b);
        if q.eval(mid) == 0.0 {
            mid = a + 0.5003 * (b - a);
        }
        let left = sturm_count(&seq, a, mid);
        let right = sturm_count(&seq, mid, b);
        stack.push((mid, b, right));
        stack.push((a, mid, left));
    }
    isolated.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut values: Vec<f64> = isolated.iter().map(|&(a, b)| refine(q, &seq, a, b, tol)).collect();
    values.dedup_by(|x, y| x == y);
    values
}

/// Bisects `d` on `[a, b]` when its endpoint signs are opposite and nonzero.
fn bisect_sign_change(d: &Poly, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = sign(d.eval(a));
    if fa == 0 || sign(d.eval(b)) != -fa {
        return None;
    }
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Some(mid);
        }
        let fm = sign(d.eval(mid));
        if fm == 0 {
            return Some(mid);
        }
        if fm == fa {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
}

/// A root of multiplicity `m` is a simple root of `P^(m−1)`. Tries
/// `j = 0, 1, …`: bisects `P^(j)` on `[r − w, r + w]` and accepts the result
/// when the derivative test there gives multiplicity `j + 1`. Falls back to
/// `r` and its derivative-test multiplicity.
fn polish(p: &Poly, r: f64, w: f64, mult_tol: f64) -> (f64, usize) {
    let mut d = p.clone();
    for j in 0..p.degree() {
        if let Some(x) = bisect_sign_change(&d, r - w, r + w) {
            if multiplicity(p, x, mult_tol) == j + 1 {
                return (x, j + 1);
            }
        }
        d = d.derivative();
    }
    (r, multiplicity(p, r, mult_tol))
}

/// `p / gcd(p, p')`, normalised. Integer polynomials are reduced exactly;
/// otherwise the floating-point Euclidean chain supplies the gcd.
fn squarefree_part(p: &Poly) -> Poly {
    if let Some(q) = exact::squarefree_part(p) {
        return q;
    }
    let seq = sturm_sequence(p);
    let g = seq.last().unwrap();
    let base = &seq[0];
    if g.degree() == 0 || seq.len() < 2 {
        return base.clone();
    }
    let (quot, _) = base.div_rem(g).unwrap();
    normalize_trim(&quot, quot.max_abs_coeff()).unwrap_or_else(|| base.clone())
}

/// Sturm chains and multiplicity factorisations of integer polynomials in
/// exact big-integer arithmetic. `None` on non-integral input.
mod exact {
    use super::Poly;
    use alloc::vec::Vec;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

    type IPoly = Vec<BigInt>;

    fn from_poly(p: &Poly) -> Option<IPoly> {
        if p.degree() == 0 {
            return None;
        }
        p.coeffs
            .iter()
            .map(|&c| if libm::trunc(c) == c { BigInt::from_f64(c) } else { None })
            .collect()
    }

    fn to_poly(p: &IPoly) -> Poly {
        Poly::new(p.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
    }

    /// Rescaled to unit max-coefficient.
    fn to_unit_poly(p: &IPoly) -> Poly {
        let f = to_poly(p);
        f.scale(1.0 / f.max_abs_coeff())
    }

    fn trim(p: &mut IPoly) {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigInt::zero());
        }
    }

    fn is_zero(p: &IPoly) -> bool {
        p.iter().all(|x| x.is_zero())
    }

    fn is_constant(p: &IPoly) -> bool {
        p.len() == 1
    }

    /// Divides out the positive content, keeping signs.
    fn reduce(mut p: IPoly) -> IPoly {
        trim(&mut p);
        let c = p.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if c > BigInt::one() {
            p.iter_mut().for_each(|x| *x /= &c);
        }
        p
    }

    /// A positive multiple of `rem(a, b)`, content removed.
    fn prem(a: &IPoly, b: &IPoly) -> IPoly {
        let mut r = a.clone();
        let db = b.len() - 1;
        let lb = b.last().unwrap();
        let scale = lb.abs();
        let sign = lb.signum();
        while r.len() > db && !is_zero(&r) {
            let f = r.last().unwrap() * &sign;
            let shift = r.len() - 1 - db;
            for x in r.iter_mut() {
                *x *= &scale;
            }
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &f * bj;
            }
            r.pop();
            trim(&mut r);
        }
        reduce(r)
    }

    /// Exact quotient `a / b`; `None` if `b` does not divide `a` over the integers.
    fn divide(a: &IPoly, b: &IPoly) -> Option<IPoly> {
        if is_zero(a) {
            return Some(alloc::vec![BigInt::zero()]);
        }
        let db = b.len() - 1;
        if a.len() <= db {
            return None;
        }
        let lb = b.last().unwrap();
        let mut r = a.clone();
        let mut q = alloc::vec![BigInt::zero(); a.len() - db];
        for i in (0..q.len()).rev() {
            let (f, rest) = r[i + db].div_rem(lb);
            if !rest.is_zero() {
                return None;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &f * bj;
            }
            q[i] = f;
        }
        if is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }

    fn derivative(p: &IPoly) -> IPoly {
        if p.len() < 2 {
            return alloc::vec![BigInt::zero()];
        }
        p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
    }

    fn sub(a: &IPoly, b: &IPoly) -> IPoly {
        let zero = BigInt::zero();
        let n = a.len().max(b.len());
        let mut out: IPoly = (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
        trim(&mut out);
        out
    }

    /// Sturm chain `p, p', −rem, …` up to positive factors; the last member
    /// is `gcd(p, p')`.
    fn chain(ip: &IPoly) -> Vec<IPoly> {
        let mut seq = alloc::vec![reduce(ip.clone()), reduce(derivative(ip))];
        while !is_constant(seq.last().unwrap()) {
            let n = seq.len();
            let r = prem(&seq[n - 2], &seq[n - 1]);
            if is_zero(&r) {
                break;
            }
            seq.push(r.into_iter().map(|x| -x).collect());
        }
        seq
    }

    /// Primitive gcd; `gcd(a, 0) = a`.
    fn gcd_poly(a: &IPoly, b: &IPoly) -> IPoly {
        let (mut a, mut b) = (reduce(a.clone()), reduce(b.clone()));
        if is_zero(&b) {
            return a;
        }
        while !is_constant(&b) {
            let r = prem(&a, &b);
            if is_zero(&r) {
                return b;
            }
            a = b;
            b = r;
        }
        alloc::vec![BigInt::one()]
    }

    pub(super) fn sturm_sequence(p: &Poly) -> Option<Vec<Poly>> {
        let ip = from_poly(p)?;
        Some(chain(&ip).iter().map(to_unit_poly).collect())
    }

    pub(super) fn squarefree_part(p: &Poly) -> Option<Poly> {
        let ip = from_poly(p)?;
        let g = gcd_poly(&ip, &derivative(&ip));
        Some(to_unit_poly(&divide(&ip, &g)?))
    }

    /// Yun's decomposition `p = c · Π a_i^i`; only factors of positive degree
    /// are returned.
    pub(super) fn factor_by_multiplicity(p: &Poly) -> Option<Vec<(Poly, usize)>> {
        let ip = from_poly(p)?;
        let dp = derivative(&ip);
        let g = gcd_poly(&ip, &dp);
        let mut c = divide(&ip, &g)?;
        let mut d = sub(&divide(&dp, &g)?, &derivative(&c));
        let mut out = Vec::new();
        let mut i = 1;
        while !is_constant(&c) {
            let a = gcd_poly(&c, &d);
            c = divide(&c, &a)?;
            d = sub(&divide(&d, &a)?, &derivative(&c));
            if !is_constant(&a) {
                out.push((to_unit_poly(&a), i));
            }
            i += 1;
        }
        Some(out)
    }
}

/// Narrows an isolating interval of a simple root of `q`.
fn refine(q: &Poly, seq: &[Poly], mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = sign(q.eval(a));
    let fb = sign(q.eval(b));
    if fa != 0 && fb != 0 && fa != fb {
        // bisect to full precision; `tol` only bounds the fallback below
        loop {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = sign(q.eval(m));
            if fm == 0 {
                return m;
            }
            if fm == fa {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    }
    // endpoint sign unusable: fall back to Sturm counts
    while b - a >= tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if q.eval(m) == 0.0 {
            return m;
        }
        if sturm_count(seq, a, m) >= 1 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// `Σ |c_i| max(1, |x|)^i`: size of the terms summed when evaluating `p`
/// near `x`.
fn eval_scale(p: &Poly, x: f64) -> f64 {
    let r = f64::max(1.0, abs(x));
    p.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + abs(*c))
}

/// Smallest `m` with `|P^(m)(r)|` above `mult_tol` times the evaluation scale
/// of `P^(m)` near `r`.
fn multiplicity(p: &Poly, r: f64, mult_tol: f64) -> usize {
    let mut d = p.clone();
    for m in 1..=p.degree() {
        d = d.derivative();
        if abs(d.eval(r)) > mult_tol * eval_scale(&d, r) {
            return m;
        }
    }
    p.degree()
}

/// `sign P(λ*+ε) − sign P(λ*−ε)`, read off at the ends of the isolating
/// interval. Cross-checked against the parity of the multiplicity.
pub fn sign_jump(p: &Poly, lambda_star: f64, root: &RealRoot) -> Result<i32> {
    let (a, b) = root.isolating_interval;
    let residual = abs(p.eval(lambda_star));
    if !(a < lambda_star && lambda_star < b) || residual > MULT_TOL * p.scale_at(lambda_star) {
        return Err(Error::NotARoot { lambda: lambda_star, residual });
    }
    let jump = sign(p.eval(b)) - sign(p.eval(a));
    if (jump == 0) != (root.multiplicity % 2 == 0) {
        return Err(Error::Inconsistent("sign-jump disagrees with multiplicity parity"));
    }
    Ok(jump)
}

/// Characteristic polynomial `λ ↦ det(L − λI)` by the Faddeev–LeVerrier
/// recurrence. Integer matrices of small size give exact coefficients.
pub fn char_poly(l: &Matrix) -> Result<Poly> {
    if !l.is_square() {
        return Err(Error::Dimension { expected: l.rows(), found: l.cols() });
    }
    let n = l.rows();
    if n == 0 {
        return Err(Error::DegenerateInput("empty matrix"));
    }
    // c[i] is the coefficient of λ^i in det(λI − L)
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = l.matmul(&m)?;
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        m = next;
        let lm = l.matmul(&m)?;
        c[n - k] = -lm.trace() / k as f64;
    }
    let flip = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(Poly::new(c.into_iter().map(|x| flip * x + 0.0).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(p: &Poly) -> Vec<(f64, usize)> {
        real_roots(p, ROOT_TOL).unwrap().into_iter().map(|r| (r.value, r.multiplicity)).collect()
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(Poly::new(vec![1.0, 2.0, 0.0, 0.0]).degree(), 1);
        assert!(Poly::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(Poly::new(vec![1e-300, 0.0]).degree(), 0);
    }

    #[test]
    fn horner_is_deterministic() {
        let p = Poly::new(vec![0.1, -0.7, 0.3, 1.9]);
        let x = 0.123456789;
        assert_eq!(p.eval(x).to_bits(), p.eval(x).to_bits());
        let expect = 0.1 - 0.7 * x + 0.3 * x * x + 1.9 * x * x * x;
        assert!((p.eval(x) - expect).abs() < 1e-15);
    }

    #[test]
    fn char_poly_examples() {
        let l = Matrix::from_rows(&[[1.0, 0.0], [0.0, -1.0]]);
        assert_eq!(char_poly(&l).unwrap().coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!(char_poly(&Matrix::identity(2)).unwrap().coeffs(), &[1.0, -2.0, 1.0]);
        let l = Matrix::from_rows(&[[0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(char_poly(&l).unwrap().coeffs(), &[0.0, 0.0, 2.0, -1.0]);
        assert!(matches!(char_poly(&Matrix::zeros(2, 3)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn leading_coefficient_sign() {
        for k in 1..=6 {
            let p = char_poly(&Matrix::identity(k)).unwrap();
            assert_eq!(p.leading(), if k % 2 == 0 { 1.0 } else { -1.0 });
        }
    }

    #[test]
    fn roots_simple() {
        assert_eq!(roots_of(&Poly::new(vec![-1.0, 0.0, 1.0])), vec![(-1.0, 1), (1.0, 1)]);
    }

    #[test]
    fn roots_with_multiplicity() {
        let p = Poly::new(vec![0.0, 0.0, 2.0, -1.0]);
        let r = roots_of(&p);
        assert_eq!(r.len(), 2);
        assert!(r[0].0.abs() < 1e-12 && r[0].1 == 2, "{r:?}");
        assert!((r[1].0 - 2.0).abs() < 1e-12 && r[1].1 == 1);

        let cube = Poly::new(vec![1.0, -3.0, 3.0, -1.0]);
        let r = roots_of(&cube);
        assert_eq!(r.len(), 1);
        assert!((r[0].0 - 1.0).abs() < 1e-12);
        assert_eq!(r[0].1, 3);
    }

    #[test]
    fn roots_errors_and_constants() {
        assert!(matches!(real_roots(&Poly::zero(), ROOT_TOL), Err(Error::DegenerateInput(_))));
        assert!(real_roots(&Poly::constant(3.0), ROOT_TOL).unwrap().is_empty());
        // λ² + 1 has no real roots
        assert!(real_roots(&Poly::new(vec![1.0, 0.0, 1.0]), ROOT_TOL).unwrap().is_empty());
    }

    #[test]
    fn isolating_intervals_are_disjoint() {
        let p = Poly::from_roots(&[-3.0, -1.0, -1.0, 0.5, 2.0, 2.0, 2.0]);
        let roots = real_roots(&p, ROOT_TOL).unwrap();
        assert_eq!(roots.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![1, 2, 1, 3]);
        for w in roots.windows(2) {
            assert!(w[0].isolating_interval.1 < w[1].isolating_interval.0);
        }
        for r in &roots {
            assert!(r.isolating_interval.0 < r.value && r.value < r.isolating_interval.1);
        }
    }

    #[test]
    fn sign_jumps() {
        let p = Poly::new(vec![-1.0, 0.0, 1.0]);
        let roots = real_roots(&p, ROOT_TOL).unwrap();
        assert_eq!(sign_jump(&p, 1.0, &roots[1]).unwrap(), 2);
        assert_eq!(sign_jump(&p, -1.0, &roots[0]).unwrap(), -2);

        let p = Poly::new(vec![0.0, 0.0, 2.0, -1.0]);
        let roots = real_roots(&p, ROOT_TOL).unwrap();
        assert_eq!(sign_jump(&p, 0.0, &roots[0]).unwrap(), 0);

        let p = Poly::new(vec![1.0, -3.0, 3.0, -1.0]);
        let roots = real_roots(&p, ROOT_TOL).unwrap();
        assert_eq!(sign_jump(&p, 1.0, &roots[0]).unwrap(), -2);
    }

    #[test]
    fn sign_jump_rejects_non_root() {
        let p = Poly::new(vec![-1.0, 0.0, 1.0]);
        let roots = real_roots(&p, ROOT_TOL).unwrap();
        assert!(matches!(sign_jump(&p, 1.0005, &roots[1]), Err(Error::NotARoot { .. })));
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        let p = Poly::from_roots(&[-2.0, 1.0, 1.0, 3.0]);
        let seq = sturm_sequence(&p);
        let b = p.cauchy_bound();
        assert_eq!(sturm_count(&seq, -b, b), 3);
    }
}
