#![allow(dead_code)]

use eigdeg_core::perturbed::{NonlinearMap, Problem, Term};
use eigdeg_core::poly::{char_poly, real_roots, ROOT_TOL};
use eigdeg_core::{Matrix, Vector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn integer_matrix(rng: &mut StdRng, k: usize, bound: i32) -> Matrix {
    let data = (0..k * k).map(|_| rng.gen_range(-bound..=bound) as f64).collect();
    Matrix::new(k, k, data).unwrap()
}

/// Simple real spectrum with eigenvalues at least `1e-3` apart.
pub fn has_simple_real_spectrum(m: &Matrix) -> bool {
    let roots = match real_roots(&char_poly(m).unwrap(), ROOT_TOL) {
        Ok(r) => r,
        Err(_) => return false,
    };
    roots.len() == m.rows()
        && roots.iter().all(|r| r.multiplicity == 1)
        && roots.windows(2).all(|w| w[1].value - w[0].value > 1e-3)
}

/// Integer matrices with entries in `[−5, 5]`, `k` cycling through 2..=6,
/// kept when the spectrum is real and simple.
pub fn simple_spectrum_corpus(count: usize, seed: u64) -> Vec<Matrix> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut k = 2;
    while out.len() < count {
        let m = integer_matrix(&mut r, k, 5);
        if has_simple_real_spectrum(&m) {
            out.push(m);
            k = if k == 6 { 2 } else { k + 1 };
        }
    }
    out
}

pub fn unit_vector(rng: &mut StdRng, k: usize) -> Vector {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return Vector(v.iter().map(|x| x / n).collect());
        }
    }
}

pub fn random_polynomial_map(rng: &mut StdRng, k: usize) -> NonlinearMap {
    let comps = (0..k)
        .map(|_| {
            (0..rng.gen_range(1..=4))
                .map(|_| {
                    let exps = (0..k).map(|_| rng.gen_range(0..=3)).collect();
                    Term::new(rng.gen_range(-2.0..2.0), exps)
                })
                .collect()
        })
        .collect();
    NonlinearMap::Polynomial(comps)
}

/// A problem with a random perturbation of each kind in turn.
pub fn random_problem(rng: &mut StdRng, k: usize, kind: usize) -> Problem {
    let l = integer_matrix(rng, k, 5);
    let n = match kind % 3 {
        0 => NonlinearMap::Linear(integer_matrix(rng, k, 5)),
        1 => NonlinearMap::Constant(Vector((0..k).map(|_| rng.gen_range(-3.0..3.0)).collect())),
        _ => random_polynomial_map(rng, k),
    };
    Problem::new(l, n, None).unwrap()
}

/// Central finite differences of `Φ` in `(s, λ, v)`.
pub fn fd_jacobian(p: &Problem, s: f64, lambda: f64, v: &[f64], h: f64) -> Matrix {
    use eigdeg_core::perturbed::phi;
    let k = p.k;
    let mut x = vec![s, lambda];
    x.extend_from_slice(v);
    let mut j = Matrix::zeros(k, k + 2);
    for c in 0..k + 2 {
        let (mut xp, mut xm) = (x.clone(), x.clone());
        xp[c] += h;
        xm[c] -= h;
        let fp = phi(p, xp[0], xp[1], &xp[2..]).unwrap();
        let fm = phi(p, xm[0], xm[1], &xm[2..]).unwrap();
        for r in 0..k {
            j[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    j
}

/// `max|A − B| / max(1, max|A|)`.
pub fn relative_error(a: &Matrix, b: &Matrix) -> f64 {
    let diff = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    diff / a.max_abs().max(1.0)
}
