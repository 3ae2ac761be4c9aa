mod common;

use eigdeg_core::linalg::{
    det, image_restriction, nullspace, oriented_tangent_basis, rank, Matrix, Vector, RANK_TOL,
};
use eigdeg_core::poly::ROOT_TOL;
use eigdeg_core::spectral::{eigensets, interval_degree, ldegree_eigenpoint_oracle};
use eigdeg_core::Error;
use proptest::prelude::*;
use rand::Rng;

/// Orthonormal columns from Gram–Schmidt on a random matrix.
fn random_orthogonal(r: &mut rand::rngs::StdRng, k: usize) -> Matrix {
    let mut cols: Vec<Vector> = Vec::new();
    while cols.len() < k {
        let mut v = common::unit_vector(r, k);
        for c in &cols {
            let d = v.dot(c);
            v = v.axpy(-d, c);
        }
        if v.norm() > 0.1 {
            cols.push(v.normalized().unwrap());
        }
    }
    Matrix::from_columns(&cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twin_points_have_equal_oracle_degree(seed in any::<u64>()) {
        let l = &common::simple_spectrum_corpus(1, seed)[0];
        for es in eigensets(l, ROOT_TOL).unwrap() {
            let p = &es.representative_eigenpoints[0];
            let d = ldegree_eigenpoint_oracle(l, p).unwrap().value;
            prop_assert_eq!(d, ldegree_eigenpoint_oracle(l, &p.twin()).unwrap().value);
            prop_assert!(d == 1 || d == -1);
        }
    }

    #[test]
    fn interval_degree_telescopes(seed in any::<u64>(), xs in prop::collection::vec(-12.0f64..12.0, 3)) {
        let l = &common::simple_spectrum_corpus(1, seed)[0];
        let mut xs = xs;
        xs.sort_by(f64::total_cmp);
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assume!(a < b && b < c);
        let d = |x: f64, y: f64| interval_degree(l, x, y);
        match (d(a, c), d(a, b), d(b, c)) {
            (Ok(ac), Ok(ab), Ok(bc)) => prop_assert_eq!(ac, ab + bc),
            (r1, r2, r3) => {
                for r in [r1, r2, r3] {
                    let ok = matches!(r, Ok(_) | Err(Error::Admissibility { .. }));
                    prop_assert!(ok);
                }
            }
        }
    }

    #[test]
    fn tangent_basis_orientation_and_determinism(seed in any::<u64>(), k in 1usize..=6, lambda in -5.0f64..5.0) {
        let mut r = common::rng(seed);
        let v = common::unit_vector(&mut r, k);
        let b = oriented_tangent_basis(lambda, &v).unwrap();
        prop_assert_eq!(&b, &oriented_tangent_basis(lambda, &v).unwrap());
        prop_assert_eq!(b.w.len(), k - 1);
        let mut cols = vec![v.clone()];
        cols.extend(b.w.iter().cloned());
        let m = Matrix::from_columns(&cols);
        prop_assert!((det(&m).unwrap() - b.orientation as f64).abs() < 1e-10);
        for (i, w) in b.w.iter().enumerate() {
            prop_assert!(w.dot(&v).abs() < 1e-12);
            prop_assert!((w.norm() - 1.0).abs() < 1e-12);
            for u in &b.w[..i] {
                prop_assert!(w.dot(u).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nullspace_plus_rank_is_dimension(seed in any::<u64>(), k in 1usize..=6, rk in 0usize..=6) {
        let rk = rk.min(k);
        let mut r = common::rng(seed);
        let (u, v) = (random_orthogonal(&mut r, k), random_orthogonal(&mut r, k));
        let sigma: Vec<f64> = (0..k).map(|i| if i < rk { r.gen_range(0.5..5.0) } else { 0.0 }).collect();
        let m = u.matmul(&Matrix::diag(&sigma)).unwrap().matmul(&v.transpose()).unwrap();
        let ns = nullspace(&m, RANK_TOL);
        prop_assert_eq!(rank(&m, RANK_TOL), rk);
        prop_assert_eq!(ns.len() + rk, k);
        for z in &ns {
            prop_assert!(m.mul_vec(z).norm() < 1e-10);
        }
    }

    #[test]
    fn image_restriction_sign_is_basis_independent(seed in any::<u64>()) {
        let l = &common::simple_spectrum_corpus(1, seed)[0];
        let k = l.rows();
        let mut r = common::rng(seed ^ 0x5eed);
        let mut q = random_orthogonal(&mut r, k);
        if det(&q).unwrap() < 0.0 {
            let c0 = q.column(0).neg();
            let mut cols: Vec<Vector> = (0..k).map(|j| q.column(j)).collect();
            cols[0] = c0;
            q = Matrix::from_columns(&cols);
        }
        for es in eigensets(l, ROOT_TOL).unwrap() {
            let t = l.shift(es.lambda);
            let rotated = q.matmul(&t).unwrap().matmul(&q.transpose()).unwrap();
            let s1 = image_restriction(&t, RANK_TOL).unwrap().det_sign().unwrap();
            let s2 = image_restriction(&rotated, RANK_TOL).unwrap().det_sign().unwrap();
            prop_assert_eq!(s1, s2);
        }
    }
}
