//! Property tests across modules.

use fqlab::cone::{Direction, ProperCone};
use fqlab::crystal::{find_real_roots, recover_coefficient, restrict_to_line, ExponentialPolynomial};
use fqlab::intmat::IntMatrix;
use fqlab::laurent::samples::quadric;
use fqlab::laurent::LaurentPoly;
use fqlab::lycheck::ly_falsify;
use fqlab::surface::spectrum_table;
use fqlab::Complex64;
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |d| IntMatrix::new(r, c, d).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n * n).prop_map(move |d| IntMatrix::new(n, n, d).unwrap())
    })
}

fn invertible2() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_map(|d| IntMatrix::new(2, 2, d).unwrap())
        .prop_filter("nonsingular", |m| m.determinant().unwrap() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_invariants(a in matrix(5, 5)) {
        let snf = a.smith_normal_form().unwrap();
        prop_assert!(snf.verify(&a).unwrap());
        prop_assert_eq!(snf.s.mul(&snf.d).unwrap().mul(&snf.t).unwrap(), a.clone());
        prop_assert_eq!(snf.s.determinant().unwrap().abs(), 1);
        prop_assert_eq!(snf.t.determinant().unwrap().abs(), 1);
        prop_assert_eq!(snf.t.mul(&snf.t_inv).unwrap(), IntMatrix::identity(a.cols()));
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[0] >= 0 && (w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)));
        }
    }

    #[test]
    fn determinant_is_preserved_by_snf(a in square(5)) {
        let snf = a.smith_normal_form().unwrap();
        let prod = snf.s.mul(&snf.d).unwrap().mul(&snf.t).unwrap();
        prop_assert_eq!(prod.determinant().unwrap(), a.determinant().unwrap());
        let det_d: i64 = snf.invariant_factors().iter().product();
        prop_assert_eq!(det_d.abs(), a.determinant().unwrap().abs());
    }

    #[test]
    fn adjugate_identity(a in square(4)) {
        let d = a.determinant().unwrap();
        let prod = a.mul(&a.adjugate().unwrap()).unwrap();
        let n = a.rows();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(prod.get(i, j), if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn pullback_certificate_identity(a in matrix(4, 5)) {
        prop_assume!(a.rows() <= a.cols() && a.rank().unwrap() == a.rows());
        let cert = a.pullback_certificate().unwrap();
        prop_assert!(cert.verify(&a).unwrap());
        prop_assert!(cert.b.determinant().unwrap().abs() >= 1);
    }

    #[test]
    fn pullback_undoes_substitution_up_to_powers(a in invertible2(), c in -0.9f64..0.9) {
        // q(z^A) pulled back by B equals q(z^d), i.e. exponents scale by d
        let q = quadric(c);
        let cert = a.pullback_certificate().unwrap();
        let back = q.monomial_substitute(&a).unwrap().monomial_substitute(&cert.b).unwrap();
        let powered = q.monomial_substitute(&IntMatrix::diagonal(&[cert.d, cert.d])).unwrap();
        prop_assert_eq!(back, powered);
    }

    #[test]
    fn base_times_ones_is_dual_interior(a in invertible2()) {
        let cone = ProperCone::new(a.clone()).unwrap();
        let ell = Direction::new(a.mul_vec_f64(&[1.0, 1.0])).unwrap();
        prop_assert!(cone.dual_interior_contains(&ell));
    }

    #[test]
    fn enumeration_symmetric_with_origin(a in invertible2(), w1 in 0.3f64..2.0, w2 in 0.3f64..2.0, r in 0.0f64..6.0) {
        let cone = ProperCone::new(a.clone()).unwrap();
        let ell = Direction::new(a.mul_vec_f64(&[w1, w2])).unwrap();
        let pts = cone.enumerate_truncated(&ell, r).unwrap();
        prop_assert!(pts.contains(&vec![0, 0]));
        for k in &pts {
            let neg: Vec<i64> = k.iter().map(|v| -v).collect();
            prop_assert!(pts.contains(&neg));
            prop_assert!(ell.dot(k).abs() <= r);
            prop_assert!(cone.contains(k) || cone.contains(&neg));
        }
        for w in pts.windows(2) {
            prop_assert!(ell.dot(&w[0]) <= ell.dot(&w[1]));
        }
    }

    #[test]
    fn every_root_is_a_zero(c in -0.9f64..0.9, lo in -20.0f64..20.0, len in 1.0f64..20.0) {
        let f = restrict_to_line(&quadric(c), &Direction::golden_pair()).unwrap();
        let roots = find_real_roots(&f, (lo, lo + len), 1e-10).unwrap();
        for (t, m) in roots.iter() {
            prop_assert!(m >= 1);
            prop_assert!(t >= lo - 1e-9 && t <= lo + len + 1e-9);
            prop_assert!(f.eval_real(t).norm() <= 1e-10 * f.scale());
        }
        if let Some(g) = roots.min_gap {
            prop_assert!(g > 0.0);
        }
    }

    #[test]
    fn root_finding_is_scale_invariant(c in -0.9f64..0.9, s in 1e-3f64..1e3) {
        let f = restrict_to_line(&quadric(c), &Direction::golden_pair()).unwrap();
        let g = ExponentialPolynomial::new(
            f.freqs().to_vec(),
            f.coeffs().iter().map(|a| a * Complex64::new(0.0, s)).collect(),
        ).unwrap();
        let a = find_real_roots(&f, (0.0, 10.0), 1e-10).unwrap();
        let b = find_real_roots(&g, (0.0, 10.0), 1e-10).unwrap();
        prop_assert_eq!(a.roots.len(), b.roots.len());
        for (x, y) in a.roots.iter().zip(&b.roots) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn recovery_is_conjugate_symmetric(c in -0.9f64..0.9, xi in 0.0f64..4.0) {
        let f = restrict_to_line(&quadric(c), &Direction::golden_pair()).unwrap();
        let roots = find_real_roots(&f, (-50.0, 50.0), 1e-10).unwrap();
        let a = recover_coefficient(&roots, xi).unwrap();
        let b = recover_coefficient(&roots, -xi).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn spectrum_table_invariants(c in -0.8f64..0.8, l2 in 1.1f64..3.0) {
        let ell = Direction::new(vec![1.0, l2]).unwrap();
        let t = spectrum_table(&quadric(c), &ell, 4, 128).unwrap();
        prop_assert!(t.check_invariants(), "{:?}", t.invariant_defects());
        // total mass equals the zero density λ_N − λ_0 = 1 + ℓ2
        prop_assert!((t.mass() - (1.0 + l2)).abs() < 1e-6);
    }

    #[test]
    fn lee_yang_quadrics_pass(c in -0.95f64..0.95, seed in 0u64..1000) {
        prop_assert!(ly_falsify(&quadric(c), 400, seed).unwrap().pass());
    }

    #[test]
    fn quadrics_with_large_parameter_fail(c in 1.2f64..4.0) {
        prop_assert!(!ly_falsify(&quadric(c), 2000, 1).unwrap().pass());
    }

    #[test]
    fn falsification_is_deterministic(seed in 0u64..1000) {
        let p = LaurentPoly::from_real_terms(2, &[(&[0, 0], 2.0), (&[1, 0], -1.0), (&[0, 1], -1.0)]).unwrap();
        prop_assert_eq!(ly_falsify(&p, 300, seed).unwrap(), ly_falsify(&p, 300, seed).unwrap());
    }
}
