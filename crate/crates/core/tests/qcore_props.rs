use holopath_core::qcore::{eigh, expm, kron, unitary_distance_upto_phase, CMatrix};
use holopath_core::C64;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| CMatrix::from_rows(n, n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

fn hermitian(n: usize) -> impl Strategy<Value = CMatrix> {
    matrix(n).prop_map(|m| (&m + &m.dagger()).scale_re(0.5))
}

fn unitary(n: usize) -> impl Strategy<Value = CMatrix> {
    hermitian(n).prop_map(|h| expm(&h.scale(C64::new(0.0, -1.0))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), c in matrix(3)) {
        let l = kron(&kron(&a, &b), &c);
        let r = kron(&a, &kron(&b, &c));
        prop_assert!((&l - &r).max_abs() < 1e-12);
    }

    #[test]
    fn kron_is_bilinear(a in matrix(2), b in matrix(2), c in matrix(3), s in -2.0f64..2.0) {
        let l = kron(&(&a + &b.scale_re(s)), &c);
        let r = &kron(&a, &c) + &kron(&b, &c).scale_re(s);
        prop_assert!((&l - &r).max_abs() < 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let l = &kron(&a, &b) * &kron(&c, &d);
        let r = kron(&(&a * &c), &(&b * &d));
        prop_assert!((&l - &r).max_abs() < 1e-11);
    }

    #[test]
    fn expm_inverse(a in matrix(4)) {
        let p = &expm(&a).unwrap() * &expm(&a.scale_re(-1.0)).unwrap();
        prop_assert!((&p - &CMatrix::identity(4)).max_abs() < 1e-10);
    }

    #[test]
    fn expm_of_anti_hermitian_is_unitary(h in hermitian(5), t in -5.0f64..5.0) {
        let u = expm(&h.scale(C64::new(0.0, -t))).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn eigh_reconstructs(h in hermitian(5)) {
        let e = eigh(&h).unwrap();
        let back = e.apply_fn(|x| C64::new(x, 0.0));
        prop_assert!((&back - &h).max_abs() < 1e-11);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn distance_ignores_global_phase(u in unitary(3), phase in -3.0f64..3.0) {
        let v = u.scale(C64::from_polar(1.0, phase));
        prop_assert!(unitary_distance_upto_phase(&u, &v).unwrap() < 1e-12);
    }

    #[test]
    fn distance_is_invariant_under_conjugation(u in unitary(3), v in unitary(3), w in unitary(3)) {
        let d0 = unitary_distance_upto_phase(&u, &v).unwrap();
        let d1 = unitary_distance_upto_phase(&(&(&w * &u) * &w.dagger()), &(&(&w * &v) * &w.dagger())).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-11);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d0));
    }
}
