//! Independent reference computations for the numerical kernels.

use holopath_core::dynamics::{evolve_operators, propagate_lindblad, propagate_unitary, LindbladOptions, TimeGrid};
use holopath_core::models::{lowering, Channel, NoiseModel};
use holopath_core::qcore::{expm, pauli, CMatrix, QuantumState};
use holopath_core::special::{bessel_j, j1, j1_inverse};
use holopath_core::C64;

fn taylor_expm(a: &CMatrix, terms: usize) -> CMatrix {
    let n = a.rows();
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..terms {
        term = (&term * a).scale_re(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

fn bessel_series(n: i32, x: f64) -> f64 {
    let mut total = 0.0;
    let mut fact_k = 1.0;
    for k in 0..40 {
        if k > 0 {
            fact_k *= k as f64;
        }
        let fact_kn: f64 = (1..=(k + n)).map(|v| v as f64).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign / (fact_k * fact_kn) * (x / 2.0).powi(2 * k + n);
    }
    total
}

#[test]
fn expm_matches_taylor_series() {
    let a = CMatrix::from_fn(4, 4, |r, c| C64::new(((r * 7 + c * 3) % 5) as f64 * 0.3 - 0.6, ((r + 2 * c) % 3) as f64 * 0.25 - 0.2));
    let d = &expm(&a).unwrap() - &taylor_expm(&a, 60);
    assert!(d.max_abs() < 1e-11, "{}", d.max_abs());
}

#[test]
fn expm_of_anti_hermitian_matches_taylor() {
    let h = &pauli::x().scale_re(0.7) + &pauli::z().scale_re(-1.3);
    let a = h.scale(C64::new(0.0, -1.0));
    let d = &expm(&a).unwrap() - &taylor_expm(&a, 60);
    assert!(d.max_abs() < 1e-12);
}

#[test]
fn bessel_matches_power_series() {
    for n in 0..4 {
        for &x in &[0.0, 0.3, 1.0, 1.7, 2.0, 3.5] {
            let (a, b) = (bessel_j(n, x), bessel_series(n, x));
            assert!((a - b).abs() < 1e-12, "J_{n}({x}): {a} vs {b}");
        }
    }
}

#[test]
fn jacobi_anger_expansion() {
    let beta = 1.7;
    for &x in &[0.0, 0.4, 1.9, -2.6] {
        let lhs = C64::from_polar(1.0, beta * f64::sin(x));
        let rhs: C64 = (-20..=20).map(|n| C64::from_polar(bessel_j(n, beta), n as f64 * x)).sum();
        assert!((lhs - rhs).norm() < 1e-12);
    }
}

#[test]
fn j1_inverse_on_rising_branch() {
    for &y in &[0.05, 0.3, 0.5, 0.58] {
        let x = j1_inverse(y).unwrap();
        assert!((j1(x) - y).abs() < 1e-12);
    }
    assert!(j1_inverse(0.6).is_err());
}

fn damping_setup(kappa: f64, omega: f64) -> (CMatrix, NoiseModel, QuantumState) {
    let h = pauli::z().scale_re(omega / 2.0);
    let noise = NoiseModel::new(vec![Channel::new("decay", lowering(2), kappa).unwrap()]).unwrap();
    let amp = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
    (h, noise, QuantumState::vector(&amp, None).unwrap())
}

#[test]
fn amplitude_damping_closed_form() {
    let (kappa, omega, t) = (0.3, 2.0, 5.0);
    let (h, noise, psi) = damping_setup(kappa, omega);
    let rho0 = psi.to_density_matrix();
    let traj = propagate_lindblad(|_| h.clone(), &noise, &psi, &TimeGrid::new(0.0, t, 2000).unwrap(), &LindbladOptions::default())
        .unwrap();
    let rho = traj.final_state().data();
    let p1 = rho0[(1, 1)].re * (-kappa * t).exp();
    let coh = rho0[(0, 1)] * C64::from_polar((-kappa * t / 2.0).exp(), -omega * t);
    assert!((rho[(1, 1)].re - p1).abs() < 1e-10);
    assert!((rho[(0, 0)].re - (1.0 - p1)).abs() < 1e-10);
    assert!((rho[(0, 1)] - coh).norm() < 1e-10);
}

#[test]
fn rk4_is_fourth_order() {
    let kappa = 0.4;
    let h = &pauli::x().scale_re(1.1) + &pauli::z().scale_re(0.3);
    let noise = NoiseModel::new(vec![Channel::new("decay", lowering(2), kappa).unwrap()]).unwrap();
    let psi = QuantumState::basis(2, 1, None).unwrap();
    let hf = |t: f64| h.scale_re(1.0 + 0.5 * f64::sin(3.0 * t));
    let run = |n| {
        propagate_lindblad(hf, &noise, &psi, &TimeGrid::new(0.0, 4.0, n).unwrap(), &LindbladOptions::default())
            .unwrap()
            .final_state()
            .data()
            .clone()
    };
    let (a, b, c) = (run(40), run(80), run(160));
    let ratio = (&a - &b).max_abs() / (&b - &c).max_abs();
    assert!((ratio - 16.0).abs() < 2.0, "ratio {ratio}");
}

/// Drive switching between two constant Hamiltonians at `t_b`, which falls
/// strictly inside a grid step; the exact propagator is a product of two
/// exponentials.
#[test]
fn discontinuous_drive_with_break() {
    let (h1, h2) = (pauli::x().scale_re(0.9), &pauli::y().scale_re(-0.7) + &pauli::z().scale_re(0.4));
    let (t_b, t_end) = (1.234_567, 3.0);
    let hf = |t: f64| if t < t_b { h1.clone() } else { h2.clone() };
    let minus_i = |h: &CMatrix, dt: f64| expm(&h.scale(C64::new(0.0, -dt))).unwrap();
    let exact = &minus_i(&h2, t_end - t_b) * &minus_i(&h1, t_b);
    let grid = TimeGrid::new(0.0, t_end, 37).unwrap().with_breaks(&[t_b]).unwrap();
    let u = propagate_unitary(hf, &grid).unwrap();
    assert!((&u - &exact).max_abs() < 1e-12);

    let rho0 = QuantumState::basis(2, 0, None).unwrap().to_density_matrix();
    let want = &(&exact * &rho0) * &exact.dagger();
    let noiseless = NoiseModel::default();
    let opts = LindbladOptions::default();
    let with_break = evolve_operators(hf, &noiseless, &[rho0.clone()], &grid, &opts).unwrap();
    let plain = evolve_operators(hf, &noiseless, &[rho0], &TimeGrid::new(0.0, t_end, 37).unwrap(), &opts).unwrap();
    let (e_break, e_plain) = ((&with_break[0] - &want).max_abs(), (&plain[0] - &want).max_abs());
    assert!(e_break < 1e-6, "{e_break}");
    assert!(e_plain > 100.0 * e_break, "{e_plain} vs {e_break}");
}
