use std::f64::consts::PI;

use holopath_core::dynamics::{evolve_operators, propagate_lindblad, LindbladOptions, TimeGrid};
use holopath_core::metrics::*;
use holopath_core::models::{cp_target, lambda_collapse_ops, LambdaModel};
use holopath_core::pathsynth::{synthesize, target_unitary, EnvelopeKind, GateSpec, PathSpec};
use holopath_core::qcore::{pauli, CMatrix, QuantumState};
use holopath_core::C64;

#[test]
fn identity_channel_against_identity_target() {
    let ch = ChannelImages::from_unitary(&CMatrix::identity(2), &[0, 1]).unwrap();
    let f = single_qubit_gate_fidelity(&ch, &CMatrix::identity(2), 1000).unwrap();
    assert!((f.value - 1.0).abs() < 1e-14);
    assert_eq!(f.n_samples, 1000);
    let ch4 = ChannelImages::from_unitary(&CMatrix::identity(4), &[0, 1, 2, 3]).unwrap();
    assert!((two_qubit_gate_fidelity(&ch4, &CMatrix::identity(4), 100).unwrap().value - 1.0).abs() < 1e-14);
}

#[test]
fn wrong_cp_phase_matches_brute_force() {
    let n = 100;
    let d = cp_target(PI / 4.0).diag();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (2.0 * PI * i as f64 / n as f64, 2.0 * PI * j as f64 / n as f64);
            let x = [a.cos() * b.cos(), a.cos() * b.sin(), a.sin() * b.cos(), a.sin() * b.sin()];
            let amp: C64 = (0..4).map(|k| d[k] * x[k] * x[k]).sum();
            sum += amp.norm_sqr();
        }
    }
    let brute = sum / (n * n) as f64;
    let ch = ChannelImages::from_unitary(&cp_target(0.0), &[0, 1, 2, 3]).unwrap();
    let f = two_qubit_gate_fidelity(&ch, &cp_target(PI / 4.0), n).unwrap();
    assert!((f.value - brute).abs() < 1e-12);
    assert!(f.value < 1.0);
}

#[test]
fn rotation_error_matches_closed_form() {
    // ⟨x|Rz(a)|x⟩ = cos(a/2) − i sin(a/2) cos 2θ; the average of its
    // modulus squared is 1 − sin²(a/2)/2.
    let a = 0.3f64;
    let u = CMatrix::from_diag(&[C64::from_polar(1.0, -a / 2.0), C64::from_polar(1.0, a / 2.0)]);
    let ch = ChannelImages::from_unitary(&u, &[0, 1]).unwrap();
    let f = single_qubit_gate_fidelity(&ch, &CMatrix::identity(2), 1000).unwrap();
    assert!((f.value - (1.0 - (a / 2.0).sin().powi(2) / 2.0)).abs() < 1e-12);
}

#[test]
fn linear_and_direct_averages_agree() {
    let gate = GateSpec::ry(PI / 4.0);
    let s = synthesize(&gate, &PathSpec::new(0.4 * PI), 1.0, EnvelopeKind::Sin2).unwrap();
    let grid = TimeGrid::over(&s, 2000).unwrap();
    let m = LambdaModel::new(s).with_errors(0.05, -0.03);
    let noise = lambda_collapse_ops(1.0).unwrap();
    let opts = LindbladOptions::default();
    let ch = ChannelImages::from_batch(3, &[0, 1], |ops| evolve_operators(|t| m.hamiltonian(t), &noise, ops, &grid, &opts))
        .unwrap();
    let target = target_unitary(&gate);
    let fast = single_qubit_gate_fidelity(&ch, &target, 64).unwrap();
    let slow = single_qubit_gate_fidelity_with(
        |psi| {
            let st = QuantumState::vector(psi, None)?;
            Ok(propagate_lindblad(|t| m.hamiltonian(t), &noise, &st, &grid, &opts)?.final_state().data().clone())
        },
        &[0, 1],
        3,
        &target,
        64,
    )
    .unwrap();
    assert!((fast.value - slow.value).abs() < 1e-12);
}

#[test]
fn state_fidelity_and_traces() {
    let psi = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let rho = CMatrix::from_real_diag(&[0.75, 0.25]);
    assert!((state_fidelity(&psi, &rho).unwrap().value - 0.75).abs() < 1e-15);
    let h = pauli::x().scale_re(0.5);
    let st = QuantumState::basis(2, 0, Some(vec!["g".into(), "e".into()])).unwrap();
    let opts = LindbladOptions { record_every: 10, ..Default::default() };
    let noise = holopath_core::models::NoiseModel::none();
    let traj = propagate_lindblad(|_| h.clone(), &noise, &st, &TimeGrid::new(0.0, PI, 100).unwrap(), &opts).unwrap();
    let pops = population_trace(&traj, &["e"]).unwrap();
    assert!((pops[0].last().unwrap() - 1.0).abs() < 1e-9);
    assert!(population_trace(&traj, &["x"]).is_err());
}
