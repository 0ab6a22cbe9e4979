use std::f64::consts::PI;

use holopath_core::dynamics::{holonomy_accumulators, path_reconstruct, propagate_unitary, TimeGrid};
use holopath_core::models::LambdaModel;
use holopath_core::pathsynth::{synthesize, target_unitary, EnvelopeKind, GateSpec, PathSpec, PulseSchedule};
use holopath_core::qcore::unitary_distance_upto_phase;
use proptest::prelude::*;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn schedule(gate: &GateSpec, chi: f64, kind: EnvelopeKind) -> PulseSchedule {
    synthesize(gate, &PathSpec::new(chi), 1.0, kind).unwrap()
}

fn quadrature_area(s: &PulseSchedule) -> f64 {
    // Integrate each segment separately: Ω(t) has kinks at the boundaries.
    let b = [0.0, s.tau1, s.tau2, s.tau];
    (0..3).filter(|&k| b[k + 1] > b[k]).map(|k| simpson(|t| s.omega(t), b[k], b[k + 1], 4000)).sum::<f64>() / 2.0
}

#[test]
fn cli_example_areas() {
    let s = schedule(&GateSpec::rx(PI / 2.0), 0.25 * PI, EnvelopeKind::Sin2);
    let expected = 0.25 * PI + PI / 2.0 / (PI / 8.0).tan();
    assert!((s.pulse_area() - expected).abs() < 1e-12);
    assert!((expected - 4.5776).abs() < 1e-4);
    let z = schedule(&GateSpec::rz(0.0), 0.3 * PI, EnvelopeKind::Sin2);
    assert_eq!(z.tau1, z.tau2);
}

#[test]
fn single_loop_is_a_pi_pulse() {
    for g in [0.0, 0.1, 0.7, PI / 2.0] {
        let s = schedule(&GateSpec::rx(g), PI, EnvelopeKind::Sin2);
        assert!((s.pulse_area() - PI).abs() < 1e-12);
    }
}

#[test]
fn synthesized_gates_match_targets() {
    for gate in [GateSpec::rx(PI / 2.0), GateSpec::ry(PI / 4.0), GateSpec::rz(PI / 3.0)] {
        for chi in [0.2, 0.25, 0.4, 0.6, 0.75, 1.0] {
            let s = schedule(&gate, chi * PI, EnvelopeKind::Sin2);
            let m = LambdaModel::new(s.clone());
            let u = propagate_unitary(|t| m.hamiltonian(t), &TimeGrid::over(&s, 4000).unwrap()).unwrap();
            let d = unitary_distance_upto_phase(&u.submatrix(&[0, 1], &[0, 1]), &target_unitary(&gate)).unwrap();
            assert!(d < 1e-3, "χ = {chi}π: distance {d}");
            assert!(u[(2, 0)].norm_sqr() + u[(2, 1)].norm_sqr() < 1e-3);
        }
    }
}

#[test]
fn path_returns_to_north_pole() {
    for chi in [0.2, 0.25, 0.4, 0.6, 0.75, 1.0] {
        let s = schedule(&GateSpec::rx(PI / 2.0), chi * PI, EnvelopeKind::Sin2);
        let p = path_reconstruct(&s, 4000).unwrap();
        assert!(p.chi.last().unwrap().abs() < 1e-3);
        assert!((p.max_chi() - chi * PI).abs() < 1e-3);
    }
}

#[test]
fn single_loop_is_purely_geometric() {
    let gate = GateSpec::ry(PI / 4.0);
    let s = schedule(&gate, PI, EnvelopeKind::Sin2);
    let m = LambdaModel::new(s.clone());
    let p = path_reconstruct(&s, 4000).unwrap();
    let (a, k) = holonomy_accumulators(&p, &gate.bright_state(), |t| m.hamiltonian(t)).unwrap();
    assert!(k.abs() <= 1e-6 * gate.gamma);
    assert!((a - gate.gamma).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn area_law(chi in 0.05f64..=PI, gamma in -PI..PI, flat in any::<bool>()) {
        let kind = if flat { EnvelopeKind::Flat } else { EnvelopeKind::Sin2 };
        let s = schedule(&GateSpec::rx(gamma), chi, kind);
        let closed = chi + gamma.abs() / (chi / 2.0).tan();
        prop_assert!((s.pulse_area() - closed).abs() < 1e-9 * closed.max(1.0));
        prop_assert!((quadrature_area(&s) - closed).abs() < 1e-9 * closed.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn holonomy_ratio_law(chi in 0.15f64..0.98, gamma in 0.1f64..1.5, neg in any::<bool>(), theta in 0.0f64..PI, phi in -PI..PI) {
        let chi = chi * PI;
        prop_assume!((chi - PI / 2.0).abs() > 0.05);
        let gate = GateSpec::new(theta, phi, if neg { -gamma } else { gamma }).unwrap();
        let s = schedule(&gate, chi, EnvelopeKind::Sin2);
        let m = LambdaModel::new(s.clone());
        let p = path_reconstruct(&s, 4000).unwrap();
        let (a, k) = holonomy_accumulators(&p, &gate.bright_state(), |t| m.hamiltonian(t)).unwrap();
        let ratio = -(1.0 + 1.0 / chi.cos());
        prop_assert!((k / a - ratio).abs() < 1e-3 * ratio.abs().max(1.0), "K/A = {} vs {}", k / a, ratio);
        let total = a + k - gate.gamma;
        prop_assert!((total - (total / (2.0 * PI)).round() * 2.0 * PI).abs() < 1e-3);
    }
}
