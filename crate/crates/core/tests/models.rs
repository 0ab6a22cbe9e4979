use std::f64::consts::PI;

use holopath_core::dynamics::{evolve_operators, LindbladOptions, TimeGrid};
use holopath_core::metrics::{two_qubit_gate_fidelity, ChannelImages};
use holopath_core::models::*;
use holopath_core::pathsynth::{synthesize, EnvelopeKind, GateSpec, PathSpec};
use holopath_core::qcore::{CMatrix, QuantumState};
use holopath_core::sweeps::sims::{ScMode, ScSim};
use holopath_core::C64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_hamiltonian_is_hermitian(
        theta in 0.0f64..PI, phi in -PI..PI, gamma in -PI..PI,
        chi in 0.1f64..PI, frac in 0.0f64..=1.0, d in -0.1f64..0.1, e in -0.1f64..0.1,
    ) {
        let gate = GateSpec::new(theta, phi, gamma).unwrap();
        let s = synthesize(&gate, &PathSpec::new(chi), 1.0, EnvelopeKind::Sin2).unwrap();
        let m = LambdaModel::new(s.clone()).with_errors(d, e);
        let h = lambda_hamiltonian(&m, frac * s.tau).unwrap();
        prop_assert!(h.hermitian_defect() < 1e-14);
    }

    #[test]
    fn chain_conserves_excitations(g in 1.0f64..50.0, beta in 0.1f64..1.8, nu in 100.0f64..3000.0, t in 0.0f64..0.2, alpha in 0.0f64..2000.0) {
        let sites = vec![Site::new("a", 0.0, alpha, 3), Site::new("b", nu, 0.0, 3), Site::new("c", 0.0, alpha, 3)];
        let couplings = vec![Coupling { a: 0, b: 1, g }, Coupling { a: 2, b: 1, g }];
        let drives = vec![DriveSpec { site: 0, beta, nu, phase: PhaseProgram::Constant(0.3) }];
        let chain = TransmonChainModel::new(sites, couplings, drives).unwrap();
        let h = chain.hamiltonian(t);
        prop_assert!(h.hermitian_defect() < 1e-12);
        prop_assert!(h.commutator(&chain.excitation_operator()).max_abs() < 1e-12);
    }
}

#[test]
fn lambda_hamiltonian_rejects_out_of_range_times() {
    let s = synthesize(&GateSpec::rx(1.0), &PathSpec::new(1.0), 1.0, EnvelopeKind::Sin2).unwrap();
    let tau = s.tau;
    let m = LambdaModel::new(s);
    assert!(lambda_hamiltonian(&m, -0.1).is_err());
    assert!(lambda_hamiltonian(&m, tau * 1.01).is_err());
    assert!(lambda_hamiltonian(&m, tau).is_ok());
}

#[test]
fn collapse_operators_in_sectors() {
    let q = SingleLogicalQubit::new(10.0 * MHZ, 1.7, 390.0 * MHZ, ScConfig::Cavity).unwrap();
    let cav = q.noise(1.0, 1.0).unwrap();
    assert!(cav.channels[0].is_loss_only());
    assert!(!cav.channels[1].is_inert());
    let q3 = SingleLogicalQubit { config: ScConfig::ThreeTransmon, ..q };
    let three = q3.noise(1.0, 1.0).unwrap();
    assert!(three.channels[1].is_inert());
}

#[test]
fn effective_and_full_logical_qubit_agree() {
    let sim = ScSim::default();
    let gate = GateSpec::rx(PI / 2.0);
    let e = ScErrors::default();
    let full = sim.fidelity(&gate, 0.25 * PI, ScConfig::Cavity, ScMode::Full, &e).unwrap();
    let eff = sim.fidelity(&gate, 0.25 * PI, ScConfig::Cavity, ScMode::Effective, &e).unwrap();
    assert!((full - eff).abs() < 2e-3, "{full} vs {eff}");
}

#[test]
fn dfs_encoding_of_s2() {
    let l = QuantumState::basis(4, 2, None).unwrap();
    let p = dfs_encode(&l, Dfs::S2).unwrap();
    assert_eq!(p.dim(), 16);
    assert!((p.population(0b0110) - 1.0).abs() < 1e-15);
    assert_eq!(p.labels()[0b0110], "|0110⟩");
}

#[test]
fn cp_target_phases() {
    let t = cp_target(PI / 4.0);
    assert_eq!(t[(0, 0)], C64::new(1.0, 0.0));
    assert!((t[(3, 3)] - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-15);
}

fn two_qubit_f2(sys: &TwoLogicalQubit, steps: usize) -> f64 {
    let s = sys.schedule(PI / 4.0, &PathSpec::new(0.25 * PI)).unwrap();
    let noise = sys.noise(0.003 * MHZ, 0.003 * MHZ).unwrap();
    let grid = TimeGrid::over(&s, steps).unwrap();
    let ch = ChannelImages::from_batch(sys.dim(), &sys.embedding(), |ops| {
        evolve_operators(|t| sys.hamiltonian(&s, t), &noise, ops, &grid, &LindbladOptions::default())
    })
    .unwrap();
    two_qubit_gate_fidelity(&ch, &TwoLogicalQubit::logical_target(PI / 4.0), 50).unwrap().value
}

#[test]
fn sector_restriction_matches_larger_space() {
    let p = TwoQubitParams { g23: 8.0 * MHZ, beta3: 2.0, alpha2: 300.0 * MHZ, alpha3: 330.0 * MHZ, delta3: 700.0 * MHZ };
    let small = TwoLogicalQubit::new(p, TwoQubitMode::Full).unwrap();
    let big = TwoLogicalQubit::up_to_two_excitations(p, TwoQubitMode::Full).unwrap();
    assert_eq!((small.dim(), big.dim()), (10, 15));
    let (a, b) = (two_qubit_f2(&small, 4000), two_qubit_f2(&big, 4000));
    assert!((a - b).abs() < 1e-7, "{a} vs {b}");
}

#[test]
fn two_qubit_full_and_effective_resonant_term_agree() {
    let p = TwoQubitParams { g23: 8.0 * MHZ, beta3: 2.0, alpha2: 300.0 * MHZ, alpha3: 330.0 * MHZ, delta3: 700.0 * MHZ };
    let h = two_qubit_hamiltonian(&p, 0.4, 0.0, TwoQubitMode::Effective);
    let expected = C64::from_polar(p.g23 * holopath_core::special::j1(2.0) * 2f64.sqrt(), 0.4);
    // |11⟩ ↔ |02⟩ is (index 4, index 2)
    assert!((h[(4, 2)] - expected).norm() < 1e-12);
    assert!((p.omega_prime() - 2.0 * expected.norm()).abs() < 1e-9);
    let full = two_qubit_hamiltonian(&p, 0.4, 0.0, TwoQubitMode::Full);
    let diff: CMatrix = &full - &h;
    assert!(diff[(4, 2)].norm() < 1e-12);
}
