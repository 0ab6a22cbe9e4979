use std::f64::consts::PI;

use holopath::config::{parse_angle, NamedGate, RunConfig};
use holopath::io::{config_hash, fmt_f64, sha256_hex, sweep_table, Table};
use holopath::ThreadPool;
use holopath_core::pathsynth::GateSpec;
use holopath_core::sweeps::{run_sweep, Stat, SweepAxis, SweepGrid, DEFAULT_BUDGET};
use holopath_core::Error;
use proptest::prelude::*;

fn smoke_grid() -> SweepGrid {
    let axes = vec![
        SweepAxis::new("chi", "rad", vec![0.5, 1.0]).unwrap(),
        SweepAxis::new("delta", "1", vec![-0.1, 0.0, 0.1]).unwrap(),
    ];
    SweepGrid::new(axes, "smoke", DEFAULT_BUDGET).unwrap()
}

#[test]
fn sweep_csv_round_trips_with_masked_cell() {
    let cell = |p: &[f64]| -> holopath_core::Result<f64> {
        if p[1] > 0.05 {
            Err(Error::InvalidParameter { name: "delta", reason: "out of range".into() })
        } else {
            Ok(p[0].sin() / 3.0 + p[1])
        }
    };
    let r = run_sweep(smoke_grid(), Stat::Fidelity, &ThreadPool::new(3), &cell).unwrap();
    assert_eq!(r.masked.len(), 2);
    let extra = vec![("gate [-]".to_string(), "rx".to_string())];
    let t = sweep_table(&[(extra, &r)]).unwrap();
    assert_eq!(t.headers, ["gate [-]", "chi [rad]", "delta [1]", "fidelity [1]"]);
    let back = Table::from_csv(&t.to_csv().unwrap()).unwrap();
    assert_eq!(back, t);
    let vals = back.column("fidelity").unwrap();
    for (a, b) in vals.iter().zip(&r.values) {
        assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
    }
    assert_eq!(vals.iter().filter(|v| v.is_nan()).count(), 2);
}

#[test]
fn thread_pool_matches_sequential() {
    let cell = |p: &[f64]| -> holopath_core::Result<f64> { Ok((p[0] * 7.0 + p[1]).cos()) };
    let a = run_sweep(smoke_grid(), Stat::Fidelity, &holopath_core::sweeps::Sequential, &cell).unwrap();
    let b = run_sweep(smoke_grid(), Stat::Fidelity, &ThreadPool::new(4), &cell).unwrap();
    assert_eq!(a.values, b.values);
}

#[test]
fn angles() {
    let cases = [("0.25pi", 0.25 * PI), ("-pi", -PI), ("pi/4", PI / 4.0), ("3pi/4", 0.75 * PI), ("π", PI), ("1.5", 1.5)];
    for (s, v) in cases {
        assert!((parse_angle(s).unwrap() - v).abs() < 1e-15, "{s}");
    }
    for bad in ["", "pi/0", "twopi", "1/x"] {
        assert!(parse_angle(bad).is_err(), "{bad}");
    }
}

#[test]
fn named_gates() {
    assert_eq!(NamedGate::parse("rx:0.5pi").unwrap().spec(), GateSpec::rx(PI / 2.0));
    assert_eq!(NamedGate::parse("RY:pi/4").unwrap().spec(), GateSpec::ry(PI / 4.0));
    assert_eq!(NamedGate::parse("rz:0").unwrap().spec(), GateSpec::rz(0.0));
    assert!(NamedGate::parse("rq:1").is_err());
    assert!(NamedGate::parse("rx").is_err());
}

#[test]
fn config_round_trip_and_validation() {
    let cfg = RunConfig::default();
    let back = RunConfig::from_toml(&cfg.to_toml()).unwrap();
    assert_eq!(back, cfg);
    let partial = RunConfig::from_toml("[path]\nchi = \"0.4pi\"\n").unwrap();
    assert!((partial.path.chi.0 - 0.4 * PI).abs() < 1e-15);
    let err = RunConfig::from_toml("[sweep]\nmap_error = [-0.2, 0.1, 5]\n").unwrap_err();
    assert_eq!(err.field, "sweep.map_error");
    assert!(RunConfig::from_toml("[unknown]\nx = 1\n").is_err());
}

#[test]
fn shipped_example_config_is_the_default() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/defaults.toml")).unwrap();
    assert_eq!(RunConfig::from_toml(&text).unwrap(), RunConfig::default());
}

#[test]
fn hashes() {
    assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    let a = config_hash(&RunConfig::default()).unwrap();
    let mut other = RunConfig::default();
    other.lambda.steps += 1;
    assert_ne!(a, config_hash(&other).unwrap());
    assert_eq!(a, config_hash(&RunConfig::default()).unwrap());
}

proptest! {
    #[test]
    fn floats_survive_csv(v in proptest::num::f64::ANY) {
        let mut t = Table::new(vec!["x [1]".into()]);
        t.push(vec![fmt_f64(v)]);
        let back = Table::from_csv(&t.to_csv().unwrap()).unwrap().column("x").unwrap()[0];
        prop_assert!(back.to_bits() == v.to_bits() || (v.is_nan() && back.is_nan()));
    }
}
