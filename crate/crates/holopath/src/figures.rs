//! Figure data: each id maps to one sweep (or trace) and one CSV.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::Result;
use holopath_core::models::{ScConfig, MHZ};
use holopath_core::pathsynth::GateSpec;
use holopath_core::sweeps::{self, CellExecutor, ErrorKind, SweepResult};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::io::{self, config_hash, fmt_f64, sweep_table, Masked, Sidecar, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    F2a,
    F2b,
    F2c,
    F2d,
    F2e,
    F2f,
    F2g,
    F2h,
    F3,
    F4a,
    F4b,
}

impl FigureId {
    pub const ALL: [FigureId; 11] = [
        FigureId::F2a,
        FigureId::F2b,
        FigureId::F2c,
        FigureId::F2d,
        FigureId::F2e,
        FigureId::F2f,
        FigureId::F2g,
        FigureId::F2h,
        FigureId::F3,
        FigureId::F4a,
        FigureId::F4b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::F2a => "2a",
            FigureId::F2b => "2b",
            FigureId::F2c => "2c",
            FigureId::F2d => "2d",
            FigureId::F2e => "2e",
            FigureId::F2f => "2f",
            FigureId::F2g => "2g",
            FigureId::F2h => "2h",
            FigureId::F3 => "3",
            FigureId::F4a => "4a",
            FigureId::F4b => "4b",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown figure id `{0}` (expected one of 2a–2h, 3, 4a, 4b)")]
pub struct UnknownFigure(pub String);

impl FromStr for FigureId {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches("fig").trim_start_matches('.').to_ascii_lowercase();
        FigureId::ALL.into_iter().find(|f| f.as_str() == t).ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

/// Knobs that are not part of the physics config.
#[derive(Clone, Copy, Debug, Default)]
pub struct FigureOptions {
    /// Add the transmon-auxiliary configuration to panel 3.
    pub overlay_3t: bool,
    /// Record wall-clock runtime in the sidecar (breaks byte-identity).
    pub timing: bool,
}

pub struct FigureOutput {
    pub id: FigureId,
    pub description: String,
    pub table: Table,
    pub masked: Vec<Masked>,
    pub summary: Map<String, Value>,
}

fn rx() -> GateSpec {
    GateSpec::rx(PI / 2.0)
}

fn ry() -> GateSpec {
    GateSpec::ry(PI / 4.0)
}

fn pis(r: &crate::config::Range) -> Vec<f64> {
    r.values().into_iter().map(|v| v * PI).collect()
}

fn masked_of(results: &[&SweepResult]) -> Vec<Masked> {
    let mut offset = 0;
    let mut out = Vec::new();
    for r in results {
        out.extend(r.masked.iter().map(|m| Masked { index: offset + m.index, reason: m.reason.clone() }));
        offset += r.values.len();
    }
    out
}

fn single(r: &SweepResult) -> Result<Table> {
    sweep_table(&[(Vec::new(), r)])
}

pub fn compute(id: FigureId, cfg: &RunConfig, exec: &dyn CellExecutor, opts: &FigureOptions) -> Result<FigureOutput> {
    let lam = cfg.lambda_sim();
    let sw = &cfg.sweep;
    let mut summary = Map::new();
    let (description, table, masked) = match id {
        FigureId::F2a => {
            let r = sweeps::pulse_area_map(&pis(&sw.area_chi_pi), &pis(&sw.area_gamma_pi), exec)?;
            let last = r.grid.axes[0].len() - 1;
            let sl = r.row(&[last]);
            summary.insert("chi_max_row_max_dev".into(), json!(sl.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max)));
            ("pulse area S/pi over (chi, gamma) with regions I/II/III".to_string(), single(&r)?, masked_of(&[&r]))
        }
        FigureId::F2b => {
            let mut t = Table::new(
                ["chi [rad]", "t [us]", "t/tau [1]", "P_0 [1]", "P_1 [1]", "P_a [1]"].iter().map(|s| s.to_string()).collect(),
            );
            let mut maxima = Map::new();
            for c in [0.2, 0.4, 0.6, 0.8, 1.0] {
                let chi = c * PI;
                let traj = lam.populations(&rx(), chi, sw.trace_samples)?;
                let tau = *traj.times.last().unwrap();
                let mut best = 0.0f64;
                for (time, st) in traj.times.iter().zip(&traj.states) {
                    let p = [st.population(0), st.population(1), st.population(2)];
                    best = best.max(p[2]);
                    t.push(vec![fmt_f64(chi), fmt_f64(*time), fmt_f64(time / tau), fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2])]);
                }
                maxima.insert(format!("{c}pi"), json!(best));
            }
            summary.insert("max_aux_population".into(), Value::Object(maxima));
            ("Lambda populations from the bright state, Rx(pi/2), five paths".to_string(), t, Vec::new())
        }
        FigureId::F2c | FigureId::F2d | FigureId::F2e | FigureId::F2f => {
            let (gate, kind, name) = match id {
                FigureId::F2c => (rx(), ErrorKind::Delta, "Rx(pi/2)"),
                FigureId::F2d => (rx(), ErrorKind::Epsilon, "Rx(pi/2)"),
                FigureId::F2e => (ry(), ErrorKind::Delta, "Ry(pi/4)"),
                _ => (ry(), ErrorKind::Epsilon, "Ry(pi/4)"),
            };
            let r = sweeps::fidelity_vs_chi_error(&gate, kind, &pis(&sw.map_chi_pi), &sw.map_error.values(), &lam, exec)?;
            let means: Vec<f64> = (0..r.grid.axes[0].len()).map(|i| holopath_core::num::pairwise_mean(&r.row(&[i]))).collect();
            summary.insert("mean_fidelity_per_chi".into(), json!(means));
            (format!("{name} fidelity over (chi, {})", kind.as_str()), single(&r)?, masked_of(&[&r]))
        }
        FigureId::F2g | FigureId::F2h => {
            let (gate, name) = if id == FigureId::F2g { (rx(), "Rx(pi/2)") } else { (ry(), "Ry(pi/4)") };
            let e = sw.surface_error.values();
            let ours = sweeps::infidelity_surface(&gate, 0.25 * PI, &e, &e, &lam, exec)?;
            let sl = sweeps::infidelity_surface(&gate, PI, &e, &e, &lam, exec)?;
            let below = ours.values.iter().zip(&sl.values).filter(|(a, b)| a <= b).count();
            summary.insert("mean_infidelity_optimized".into(), json!(ours.mean()));
            summary.insert("mean_infidelity_single_loop".into(), json!(sl.mean()));
            summary.insert("fraction_optimized_below".into(), json!(below as f64 / ours.values.len() as f64));
            let t = sweep_table(&[
                (vec![("path_chi [rad]".to_string(), fmt_f64(0.25 * PI))], &ours),
                (vec![("path_chi [rad]".to_string(), fmt_f64(PI))], &sl),
            ])?;
            (format!("{name} infidelity surfaces, chi = 0.25pi and pi"), t, masked_of(&[&ours, &sl]))
        }
        FigureId::F3 => {
            let sc = cfg.sc_sim();
            let values: Vec<f64> = sw.sc_error_mhz.values().into_iter().map(|v| v * MHZ).collect();
            let mut configs = vec![cfg.sc.config];
            if opts.overlay_3t && !configs.contains(&ScConfig::ThreeTransmon) {
                configs.push(ScConfig::ThreeTransmon);
            }
            let mut results = Vec::new();
            for (gname, gate) in [("rx", rx()), ("ry", ry())] {
                for kind in [ErrorKind::Delta, ErrorKind::Epsilon] {
                    for &c in &configs {
                        let r = sweeps::sc_robustness_curves(&gate, c, kind, &values, &sc, exec)?;
                        let cname = if c == ScConfig::Cavity { "cavity" } else { "3t" };
                        results.push((vec![("gate [-]".to_string(), gname.to_string()), ("config [-]".to_string(), cname.to_string())], r));
                    }
                }
            }
            let refs: Vec<(Vec<(String, String)>, &SweepResult)> = results.iter().map(|(e, r)| (e.clone(), r)).collect();
            let all: Vec<&SweepResult> = results.iter().map(|(_, r)| r).collect();
            ("logical-qubit robustness, effective model, optimized vs single loop".to_string(), sweep_table(&refs)?, masked_of(&all))
        }
        FigureId::F4a => {
            let sim = holopath_core::sweeps::sims::TwoQubitSim { mode: sw.search_mode, steps: sw.search_steps, ..cfg.two_qubit_sim() };
            let betas = sw.search_beta3.values();
            let deltas: Vec<f64> = sw.search_delta3_mhz.values().into_iter().map(|v| v * MHZ).collect();
            let r = sweeps::two_qubit_param_search(&betas, &deltas, &sim, exec)?;
            let best = (0..r.values.len()).filter(|&k| !r.values[k].is_nan()).max_by(|&a, &b| r.values[a].total_cmp(&r.values[b]));
            if let Some(k) = best {
                let p = r.grid.point(k);
                summary.insert("argmax".into(), json!({"beta3": p[0], "delta3_mhz": p[1] / MHZ, "fidelity": r.values[k]}));
            }
            ("two-qubit CP(pi/4) fidelity over (beta3, Delta3)".to_string(), single(&r)?, masked_of(&[&r]))
        }
        FigureId::F4b => {
            let sim = cfg.two_qubit_sim();
            let (traj, fs) = sim.state_run(sw.trace_samples)?;
            let labels = traj.states[0].labels().to_vec();
            let mut headers = vec!["t [us]".to_string()];
            headers.extend(labels.iter().map(|l| format!("P{l} [1]")));
            let mut t = Table::new(headers);
            for (time, st) in traj.times.iter().zip(&traj.states) {
                let mut row = vec![fmt_f64(*time)];
                row.extend((0..labels.len()).map(|k| fmt_f64(st.population(k))));
                t.push(row);
            }
            summary.insert("state_fidelity".into(), json!(fs));
            ("two-qubit populations from (|01>+|11>)/sqrt2 on T2T3".to_string(), t, Vec::new())
        }
    };
    Ok(FigureOutput { id, description, table, masked, summary })
}

/// Compute and write `out/<id>/data.csv` and `out/<id>/meta.json`.
pub fn run(id: FigureId, cfg: &RunConfig, exec: &dyn CellExecutor, opts: &FigureOptions) -> Result<PathBuf> {
    let start = Instant::now();
    let out = compute(id, cfg, exec, opts)?;
    let dir = cfg.output.join(id.as_str());
    write(&dir, &out, cfg, opts, opts.timing.then(|| start.elapsed().as_secs_f64()))?;
    Ok(dir)
}

pub fn write(dir: &Path, out: &FigureOutput, cfg: &RunConfig, opts: &FigureOptions, runtime: Option<f64>) -> Result<()> {
    let csv = out.table.to_csv()?;
    let config = json!({"figure": out.id.as_str(), "overlay_3t": opts.overlay_3t, "run": cfg});
    let meta = Sidecar {
        figure: out.id.as_str().into(),
        description: out.description.clone(),
        version: env!("CARGO_PKG_VERSION").into(),
        config_hash: config_hash(&config)?,
        config,
        data_sha256: io::sha256_hex(csv.as_bytes()),
        masked_cells: out.masked.clone(),
        summary: out.summary.clone(),
        runtime_s: runtime,
    };
    io::write_text(&dir.join("data.csv"), &csv)?;
    io::write_json(&dir.join("meta.json"), &meta)
}
