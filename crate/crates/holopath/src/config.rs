//! Run configuration: a TOML document with one table per physical
//! setting plus gate, path, sweep and output tables. Frequencies are given
//! in MHz (times 2π internally), angles either as radians or as multiples
//! of π written `"0.25pi"`.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use holopath_core::models::{ScConfig, TwoQubitMode, TwoQubitParams, MHZ};
use holopath_core::pathsynth::{GateSpec, PathSpec};
use holopath_core::sweeps::sims::{LambdaSim, ScSim, TwoQubitSim};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
#[error("config error in `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

/// Parse `"0.25pi"`, `"-pi"`, `"pi/4"`, `"3pi/4"` or a plain number of radians.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().replace(' ', "").to_ascii_lowercase().replace('π', "pi");
    if t.is_empty() {
        return Err("empty angle".into());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| format!("bad denominator in `{s}`"))?),
        None => (t.clone(), 1.0),
    };
    if den == 0.0 {
        return Err(format!("zero denominator in `{s}`"));
    }
    let value = if let Some(k) = num.strip_suffix("pi") {
        let k = match k.trim_end_matches('*') {
            "" | "+" => 1.0,
            "-" => -1.0,
            k => k.parse::<f64>().map_err(|_| format!("bad multiple of π in `{s}`"))?,
        };
        k * PI
    } else {
        num.parse::<f64>().map_err(|_| format!("cannot read `{s}` as an angle"))?
    };
    let v = value / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// An angle in radians that deserializes from a number or a `"…pi"` string
/// and serializes back as radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(pub f64);

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Angle;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an angle in radians or a string like \"0.25pi\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Angle, E> {
                Ok(Angle(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Angle, E> {
                parse_angle(v).map(Angle).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// `rx:0.5pi`, `ry:pi/4`, `rz:0`, `cp:0.25pi`, or an explicit `(θ, φ, γ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedGate {
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Cp(f64),
}

impl NamedGate {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (name, angle) = s.split_once(':').ok_or_else(|| format!("expected `name:angle`, got `{s}`"))?;
        let g = parse_angle(angle)?;
        match name.trim().to_ascii_lowercase().as_str() {
            "rx" => Ok(NamedGate::Rx(g)),
            "ry" => Ok(NamedGate::Ry(g)),
            "rz" => Ok(NamedGate::Rz(g)),
            "cp" => Ok(NamedGate::Cp(g)),
            other => Err(format!("unknown gate `{other}` (expected rx, ry, rz or cp)")),
        }
    }

    /// The Λ-system gate that realizes it (CP acts on `|11⟩₂₃` with `θ = π`).
    pub fn spec(self) -> GateSpec {
        match self {
            NamedGate::Rx(g) => GateSpec::rx(g),
            NamedGate::Ry(g) => GateSpec::ry(g),
            NamedGate::Rz(g) => GateSpec::rz(g),
            NamedGate::Cp(g) => holopath_core::models::TwoLogicalQubit::lambda_gate(g),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateSection {
    pub name: Option<String>,
    pub theta: Option<Angle>,
    pub phi: Option<Angle>,
    pub gamma: Option<Angle>,
}

impl GateSection {
    pub fn resolve(&self) -> Result<GateSpec, ConfigError> {
        if let Some(n) = &self.name {
            if self.theta.is_some() || self.phi.is_some() || self.gamma.is_some() {
                return Err(ConfigError::new("gate", "give either `name` or `theta`/`phi`/`gamma`, not both"));
            }
            return NamedGate::parse(n).map(NamedGate::spec).map_err(|m| ConfigError::new("gate.name", m));
        }
        let theta = self.theta.ok_or_else(|| ConfigError::new("gate.theta", "missing"))?.0;
        let phi = self.phi.map_or(0.0, |a| a.0);
        let gamma = self.gamma.ok_or_else(|| ConfigError::new("gate.gamma", "missing"))?.0;
        GateSpec::new(theta, phi, gamma).map_err(|e| ConfigError::new("gate", e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PathSection {
    pub chi: Angle,
    pub xi1: Angle,
}

impl Default for PathSection {
    fn default() -> Self {
        PathSection { chi: Angle(0.25 * PI), xi1: Angle(0.0) }
    }
}

impl PathSection {
    pub fn resolve(&self) -> Result<PathSpec, ConfigError> {
        let p = PathSpec::new(self.chi.0).with_xi1(self.xi1.0);
        p.validate().map_err(|e| ConfigError::new("path.chi", e.to_string()))?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LambdaSection {
    /// Peak Rabi frequency (rad/µs).
    pub omega_max: f64,
    /// Multiplier on the decoherence rate `Ω_m/2000`.
    pub kappa_scale: f64,
    pub steps: usize,
    pub n_inputs: usize,
}

impl Default for LambdaSection {
    fn default() -> Self {
        let d = LambdaSim::default();
        LambdaSection { omega_max: d.omega_max, kappa_scale: d.kappa_scale, steps: d.steps, n_inputs: d.n_inputs }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScSection {
    pub g_mhz: f64,
    pub beta: f64,
    pub delta_mhz: f64,
    pub kappa_khz: f64,
    pub full_steps: usize,
    pub effective_steps: usize,
    pub n_inputs: usize,
    pub config: ScConfig,
}

impl Default for ScSection {
    fn default() -> Self {
        let d = ScSim::default();
        ScSection {
            g_mhz: d.g / MHZ,
            beta: d.beta,
            delta_mhz: d.delta / MHZ,
            kappa_khz: d.kappa / MHZ * 1e3,
            full_steps: d.full_steps,
            effective_steps: d.effective_steps,
            n_inputs: d.n_inputs,
            config: ScConfig::Cavity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TwoQubitSection {
    pub g23_mhz: f64,
    pub beta3: f64,
    pub alpha2_mhz: f64,
    pub alpha3_mhz: f64,
    pub delta3_mhz: f64,
    pub kappa_khz: f64,
    pub chi: Angle,
    pub gamma: Angle,
    pub steps: usize,
    pub n_inputs: usize,
    /// Interaction used for the single-point gate and state runs.
    pub mode: TwoQubitMode,
}

impl Default for TwoQubitSection {
    fn default() -> Self {
        let d = TwoQubitSim::default();
        TwoQubitSection {
            g23_mhz: 8.0,
            beta3: d.params.beta3,
            alpha2_mhz: 300.0,
            alpha3_mhz: 330.0,
            delta3_mhz: 700.0,
            kappa_khz: 3.0,
            chi: Angle(d.chi),
            gamma: Angle(d.gamma),
            steps: d.steps,
            n_inputs: d.n_inputs,
            mode: d.mode,
        }
    }
}

/// `[start, stop, points]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range(pub f64, pub f64, pub usize);

impl Range {
    pub fn values(&self) -> Vec<f64> {
        holopath_core::num::linspace(self.0, self.1, self.2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    /// Area map, in units of π for χ and γ.
    pub area_chi_pi: Range,
    pub area_gamma_pi: Range,
    /// Fidelity maps: χ in units of π and the error range.
    pub map_chi_pi: Range,
    pub map_error: Range,
    pub surface_error: Range,
    /// Logical-qubit robustness curves, MHz.
    pub sc_error_mhz: Range,
    pub search_beta3: Range,
    pub search_delta3_mhz: Range,
    pub search_mode: TwoQubitMode,
    pub search_steps: usize,
    /// Samples per population trace.
    pub trace_samples: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            area_chi_pi: Range(0.01, 1.0, 100),
            area_gamma_pi: Range(0.0, 0.5, 100),
            map_chi_pi: Range(0.1, 1.0, 41),
            map_error: Range(-0.1, 0.1, 41),
            surface_error: Range(-0.1, 0.1, 21),
            sc_error_mhz: Range(-2.0, 2.0, 41),
            search_beta3: Range(1.0, 3.0, 21),
            search_delta3_mhz: Range(500.0, 900.0, 21),
            search_mode: TwoQubitMode::Exact,
            search_steps: 20_000,
            trace_samples: 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub lambda: LambdaSection,
    pub sc: ScSection,
    pub two_qubit: TwoQubitSection,
    pub gate: GateSection,
    pub path: PathSection,
    pub sweep: SweepSection,
    pub output: PathBuf,
    /// Always true: every computation here is seed-free.
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lambda: LambdaSection::default(),
            sc: ScSection::default(),
            two_qubit: TwoQubitSection::default(),
            gate: GateSection { name: Some("rx:0.5pi".into()), ..Default::default() },
            path: PathSection::default(),
            sweep: SweepSection::default(),
            output: PathBuf::from("out"),
            deterministic: true,
        }
    }
}

fn positive(field: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(field, format!("{v} must be positive")))
    }
}

fn nonneg(field: &str, v: f64) -> Result<(), ConfigError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(field, format!("{v} must be non-negative")))
    }
}

fn at_least(field: &str, v: usize, min: usize) -> Result<(), ConfigError> {
    if v >= min {
        Ok(())
    } else {
        Err(ConfigError::new(field, format!("{v} must be at least {min}")))
    }
}

fn range(field: &str, r: &Range) -> Result<(), ConfigError> {
    at_least(field, r.2, 1)?;
    if !(r.0.is_finite() && r.1.is_finite()) || (r.2 > 1 && r.0 == r.1) {
        return Err(ConfigError::new(field, "range ends must be finite and distinct"));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let field = e.span().map(|s| format!("byte {}..{}", s.start, s.end)).unwrap_or_else(|| "document".into());
            ConfigError::new(field, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new("--config", format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.deterministic {
            return Err(ConfigError::new("deterministic", "runs are always deterministic"));
        }
        positive("lambda.omega_max", self.lambda.omega_max)?;
        nonneg("lambda.kappa_scale", self.lambda.kappa_scale)?;
        at_least("lambda.steps", self.lambda.steps, 1)?;
        at_least("lambda.n_inputs", self.lambda.n_inputs, 1)?;
        positive("sc.g_mhz", self.sc.g_mhz)?;
        if !(self.sc.beta > 0.0 && self.sc.beta <= holopath_core::special::J1_ARGMAX) {
            return Err(ConfigError::new("sc.beta", format!("{} outside (0, 1.8412]", self.sc.beta)));
        }
        positive("sc.delta_mhz", self.sc.delta_mhz)?;
        nonneg("sc.kappa_khz", self.sc.kappa_khz)?;
        at_least("sc.full_steps", self.sc.full_steps, 1)?;
        at_least("sc.effective_steps", self.sc.effective_steps, 1)?;
        at_least("sc.n_inputs", self.sc.n_inputs, 1)?;
        positive("two_qubit.g23_mhz", self.two_qubit.g23_mhz)?;
        positive("two_qubit.beta3", self.two_qubit.beta3)?;
        nonneg("two_qubit.kappa_khz", self.two_qubit.kappa_khz)?;
        at_least("two_qubit.steps", self.two_qubit.steps, 1)?;
        at_least("two_qubit.n_inputs", self.two_qubit.n_inputs, 1)?;
        if !(self.two_qubit.chi.0 > 0.0 && self.two_qubit.chi.0 <= PI) {
            return Err(ConfigError::new("two_qubit.chi", "must lie in (0, π]"));
        }
        self.gate.resolve()?;
        self.path.resolve()?;
        let s = &self.sweep;
        range("sweep.area_chi_pi", &s.area_chi_pi)?;
        if s.area_chi_pi.0.min(s.area_chi_pi.1) <= 0.0 {
            return Err(ConfigError::new("sweep.area_chi_pi", "χ = 0 is excluded"));
        }
        range("sweep.area_gamma_pi", &s.area_gamma_pi)?;
        range("sweep.map_chi_pi", &s.map_chi_pi)?;
        range("sweep.map_error", &s.map_error)?;
        range("sweep.surface_error", &s.surface_error)?;
        for (f, r) in [("sweep.map_error", &s.map_error), ("sweep.surface_error", &s.surface_error)] {
            if r.0.abs().max(r.1.abs()) > 0.1 {
                return Err(ConfigError::new(f, "Λ-model errors must lie in [−0.1, 0.1]"));
            }
        }
        range("sweep.sc_error_mhz", &s.sc_error_mhz)?;
        range("sweep.search_beta3", &s.search_beta3)?;
        range("sweep.search_delta3_mhz", &s.search_delta3_mhz)?;
        at_least("sweep.search_steps", s.search_steps, 1)?;
        at_least("sweep.trace_samples", s.trace_samples, 1)?;
        Ok(())
    }

    pub fn lambda_sim(&self) -> LambdaSim {
        LambdaSim {
            omega_max: self.lambda.omega_max,
            kappa_scale: self.lambda.kappa_scale,
            steps: self.lambda.steps,
            n_inputs: self.lambda.n_inputs,
        }
    }

    pub fn sc_sim(&self) -> ScSim {
        ScSim {
            g: self.sc.g_mhz * MHZ,
            beta: self.sc.beta,
            delta: self.sc.delta_mhz * MHZ,
            kappa: self.sc.kappa_khz * 1e-3 * MHZ,
            full_steps: self.sc.full_steps,
            effective_steps: self.sc.effective_steps,
            n_inputs: self.sc.n_inputs,
        }
    }

    pub fn two_qubit_sim(&self) -> TwoQubitSim {
        let t = &self.two_qubit;
        TwoQubitSim {
            params: TwoQubitParams {
                g23: t.g23_mhz * MHZ,
                beta3: t.beta3,
                alpha2: t.alpha2_mhz * MHZ,
                alpha3: t.alpha3_mhz * MHZ,
                delta3: t.delta3_mhz * MHZ,
            },
            mode: t.mode,
            kappa: t.kappa_khz * 1e-3 * MHZ,
            chi: t.chi.0,
            gamma: t.gamma.0,
            steps: t.steps,
            n_inputs: t.n_inputs,
        }
    }
}
