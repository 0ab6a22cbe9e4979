//! CSV tables with units in the header, JSON sidecars, content hashes.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use holopath_core::sweeps::SweepResult;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// A column-oriented table; every header carries its unit as `name [unit]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<String>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers()?.iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.map(|x| x.iter().map(String::from).collect())).collect::<Result<_, _>>()?;
        Ok(Table { headers, rows })
    }

    /// Column parsed as floats (`NaN` for masked cells).
    pub fn column(&self, header_prefix: &str) -> Option<Vec<f64>> {
        let k = self.headers.iter().position(|h| h == header_prefix || h.starts_with(&format!("{header_prefix} [")))?;
        self.rows.iter().map(|r| r[k].parse().ok()).collect()
    }
}

/// Shortest representation that round-trips exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:?}")
    }
}

/// Leading columns `extra` (fixed per result) then axes then the value
/// column, plus `region` when the result carries labels.
pub fn sweep_table(results: &[(Vec<(String, String)>, &SweepResult)]) -> Result<Table> {
    let (first_extra, first) = results.first().context("no sweep results")?;
    let mut headers: Vec<String> = first_extra.iter().map(|(h, _)| h.clone()).collect();
    headers.extend(first.grid.axes.iter().map(|a| format!("{} [{}]", a.name, a.unit)));
    headers.push(format!("{} [1]", first.stat.as_str()));
    let with_labels = first.labels.is_some();
    if with_labels {
        headers.push("region [-]".into());
    }
    let mut t = Table::new(headers);
    for (extra, r) in results {
        anyhow::ensure!(r.grid.axes.len() == first.grid.axes.len(), "mixed sweep shapes in one table");
        for (k, v) in r.values.iter().enumerate() {
            let mut row: Vec<String> = extra.iter().map(|(_, v)| v.clone()).collect();
            row.extend(r.grid.point(k).into_iter().map(fmt_f64));
            row.push(fmt_f64(*v));
            if with_labels {
                row.push(r.labels.as_ref().map(|l| l[k].clone()).unwrap_or_default());
            }
            t.push(row);
        }
    }
    Ok(t)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of the code version and the canonical JSON of `config`.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let mut bytes = format!("holopath {}\n", env!("CARGO_PKG_VERSION")).into_bytes();
    bytes.extend(serde_json::to_vec(config)?);
    Ok(sha256_hex(&bytes))
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Masked {
    pub index: usize,
    pub reason: String,
}

/// `meta.json` next to each data file.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Sidecar {
    pub figure: String,
    pub description: String,
    pub version: String,
    pub config: serde_json::Value,
    pub config_hash: String,
    pub data_sha256: String,
    pub masked_cells: Vec<Masked>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub summary: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_s: Option<f64>,
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_text(path, &s)
}
