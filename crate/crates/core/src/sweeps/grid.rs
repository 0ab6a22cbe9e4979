use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::num::pairwise_mean;
use crate::{Error, Result};

/// Default cap on the number of cells in one grid.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepAxis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

impl SweepAxis {
    /// Values must be finite and strictly monotone (either direction).
    pub fn new(name: impl Into<String>, unit: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::InvalidGrid(alloc::format!("axis `{name}` is empty")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(alloc::format!("axis `{name}` has non-finite values")));
        }
        let inc = values.windows(2).all(|w| w[1] > w[0]);
        let dec = values.windows(2).all(|w| w[1] < w[0]);
        if !(inc || dec) {
            return Err(Error::InvalidGrid(alloc::format!("axis `{name}` is not strictly monotone")));
        }
        Ok(SweepAxis { name, unit: unit.into(), values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Cartesian product of axes, last axis fastest.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepGrid {
    pub axes: Vec<SweepAxis>,
    /// What each cell computes (gate, model, path), for provenance.
    pub payload: String,
}

impl SweepGrid {
    pub fn new(axes: Vec<SweepAxis>, payload: impl Into<String>, budget: usize) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("no axes".to_string()));
        }
        let mut cells: usize = 1;
        for a in &axes {
            cells = cells.saturating_mul(a.len());
        }
        if cells > budget {
            return Err(Error::BudgetExceeded { cells, budget });
        }
        Ok(SweepGrid { axes, payload: payload.into() })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(SweepAxis::len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(SweepAxis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = alloc::vec![0; self.axes.len()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            idx[k] = flat % a.len();
            flat /= a.len();
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.axes).fold(0, |acc, (&i, a)| acc * a.len() + i)
    }

    /// Coordinates of cell `flat`.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).iter().zip(&self.axes).map(|(&i, a)| a.values[i]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Stat {
    Fidelity,
    Infidelity,
    AreaOverPi,
    MaxPopulation,
}

impl Stat {
    pub fn as_str(self) -> &'static str {
        match self {
            Stat::Fidelity => "fidelity",
            Stat::Infidelity => "infidelity",
            Stat::AreaOverPi => "area_over_pi",
            Stat::MaxPopulation => "max_population",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaskedCell {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub grid: SweepGrid,
    /// Row-major, matching `grid.shape()`; NaN exactly at masked cells.
    pub values: Vec<f64>,
    pub stat: Stat,
    pub masked: Vec<MaskedCell>,
    /// Optional per-cell tag (e.g. area regions).
    pub labels: Option<Vec<String>>,
}

impl SweepResult {
    pub fn at(&self, idx: &[usize]) -> f64 {
        self.values[self.grid.flat_index(idx)]
    }

    /// Mean over unmasked cells.
    pub fn mean(&self) -> f64 {
        let v: Vec<f64> = self.values.iter().cloned().filter(|x| !x.is_nan()).collect();
        pairwise_mean(&v)
    }

    /// Values along the last axis with the leading indices fixed.
    pub fn row(&self, lead: &[usize]) -> Vec<f64> {
        let n = self.grid.axes.last().map_or(0, SweepAxis::len);
        let mut idx = lead.to_vec();
        idx.push(0);
        let start = self.grid.flat_index(&idx);
        self.values[start..start + n].to_vec()
    }
}

/// Runs independent cells; implementations may parallelize but must
/// return results in cell order.
pub trait CellExecutor {
    fn execute(&self, cells: usize, f: &(dyn Fn(usize) -> Result<f64> + Sync)) -> Vec<Result<f64>>;
}

/// One cell after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl CellExecutor for Sequential {
    fn execute(&self, cells: usize, f: &(dyn Fn(usize) -> Result<f64> + Sync)) -> Vec<Result<f64>> {
        (0..cells).map(f).collect()
    }
}

/// Evaluate `cell` at every grid point. A failing cell becomes NaN and is
/// recorded in `masked` with the error text.
pub fn run_sweep(
    grid: SweepGrid,
    stat: Stat,
    exec: &dyn CellExecutor,
    cell: &(dyn Fn(&[f64]) -> Result<f64> + Sync),
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid has no cells".to_string()));
    }
    let results = exec.execute(grid.len(), &|k| cell(&grid.point(k)));
    if results.len() != grid.len() {
        return Err(Error::InvalidGrid(alloc::format!("executor returned {} of {} cells", results.len(), grid.len())));
    }
    let mut values = Vec::with_capacity(results.len());
    let mut masked = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) if !v.is_nan() => values.push(v),
            Ok(_) => {
                values.push(f64::NAN);
                masked.push(MaskedCell { index, reason: "NaN".to_string() });
            }
            Err(e) => {
                values.push(f64::NAN);
                masked.push(MaskedCell { index, reason: e.to_string() });
            }
        }
    }
    Ok(SweepResult { grid, values, stat, masked, labels: None })
}
