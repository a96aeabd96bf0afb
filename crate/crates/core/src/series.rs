use serde::{Deserialize, Serialize};

use crate::damper::{DamperConfig, DamperModel};
use crate::model::{PlantState, QuarterCarParams};
use crate::road::RoadSignal;

/// Named column of a [`TimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    T,
    R,
    Dr,
    ZS,
    DzS,
    ZU,
    DzU,
    FMr,
    Internal,
}

/// Recorded trajectory of one simulation run, one row per integration step
/// including both end points. The producing configuration travels with the
/// data so downstream analysis knows which stroke the damper saw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub dt: f64,
    pub params: QuarterCarParams,
    pub damper: DamperConfig,
    pub signal: RoadSignal,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub dr: Vec<f64>,
    pub z_s: Vec<f64>,
    pub dz_s: Vec<f64>,
    pub z_u: Vec<f64>,
    pub dz_u: Vec<f64>,
    pub f_mr: Vec<f64>,
    /// Dahl `w` or LuGre/Bouc-Wen `y`; absent for passive and Bingham.
    pub internal: Option<Vec<f64>>,
}

impl TimeSeries {
    pub(crate) fn with_capacity(
        dt: f64,
        params: QuarterCarParams,
        damper: DamperConfig,
        signal: RoadSignal,
        n: usize,
    ) -> Self {
        let col = || Vec::with_capacity(n);
        Self {
            dt,
            params,
            damper,
            signal,
            t: col(),
            r: col(),
            dr: col(),
            z_s: col(),
            dz_s: col(),
            z_u: col(),
            dz_u: col(),
            f_mr: col(),
            internal: damper.model.has_internal_state().then(col),
        }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.t.last().copied().unwrap_or(0.0) - self.t.first().copied().unwrap_or(0.0)
    }

    pub fn column(&self, c: Column) -> Option<&[f64]> {
        Some(match c {
            Column::T => &self.t,
            Column::R => &self.r,
            Column::Dr => &self.dr,
            Column::ZS => &self.z_s,
            Column::DzS => &self.dz_s,
            Column::ZU => &self.z_u,
            Column::DzU => &self.dz_u,
            Column::FMr => &self.f_mr,
            Column::Internal => return self.internal.as_deref(),
        })
    }

    /// Name of the internal state column (`w` or `y`).
    pub fn internal_name(&self) -> Option<&'static str> {
        match self.damper.model {
            DamperModel::Dahl(_) => Some("w"),
            DamperModel::LuGre(_) | DamperModel::BoucWen(_) => Some("y"),
            _ => None,
        }
    }

    pub fn state(&self, i: usize) -> PlantState {
        PlantState::new(self.z_s[i], self.dz_s[i], self.z_u[i], self.dz_u[i])
    }

    /// Damper stroke (displacement, velocity) at row `i`.
    pub fn stroke(&self, i: usize) -> (f64, f64) {
        self.damper.input_mode.stroke(&self.state(i))
    }

    /// Equal column lengths and uniform time grid.
    pub fn is_consistent(&self) -> bool {
        let n = self.len();
        let lens_ok = [
            self.r.len(),
            self.dr.len(),
            self.z_s.len(),
            self.dz_s.len(),
            self.z_u.len(),
            self.dz_u.len(),
            self.f_mr.len(),
        ]
        .iter()
        .all(|&l| l == n)
            && !matches!(&self.internal, Some(c) if c.len() != n);
        let grid_ok = self.t.windows(2).all(|w| {
            let step = w[1] - w[0];
            step > 0.0 && ((step - self.dt) / self.dt).abs() <= 1e-9
        });
        lens_ok && grid_ok
    }
}
