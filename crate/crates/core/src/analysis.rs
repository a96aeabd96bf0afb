//! Scalar metrics and hysteresis-loop extraction from recorded runs.

use serde::{Deserialize, Serialize};

use crate::damper::DamperModel;
use crate::error::AnalysisError;
use crate::series::{Column, TimeSeries};

/// Default settling band as a fraction of the step height.
pub const DEFAULT_BAND: f64 = 0.02;
/// Fraction of the window treated as steady state.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.2;

/// Summary of the sprung-mass response of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub rms_zs: f64,
    pub peak_abs_zs: f64,
    /// Only defined for step inputs.
    pub settling_time: Option<f64>,
    /// Largest `|z_s − z_ref|` over the tail of the window.
    pub steady_band: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricOptions {
    pub band: f64,
    pub tail_fraction: f64,
}

impl Default for MetricOptions {
    fn default() -> Self {
        Self {
            band: DEFAULT_BAND,
            tail_fraction: DEFAULT_TAIL_FRACTION,
        }
    }
}

pub fn rms_of(xs: &[f64]) -> Result<f64, AnalysisError> {
    if xs.is_empty() {
        return Err(AnalysisError::EmptySeries);
    }
    Ok((xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64).sqrt())
}

/// Root mean square of a column over all samples.
pub fn rms(series: &TimeSeries, column: Column) -> Result<f64, AnalysisError> {
    rms_of(series.column(column).unwrap_or(&[]))
}

/// Earliest time after which `|z_s − reference| ≤ band·|reference|` holds for
/// every remaining sample, or `None` if the last sample is still outside.
pub fn settling_time(series: &TimeSeries, reference: f64, band: f64) -> Option<f64> {
    settling_index(&series.z_s, reference, band).map(|i| series.t[i])
}

fn settling_index(xs: &[f64], reference: f64, band: f64) -> Option<usize> {
    let tol = band.max(0.0) * reference.abs();
    match xs.iter().rposition(|x| (x - reference).abs() > tol) {
        None if xs.is_empty() => None,
        None => Some(0),
        Some(last) if last + 1 < xs.len() => Some(last + 1),
        Some(_) => None,
    }
}

fn tail_start(len: usize, fraction: f64) -> usize {
    let keep = ((len as f64) * fraction.clamp(0.0, 1.0)).ceil() as usize;
    len - keep.clamp(1, len.max(1))
}

/// Largest deviation of `z_s` from `z_ref` over the final `fraction` of the window.
pub fn steady_band(series: &TimeSeries, z_ref: f64, fraction: f64) -> Result<f64, AnalysisError> {
    if series.is_empty() {
        return Err(AnalysisError::EmptySeries);
    }
    let start = tail_start(series.len(), fraction);
    Ok(series.z_s[start..]
        .iter()
        .map(|z| (z - z_ref).abs())
        .fold(0.0, f64::max))
}

/// Computes [`Metrics`]. The reference level is the step height for step
/// inputs and zero otherwise.
pub fn metrics(series: &TimeSeries, opts: &MetricOptions) -> Result<Metrics, AnalysisError> {
    let rms_zs = rms(series, Column::ZS)?;
    let peak_abs_zs = series.z_s.iter().map(|z| z.abs()).fold(0.0, f64::max);
    let step = series.signal.step_magnitude();
    let z_ref = step.unwrap_or(0.0);
    let settling = step.and_then(|m| settling_time(series, m, opts.band));
    Ok(Metrics {
        rms_zs,
        peak_abs_zs,
        settling_time: settling,
        steady_band: steady_band(series, z_ref, opts.tail_fraction)?,
    })
}

/// Damper force against stroke velocity and stroke displacement over a
/// whole number of excitation periods.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct HysteresisLoop {
    pub stroke_velocity: Vec<f64>,
    pub stroke: Vec<f64>,
    pub force: Vec<f64>,
}

impl HysteresisLoop {
    pub fn len(&self) -> usize {
        self.force.len()
    }

    pub fn is_empty(&self) -> bool {
        self.force.is_empty()
    }

    /// Least-squares slope of force against stroke velocity over the points
    /// with `v > fraction·max(v)`.
    pub fn upper_branch_slope(&self, fraction: f64) -> Option<f64> {
        let vmax = self.stroke_velocity.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if vmax <= 0.0 {
            return None;
        }
        let cut = fraction * vmax;
        let pts: Vec<(f64, f64)> = self
            .stroke_velocity
            .iter()
            .zip(&self.force)
            .filter(|(v, _)| **v > cut)
            .map(|(&v, &f)| (v, f))
            .collect();
        linear_slope(&pts)
    }
}

fn linear_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// The last `periods` full cycles at excitation frequency `f` [Hz].
///
/// For the passive plant the loop shows the conventional suspension damper,
/// `c_s·(ż_s − ż_u)`, since there is no MR force.
pub fn extract_loop(series: &TimeSeries, periods: u32, f: f64) -> Result<HysteresisLoop, AnalysisError> {
    if periods == 0 || !f.is_finite() || f <= 0.0 {
        return Err(AnalysisError::InvalidArgument(
            "periods and frequency must be positive".into(),
        ));
    }
    let steps = (f64::from(periods) / (f * series.dt)).round() as usize;
    let needed = steps + 1;
    if needed > series.len() {
        return Err(AnalysisError::WindowTooShort {
            needed,
            available: series.len(),
        });
    }
    let start = series.len() - needed;
    let mut out = HysteresisLoop {
        stroke_velocity: Vec::with_capacity(needed),
        stroke: Vec::with_capacity(needed),
        force: Vec::with_capacity(needed),
    };
    let passive = matches!(series.damper.model, DamperModel::Passive);
    for i in start..series.len() {
        let (z, dz) = if passive {
            (series.z_s[i] - series.z_u[i], series.dz_s[i] - series.dz_u[i])
        } else {
            series.stroke(i)
        };
        let force = if passive {
            series.params.c_s * dz
        } else {
            series.f_mr[i]
        };
        out.stroke_velocity.push(dz);
        out.stroke.push(z);
        out.force.push(force);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub metrics: Metrics,
    /// `rms_zs / rms_zs(passive)` when a `passive` entry is present.
    pub rms_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

/// Label that identifies the baseline row in [`compare`].
pub const PASSIVE_LABEL: &str = "passive";

/// Sorts entries by `rms_zs` ascending (ties broken by label) and attaches
/// the ratio to the `passive` entry's RMS.
pub fn compare(results: &[(String, Metrics)]) -> ComparisonTable {
    let baseline = results
        .iter()
        .find(|(l, _)| l == PASSIVE_LABEL)
        .map(|(_, m)| m.rms_zs)
        .filter(|&r| r > 0.0);
    let mut rows: Vec<ComparisonRow> = results
        .iter()
        .map(|(label, m)| ComparisonRow {
            label: label.clone(),
            metrics: *m,
            rms_ratio: baseline.map(|b| m.rms_zs / b),
        })
        .collect();
    rows.sort_by(|a, b| {
        a.metrics
            .rms_zs
            .total_cmp(&b.metrics.rms_zs)
            .then_with(|| a.label.cmp(&b.label))
    });
    ComparisonTable { rows }
}

impl ComparisonTable {
    pub fn get(&self, label: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}
