//! CSV and text emitters. Numbers are written with 17 significant digits in
//! scientific notation, which round-trips every `f64` and does not depend on
//! the locale.

use std::fmt::Write as _;
use std::io::Write;

use qcar_core::{HysteresisLoop, Metrics, TimeSeries};

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// `t,r,dr,z_s,dz_s,z_u,dz_u,F_mr[,internal]`, one row per recorded step.
pub fn write_series<W: Write>(w: W, ts: &TimeSeries) -> csv::Result<()> {
    let mut out = writer(w);
    let mut header = vec!["t", "r", "dr", "z_s", "dz_s", "z_u", "dz_u", "F_mr"];
    if ts.internal.is_some() {
        header.push("internal");
    }
    out.write_record(&header)?;
    let mut row = Vec::with_capacity(header.len());
    for i in 0..ts.len() {
        row.clear();
        for col in [&ts.t, &ts.r, &ts.dr, &ts.z_s, &ts.dz_s, &ts.z_u, &ts.dz_u, &ts.f_mr] {
            row.push(num(col[i]));
        }
        if let Some(s) = &ts.internal {
            row.push(num(s[i]));
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_loop<W: Write>(w: W, lp: &HysteresisLoop) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(["dz_rel", "F_mr", "z_rel"])?;
    for i in 0..lp.len() {
        out.write_record([num(lp.stroke_velocity[i]), num(lp.force[i]), num(lp.stroke[i])])?;
    }
    out.flush()?;
    Ok(())
}

/// One cell of a comparison grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub model: &'static str,
    pub signal: &'static str,
    pub outcome: Result<(Metrics, Option<f64>), String>,
}

pub const GRID_HEADER: [&str; 9] = [
    "model",
    "signal",
    "status",
    "rms_zs",
    "peak_abs_zs",
    "settling_time",
    "steady_band",
    "rms_ratio",
    "error",
];

pub fn write_grid<W: Write>(w: W, rows: &[GridRow]) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(GRID_HEADER)?;
    for r in rows {
        let record = match &r.outcome {
            Ok((m, ratio)) => [
                r.model.to_string(),
                r.signal.to_string(),
                "ok".into(),
                num(m.rms_zs),
                num(m.peak_abs_zs),
                m.settling_time.map(num).unwrap_or_default(),
                num(m.steady_band),
                ratio.map(num).unwrap_or_default(),
                String::new(),
            ],
            Err(e) => [
                r.model.to_string(),
                r.signal.to_string(),
                "FAILED".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                e.clone(),
            ],
        };
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}

/// Human-readable version of the grid, millimetres and seconds.
pub fn grid_text(rows: &[GridRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:<10} {:>12} {:>12} {:>10} {:>12} {:>8}",
        "model", "signal", "rms_zs[mm]", "peak[mm]", "settle[s]", "band[mm]", "ratio"
    );
    for r in rows {
        match &r.outcome {
            Ok((m, ratio)) => {
                let settle = m.settling_time.map(|t| format!("{t:.3}")).unwrap_or_else(|| "-".into());
                let ratio = ratio.map(|x| format!("{x:.3}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:<8} {:<10} {:>12.4} {:>12.4} {:>10} {:>12.4} {:>8}",
                    r.model,
                    r.signal,
                    m.rms_zs * 1e3,
                    m.peak_abs_zs * 1e3,
                    settle,
                    m.steady_band * 1e3,
                    ratio
                );
            }
            Err(e) => {
                let _ = writeln!(s, "{:<8} {:<10} FAILED: {e}", r.model, r.signal);
            }
        }
    }
    s
}
