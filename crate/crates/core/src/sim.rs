//! Fixed-step RK4 integration of the plant together with the damper's
//! internal state.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::damper::{DamperConfig, DamperInternalState, DamperModel};
use crate::error::{ParamError, SimError};
use crate::model::{PlantState, QuarterCarParams};
use crate::plant::{passive_rhs, semiactive_rhs_signed, ForceSign};
use crate::road::RoadSignal;
use crate::series::TimeSeries;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_DURATION: f64 = 15.0;
/// Largest state magnitude accepted before a run is declared unstable.
pub const BLOWUP_LIMIT: f64 = 1e6;
/// Slack allowed on the internal-state bound.
pub const BOUND_SLACK: f64 = 1e-6;
const MAX_STEPS: f64 = 1e8;

/// One classic fourth-order Runge-Kutta step of `dx/dt = f(t, x)`.
#[inline]
pub fn rk4_step<const N: usize, F>(f: F, t: f64, x: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let axpy = |a: &[f64; N], k: &[f64; N], s: f64| -> [f64; N] { std::array::from_fn(|i| a[i] + s * k[i]) };
    let half = 0.5 * h;
    let k1 = f(t, x);
    let k2 = f(t + half, &axpy(x, &k1, half));
    let k3 = f(t + half, &axpy(x, &k2, half));
    let k4 = f(t + h, &axpy(x, &k3, h));
    std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Everything needed for one deterministic run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub params: QuarterCarParams,
    pub damper: DamperConfig,
    pub signal: RoadSignal,
    pub dt: f64,
    pub duration: f64,
    #[serde(default)]
    pub initial_state: PlantState,
    /// Defaults to the model's rest state when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_internal: Option<DamperInternalState>,
    #[serde(default)]
    pub force_sign: ForceSign,
}

impl Scenario {
    pub fn new(params: QuarterCarParams, damper: DamperConfig, signal: RoadSignal) -> Self {
        Self {
            params,
            damper,
            signal,
            dt: DEFAULT_DT,
            duration: DEFAULT_DURATION,
            initial_state: PlantState::ZERO,
            initial_internal: None,
            force_sign: ForceSign::Opposing,
        }
    }

    /// Reference vehicle with the given damper and road.
    pub fn reference(damper: DamperConfig, signal: RoadSignal) -> Self {
        Self::new(QuarterCarParams::default(), damper, signal)
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_duration(mut self, duration: f64) -> Self {
        self.duration = duration;
        self
    }

    pub fn with_initial_state(mut self, x: PlantState) -> Self {
        self.initial_state = x;
        self
    }

    pub fn with_initial_internal(mut self, s: DamperInternalState) -> Self {
        self.initial_internal = Some(s);
        self
    }

    pub fn with_force_sign(mut self, sign: ForceSign) -> Self {
        self.force_sign = sign;
        self
    }

    pub fn internal_state(&self) -> DamperInternalState {
        self.initial_internal.unwrap_or_else(|| self.damper.model.rest_state())
    }

    /// Number of integration steps; the series has one more row.
    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.params.validate()?;
        self.damper.validate()?;
        self.signal.validate()?;
        self.internal_state().check_matches(&self.damper.model)?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(ParamError::NonPositiveParameter("dt").into());
        }
        if !self.duration.is_finite() || self.duration < self.dt {
            return Err(ParamError::Invalid {
                name: "duration",
                reason: "duration must be at least one time step".into(),
            }
            .into());
        }
        if self.duration / self.dt > MAX_STEPS {
            return Err(ParamError::Invalid {
                name: "duration",
                reason: format!("more than {MAX_STEPS:e} steps requested"),
            }
            .into());
        }
        if !self.initial_state.is_finite() || !self.internal_state().value().unwrap_or(0.0).is_finite() {
            return Err(ParamError::NonFinite("initial_state").into());
        }
        Ok(())
    }
}

/// Right-hand side of the augmented system `[z_s, ż_s, z_u, ż_u, s]`.
struct Augmented<'a> {
    params: &'a QuarterCarParams,
    damper: &'a DamperConfig,
    signal: &'a RoadSignal,
    sign: ForceSign,
}

impl Augmented<'_> {
    #[inline]
    fn force(&self, x: &[f64; 5]) -> (f64, f64) {
        let (z, dz) = self.damper.input_mode.stroke(&PlantState::from_slice(x));
        self.damper.model.evaluate(z, dz, x[4])
    }

    #[inline]
    fn eval(&self, t: f64, x: &[f64; 5]) -> [f64; 5] {
        let plant = PlantState::from_slice(x);
        let road = self.signal.eval(t);
        let (d, ds) = match self.damper.model {
            DamperModel::Passive => (passive_rhs(&plant, road, self.params), 0.0),
            _ => {
                let (force, ds) = self.force(x);
                (semiactive_rhs_signed(&plant, road, force, self.sign, self.params), ds)
            }
        };
        [d.dz_s, d.ddz_s, d.dz_u, d.ddz_u, ds]
    }
}

/// Integrates a scenario with fixed-step RK4 and records every step.
///
/// Row `i` holds time `i·dt`, the road input there, the state, and the
/// damper force evaluated at that state. Fails with
/// [`SimError::NumericalBlowup`] when any state component becomes
/// non-finite or exceeds [`BLOWUP_LIMIT`], and with
/// [`SimError::InvariantViolation`] when a bounded internal state (Dahl `w`,
/// standard Bouc-Wen `y`) that started inside its bound leaves it.
pub fn simulate(sc: &Scenario) -> Result<TimeSeries, SimError> {
    sc.validate()?;
    let n = sc.steps();
    let sys = Augmented {
        params: &sc.params,
        damper: &sc.damper,
        signal: &sc.signal,
        sign: sc.force_sign,
    };
    let s0 = sc.internal_state().value().unwrap_or(0.0);
    let bound = sc.damper.model.internal_bound().filter(|&(_, b)| s0.abs() <= b);

    let mut out = TimeSeries::with_capacity(sc.dt, sc.params, sc.damper, sc.signal, n + 1);
    let record = |t: f64, x: &[f64; 5], out: &mut TimeSeries| {
        let road = sc.signal.eval(t);
        let (force, _) = sys.force(x);
        out.t.push(t);
        out.r.push(road.r);
        out.dr.push(road.dr);
        out.z_s.push(x[0]);
        out.dz_s.push(x[1]);
        out.z_u.push(x[2]);
        out.dz_u.push(x[3]);
        out.f_mr.push(force);
        if let Some(col) = out.internal.as_mut() {
            col.push(x[4]);
        }
    };

    let p0 = sc.initial_state;
    let mut x = [p0.z_s, p0.dz_s, p0.z_u, p0.dz_u, s0];
    record(0.0, &x, &mut out);
    for i in 0..n {
        let t = i as f64 * sc.dt;
        x = rk4_step(|t, x| sys.eval(t, x), t, &x, sc.dt);
        let t_next = (i + 1) as f64 * sc.dt;
        if x.iter().any(|v| !v.is_finite() || v.abs() > BLOWUP_LIMIT) {
            return Err(SimError::NumericalBlowup { t: t_next });
        }
        if let Some((name, b)) = bound {
            if x[4].abs() > b + BOUND_SLACK {
                return Err(SimError::InvariantViolation {
                    t: t_next,
                    name,
                    value: x[4].abs(),
                    bound: b,
                });
            }
        }
        record(t_next, &x, &mut out);
    }
    Ok(out)
}

/// Runs labelled scenarios in parallel. Results come back in input order and
/// each cell fails independently.
pub fn run_matrix<K>(cells: &[(K, Scenario)]) -> Vec<(K, Result<TimeSeries, SimError>)>
where
    K: Clone + Send + Sync,
{
    cells.par_iter().map(|(k, sc)| (k.clone(), simulate(sc))).collect()
}

/// Serial counterpart of [`run_matrix`].
pub fn run_matrix_serial<K: Clone>(cells: &[(K, Scenario)]) -> Vec<(K, Result<TimeSeries, SimError>)> {
    cells.iter().map(|(k, sc)| (k.clone(), simulate(sc))).collect()
}
