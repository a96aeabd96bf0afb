//! Flat JSON run configuration.
//!
//! Every key is optional. Missing keys take the reference values (vehicle
//! `table1`, damper tables 2 to 5, dt 1e-3 s, 15 s, seed 0). Unknown keys are
//! rejected. Damper keys carry the model name as prefix and are only accepted
//! when that model is actually simulated.
//!
//! ```json
//! {
//!   "model": "boucwen",
//!   "signal": "step",
//!   "duration": 20.0,
//!   "boucwen_u": 3.0,
//!   "out": "run.csv"
//! }
//! ```

use std::path::{Path, PathBuf};

use qcar_core::{
    BinghamParams, BoucWenParams, DahlParams, DamperConfig, DamperModel, ForceSign, InputMode, LuGreParams,
    QuarterCarParams, RoadSignal, Scenario, SignalPreset,
};
use serde::Deserialize;

use crate::error::ConfigError;

pub const DEFAULT_PERIODS: u32 = 2;

/// Names accepted for `model`; the `tableN` aliases select the same defaults.
pub const MODEL_NAMES: [(&str, &str); 9] = [
    ("passive", "passive"),
    ("bingham", "bingham"),
    ("table2", "bingham"),
    ("dahl", "dahl"),
    ("table3", "dahl"),
    ("lugre", "lugre"),
    ("table4", "lugre"),
    ("boucwen", "boucwen"),
    ("table5", "boucwen"),
];

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<String>,
    pub signal: Option<String>,
    /// Only `table1` exists.
    pub vehicle: Option<String>,
    pub dt: Option<f64>,
    pub duration: Option<f64>,
    pub seed: Option<u64>,
    pub input_mode: Option<InputMode>,
    /// Apply the damper force to the sprung mass with `+F` instead of `−F`.
    pub damper_sign_literal: Option<bool>,
    pub out: Option<PathBuf>,
    pub band: Option<f64>,
    pub periods: Option<u32>,

    pub m_s: Option<f64>,
    pub m_u: Option<f64>,
    pub k_s: Option<f64>,
    pub k_u: Option<f64>,
    pub c_s: Option<f64>,
    pub c_u: Option<f64>,

    /// Sine amplitude or step height [m].
    pub amplitude: Option<f64>,
    pub frequency: Option<f64>,
    pub noise_bound: Option<f64>,
    pub sample_period: Option<f64>,
    pub step_time: Option<f64>,
    pub rise_time: Option<f64>,

    pub bingham_c0: Option<f64>,
    pub bingham_f0: Option<f64>,
    pub bingham_fc: Option<f64>,
    pub bingham_smoothing: Option<f64>,

    pub dahl_k: Option<f64>,
    pub dahl_k_wa: Option<f64>,
    pub dahl_k_wb: Option<f64>,
    pub dahl_rho: Option<f64>,
    pub dahl_v: Option<f64>,

    pub lugre_sigma0: Option<f64>,
    pub lugre_sigma1: Option<f64>,
    pub lugre_sigma2: Option<f64>,
    pub lugre_fc: Option<f64>,
    pub lugre_fs: Option<f64>,
    pub lugre_vs: Option<f64>,

    pub boucwen_gamma: Option<f64>,
    pub boucwen_beta: Option<f64>,
    pub boucwen_a: Option<f64>,
    pub boucwen_n: Option<u32>,
    pub boucwen_k0: Option<f64>,
    pub boucwen_u: Option<f64>,
    pub boucwen_c0a: Option<f64>,
    pub boucwen_c0b: Option<f64>,
    pub boucwen_alpha0a: Option<f64>,
    pub boucwen_alpha0b: Option<f64>,
    pub boucwen_f0: Option<f64>,
    pub boucwen_literal_beta_z: Option<bool>,
}

/// A fully defaulted single run plus the analysis knobs that go with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub scenario: Scenario,
    pub model: &'static str,
    pub signal: SignalPreset,
    pub out: Option<PathBuf>,
    pub band: f64,
    pub periods: u32,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            ConfigError::Parse {
                key: if key == "." { None } else { Some(key) },
                message: e.into_inner().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Keys set in `flags` replace those in `self`.
    pub fn overlay(mut self, flags: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        take!(
            model,
            signal,
            vehicle,
            dt,
            duration,
            seed,
            input_mode,
            damper_sign_literal,
            out,
            band,
            periods
        );
        self
    }

    pub fn model_name(&self) -> Result<&'static str, ConfigError> {
        canonical_model(self.model.as_deref().unwrap_or("passive"))
    }

    pub fn signal_preset(&self) -> Result<SignalPreset, ConfigError> {
        self.signal
            .as_deref()
            .unwrap_or("step")
            .parse()
            .map_err(|reason| ConfigError::Invalid { key: "signal", reason })
    }

    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let model = self.model_name()?;
        self.check_damper_keys(&[model])?;
        let signal = self.signal_preset()?;
        self.resolve_cell(model, signal)
    }

    /// Resolves one `(model, signal)` cell; damper keys of other models are
    /// ignored here and checked by [`RunConfig::check_damper_keys`].
    pub fn resolve_cell(&self, model: &'static str, signal: SignalPreset) -> Result<Resolved, ConfigError> {
        let params = self.vehicle()?;
        let damper = DamperConfig::new(self.damper(model)?).with_input_mode(self.input_mode.unwrap_or_default());
        let road = self.road(signal)?;
        let mut sc = Scenario::new(params, damper, road);
        if let Some(dt) = self.dt {
            sc.dt = dt;
        }
        if let Some(d) = self.duration {
            sc.duration = d;
        }
        if self.damper_sign_literal == Some(true) {
            sc.force_sign = ForceSign::Literal;
        }
        let band = self.band.unwrap_or(qcar_core::analysis::DEFAULT_BAND);
        if !(band.is_finite() && band > 0.0) {
            return Err(ConfigError::Invalid {
                key: "band",
                reason: format!("must be positive, got {band}"),
            });
        }
        let periods = self.periods.unwrap_or(DEFAULT_PERIODS);
        if periods == 0 {
            return Err(ConfigError::Invalid {
                key: "periods",
                reason: "must be at least 1".into(),
            });
        }
        Ok(Resolved {
            scenario: sc,
            model,
            signal,
            out: self.out.clone(),
            band,
            periods,
        })
    }

    fn vehicle(&self) -> Result<QuarterCarParams, ConfigError> {
        match self.vehicle.as_deref() {
            None | Some("table1") => {}
            Some(other) => {
                return Err(ConfigError::Invalid {
                    key: "vehicle",
                    reason: format!("unknown vehicle preset `{other}` (expected table1)"),
                })
            }
        }
        let mut p = QuarterCarParams::default();
        set(&mut p.m_s, self.m_s);
        set(&mut p.m_u, self.m_u);
        set(&mut p.k_s, self.k_s);
        set(&mut p.k_u, self.k_u);
        set(&mut p.c_s, self.c_s);
        set(&mut p.c_u, self.c_u);
        Ok(p)
    }

    fn damper(&self, model: &str) -> Result<DamperModel, ConfigError> {
        Ok(match model {
            "passive" => DamperModel::Passive,
            "bingham" => {
                let mut p = BinghamParams::default();
                set(&mut p.c0, self.bingham_c0);
                set(&mut p.f0, self.bingham_f0);
                set(&mut p.fc, self.bingham_fc);
                if self.bingham_smoothing.is_some() {
                    p.smoothing = self.bingham_smoothing;
                }
                DamperModel::Bingham(p)
            }
            "dahl" => {
                let mut p = DahlParams::default();
                set(&mut p.k, self.dahl_k);
                set(&mut p.k_wa, self.dahl_k_wa);
                set(&mut p.k_wb, self.dahl_k_wb);
                set(&mut p.rho, self.dahl_rho);
                set(&mut p.v, self.dahl_v);
                DamperModel::Dahl(p)
            }
            "lugre" => {
                let mut p = LuGreParams::default();
                set(&mut p.sigma0, self.lugre_sigma0);
                set(&mut p.sigma1, self.lugre_sigma1);
                set(&mut p.sigma2, self.lugre_sigma2);
                set(&mut p.fc, self.lugre_fc);
                set(&mut p.fs, self.lugre_fs);
                set(&mut p.vs, self.lugre_vs);
                DamperModel::LuGre(p)
            }
            "boucwen" => {
                let mut p = BoucWenParams::default();
                set(&mut p.gamma, self.boucwen_gamma);
                set(&mut p.beta, self.boucwen_beta);
                set(&mut p.a, self.boucwen_a);
                set(&mut p.n, self.boucwen_n);
                set(&mut p.k0, self.boucwen_k0);
                set(&mut p.u, self.boucwen_u);
                set(&mut p.c0a, self.boucwen_c0a);
                set(&mut p.c0b, self.boucwen_c0b);
                set(&mut p.alpha0a, self.boucwen_alpha0a);
                set(&mut p.alpha0b, self.boucwen_alpha0b);
                set(&mut p.f0, self.boucwen_f0);
                set(&mut p.literal_beta_z, self.boucwen_literal_beta_z);
                DamperModel::BoucWen(p)
            }
            other => unreachable!("model `{other}` is canonicalized before resolution"),
        })
    }

    /// Rejects damper keys whose model is not part of `models`.
    pub fn check_damper_keys(&self, models: &[&str]) -> Result<(), ConfigError> {
        let groups: [(&str, Vec<(&'static str, bool)>); 4] = [
            (
                "bingham",
                vec![
                    ("bingham_c0", self.bingham_c0.is_some()),
                    ("bingham_f0", self.bingham_f0.is_some()),
                    ("bingham_fc", self.bingham_fc.is_some()),
                    ("bingham_smoothing", self.bingham_smoothing.is_some()),
                ],
            ),
            (
                "dahl",
                vec![
                    ("dahl_k", self.dahl_k.is_some()),
                    ("dahl_k_wa", self.dahl_k_wa.is_some()),
                    ("dahl_k_wb", self.dahl_k_wb.is_some()),
                    ("dahl_rho", self.dahl_rho.is_some()),
                    ("dahl_v", self.dahl_v.is_some()),
                ],
            ),
            (
                "lugre",
                vec![
                    ("lugre_sigma0", self.lugre_sigma0.is_some()),
                    ("lugre_sigma1", self.lugre_sigma1.is_some()),
                    ("lugre_sigma2", self.lugre_sigma2.is_some()),
                    ("lugre_fc", self.lugre_fc.is_some()),
                    ("lugre_fs", self.lugre_fs.is_some()),
                    ("lugre_vs", self.lugre_vs.is_some()),
                ],
            ),
            (
                "boucwen",
                vec![
                    ("boucwen_gamma", self.boucwen_gamma.is_some()),
                    ("boucwen_beta", self.boucwen_beta.is_some()),
                    ("boucwen_a", self.boucwen_a.is_some()),
                    ("boucwen_n", self.boucwen_n.is_some()),
                    ("boucwen_k0", self.boucwen_k0.is_some()),
                    ("boucwen_u", self.boucwen_u.is_some()),
                    ("boucwen_c0a", self.boucwen_c0a.is_some()),
                    ("boucwen_c0b", self.boucwen_c0b.is_some()),
                    ("boucwen_alpha0a", self.boucwen_alpha0a.is_some()),
                    ("boucwen_alpha0b", self.boucwen_alpha0b.is_some()),
                    ("boucwen_f0", self.boucwen_f0.is_some()),
                    ("boucwen_literal_beta_z", self.boucwen_literal_beta_z.is_some()),
                ],
            ),
        ];
        for (model, keys) in groups {
            if models.contains(&model) {
                continue;
            }
            if let Some((key, _)) = keys.into_iter().find(|(_, set)| *set) {
                return Err(ConfigError::Invalid {
                    key,
                    reason: format!("applies to model `{model}`, which is not being simulated"),
                });
            }
        }
        Ok(())
    }

    fn road(&self, preset: SignalPreset) -> Result<RoadSignal, ConfigError> {
        let mut s = preset.signal(self.seed.unwrap_or(0));
        let unused = |key: &'static str, present: bool| -> Result<(), ConfigError> {
            if present {
                Err(ConfigError::Invalid {
                    key,
                    reason: format!("does not apply to signal `{preset}`"),
                })
            } else {
                Ok(())
            }
        };
        match &mut s {
            RoadSignal::Step {
                magnitude,
                t0,
                rise_time,
            } => {
                set(magnitude, self.amplitude);
                set(t0, self.step_time);
                set(rise_time, self.rise_time);
                unused("frequency", self.frequency.is_some())?;
                unused("noise_bound", self.noise_bound.is_some())?;
                unused("sample_period", self.sample_period.is_some())?;
            }
            RoadSignal::Sine { amplitude, frequency } => {
                set(amplitude, self.amplitude);
                set(frequency, self.frequency);
                unused("noise_bound", self.noise_bound.is_some())?;
                unused("sample_period", self.sample_period.is_some())?;
            }
            RoadSignal::WhiteNoise {
                bound, sample_period, ..
            } => {
                set(bound, self.noise_bound);
                set(sample_period, self.sample_period);
                unused("amplitude", self.amplitude.is_some())?;
                unused("frequency", self.frequency.is_some())?;
            }
            RoadSignal::SineNoise {
                amplitude,
                frequency,
                noise_bound,
                sample_period,
                ..
            } => {
                set(amplitude, self.amplitude);
                set(frequency, self.frequency);
                set(noise_bound, self.noise_bound);
                set(sample_period, self.sample_period);
            }
        }
        if !matches!(s, RoadSignal::Step { .. }) {
            unused("step_time", self.step_time.is_some())?;
            unused("rise_time", self.rise_time.is_some())?;
        }
        Ok(s)
    }
}

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

pub fn canonical_model(name: &str) -> Result<&'static str, ConfigError> {
    MODEL_NAMES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map(|(_, canon)| *canon)
        .ok_or_else(|| ConfigError::Invalid {
            key: "model",
            reason: format!(
                "unknown model `{name}` (expected passive, bingham, dahl, lugre, boucwen or table2..table5)"
            ),
        })
}
