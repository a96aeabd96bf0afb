//! Road excitation signals.
//!
//! Every signal yields a road displacement `r(t)` and velocity `ṙ(t)`.
//!
//! Noise is a band-limited realization of Gaussian white noise: independent
//! samples `N(0, σ²)` (σ defaults to `bound/3`), clipped to `±bound`, held on
//! a grid of `sample_period` and joined by straight lines. `ṙ` is the slope of
//! the current segment. Sample `k` is a pure function of `(seed, k)`: the
//! ChaCha8 stream seeded with `seed` is positioned at word `4k`, two `u64`
//! values are read and turned into one normal deviate by Box-Muller using the
//! portable `libm` routines. The stream is therefore identical on every
//! platform and can be evaluated at arbitrary times in any order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::plant::RoadInput;

/// Peak road displacement of the reference experiments [m].
pub const REFERENCE_MAGNITUDE: f64 = 0.075;
/// Half-range of the reference noise [m].
pub const REFERENCE_NOISE_BOUND: f64 = 0.0375;
/// Default hold period of the noise samples [s].
pub const DEFAULT_SAMPLE_PERIOD: f64 = 0.01;
pub const LOW_FREQUENCY: f64 = 2.1;
pub const HIGH_FREQUENCY: f64 = 20.8;

/// Clipped, linearly interpolated Gaussian sample stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseStream {
    pub seed: u64,
    pub bound: f64,
    pub sigma: f64,
    pub sample_period: f64,
}

impl NoiseStream {
    /// Standard normal deviate number `k` of the stream.
    pub fn standard_normal(seed: u64, k: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(u128::from(k) * 4);
        let a = rng.next_u64();
        let b = rng.next_u64();
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        let u1 = ((a >> 11) as f64 + 1.0) * SCALE; // (0, 1]
        let u2 = (b >> 11) as f64 * SCALE; // [0, 1)
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
    }

    /// Held sample `k`, already scaled and clipped.
    pub fn sample(&self, k: u64) -> f64 {
        (self.sigma * Self::standard_normal(self.seed, k)).clamp(-self.bound, self.bound)
    }

    pub fn eval(&self, t: f64) -> RoadInput {
        let pos = t.max(0.0) / self.sample_period;
        let k = pos.floor();
        let frac = pos - k;
        let k = k as u64;
        let a = self.sample(k);
        let b = self.sample(k + 1);
        let slope = b - a;
        // a + frac·(b − a) can round outside ±bound when a, b sit on opposite clips
        let r = (a + frac * slope).clamp(-self.bound, self.bound);
        RoadInput::new(r, slope / self.sample_period)
    }
}

fn default_sample_period() -> f64 {
    DEFAULT_SAMPLE_PERIOD
}

/// Road excitation descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RoadSignal {
    /// Heaviside step of height `magnitude` at `t0`. With a positive
    /// `rise_time` the jump becomes a linear ramp with finite `ṙ`.
    Step {
        magnitude: f64,
        #[serde(default)]
        t0: f64,
        #[serde(default)]
        rise_time: f64,
    },
    Sine {
        amplitude: f64,
        frequency: f64,
    },
    WhiteNoise {
        bound: f64,
        #[serde(default = "default_sample_period")]
        sample_period: f64,
        #[serde(default)]
        seed: u64,
        /// Standard deviation before clipping; `bound/3` when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<f64>,
    },
    SineNoise {
        amplitude: f64,
        frequency: f64,
        noise_bound: f64,
        #[serde(default = "default_sample_period")]
        sample_period: f64,
        #[serde(default)]
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<f64>,
    },
}

fn sine(amplitude: f64, frequency: f64, t: f64) -> RoadInput {
    let omega = 2.0 * PI * frequency;
    let phase = omega * t;
    RoadInput::new(amplitude * phase.sin(), omega * amplitude * phase.cos())
}

impl RoadSignal {
    /// Flat road.
    pub fn zero() -> Self {
        RoadSignal::Step {
            magnitude: 0.0,
            t0: 0.0,
            rise_time: 0.0,
        }
    }

    pub fn step(magnitude: f64) -> Self {
        RoadSignal::Step {
            magnitude,
            t0: 0.0,
            rise_time: 0.0,
        }
    }

    pub fn sine(amplitude: f64, frequency: f64) -> Self {
        RoadSignal::Sine { amplitude, frequency }
    }

    pub fn white_noise(bound: f64, sample_period: f64, seed: u64) -> Self {
        RoadSignal::WhiteNoise {
            bound,
            sample_period,
            seed,
            sigma: None,
        }
    }

    pub fn sine_noise(amplitude: f64, frequency: f64, noise_bound: f64, sample_period: f64, seed: u64) -> Self {
        RoadSignal::SineNoise {
            amplitude,
            frequency,
            noise_bound,
            sample_period,
            seed,
            sigma: None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RoadSignal::Step { .. } => "step",
            RoadSignal::Sine { .. } => "sine",
            RoadSignal::WhiteNoise { .. } => "white-noise",
            RoadSignal::SineNoise { .. } => "sine-noise",
        }
    }

    /// Step height, for signals that have one.
    pub fn step_magnitude(&self) -> Option<f64> {
        match *self {
            RoadSignal::Step { magnitude, .. } => Some(magnitude),
            _ => None,
        }
    }

    /// Dominant periodic frequency, if the signal has one.
    pub fn frequency(&self) -> Option<f64> {
        match *self {
            RoadSignal::Sine { frequency, .. } | RoadSignal::SineNoise { frequency, .. } => Some(frequency),
            _ => None,
        }
    }

    /// Returns a copy with a new noise seed. Deterministic signals are unchanged.
    pub fn with_seed(mut self, new_seed: u64) -> Self {
        match &mut self {
            RoadSignal::WhiteNoise { seed, .. } | RoadSignal::SineNoise { seed, .. } => *seed = new_seed,
            _ => {}
        }
        self
    }

    fn noise(&self) -> Option<NoiseStream> {
        match *self {
            RoadSignal::WhiteNoise {
                bound,
                sample_period,
                seed,
                sigma,
            } => Some(NoiseStream {
                seed,
                bound,
                sigma: sigma.unwrap_or(bound / 3.0),
                sample_period,
            }),
            RoadSignal::SineNoise {
                noise_bound,
                sample_period,
                seed,
                sigma,
                ..
            } => Some(NoiseStream {
                seed,
                bound: noise_bound,
                sigma: sigma.unwrap_or(noise_bound / 3.0),
                sample_period,
            }),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        fn non_negative(name: &'static str, v: f64) -> Result<(), ParamError> {
            if !v.is_finite() {
                Err(ParamError::NonFinite(name))
            } else if v < 0.0 {
                Err(ParamError::NegativeParameter(name))
            } else {
                Ok(())
            }
        }
        fn positive(name: &'static str, v: f64) -> Result<(), ParamError> {
            if !v.is_finite() {
                Err(ParamError::NonFinite(name))
            } else if v <= 0.0 {
                Err(ParamError::NonPositiveParameter(name))
            } else {
                Ok(())
            }
        }
        match *self {
            RoadSignal::Step {
                magnitude,
                t0,
                rise_time,
            } => {
                non_negative("magnitude", magnitude)?;
                non_negative("t0", t0)?;
                non_negative("rise_time", rise_time)
            }
            RoadSignal::Sine { amplitude, frequency } => {
                non_negative("amplitude", amplitude)?;
                positive("frequency", frequency)
            }
            RoadSignal::WhiteNoise {
                bound,
                sample_period,
                sigma,
                ..
            } => {
                non_negative("bound", bound)?;
                positive("sample_period", sample_period)?;
                sigma.map_or(Ok(()), |s| non_negative("sigma", s))
            }
            RoadSignal::SineNoise {
                amplitude,
                frequency,
                noise_bound,
                sample_period,
                sigma,
                ..
            } => {
                non_negative("amplitude", amplitude)?;
                positive("frequency", frequency)?;
                non_negative("noise_bound", noise_bound)?;
                positive("sample_period", sample_period)?;
                sigma.map_or(Ok(()), |s| non_negative("sigma", s))
            }
        }
    }

    /// Road displacement and velocity at time `t ≥ 0`.
    pub fn eval(&self, t: f64) -> RoadInput {
        match *self {
            RoadSignal::Step {
                magnitude,
                t0,
                rise_time,
            } => {
                if t < t0 {
                    RoadInput::ZERO
                } else if rise_time > 0.0 && t < t0 + rise_time {
                    let slope = magnitude / rise_time;
                    RoadInput::new(slope * (t - t0), slope)
                } else {
                    RoadInput::new(magnitude, 0.0)
                }
            }
            RoadSignal::Sine { amplitude, frequency } => sine(amplitude, frequency, t),
            RoadSignal::WhiteNoise { .. } => self.noise().map(|n| n.eval(t)).unwrap_or_default(),
            RoadSignal::SineNoise {
                amplitude, frequency, ..
            } => {
                let s = sine(amplitude, frequency, t);
                let n = self.noise().map(|n| n.eval(t)).unwrap_or_default();
                RoadInput::new(s.r + n.r, s.dr + n.dr)
            }
        }
    }
}

/// Free function form of [`RoadSignal::eval`].
pub fn eval_signal(s: &RoadSignal, t: f64) -> RoadInput {
    s.eval(t)
}

/// The five reference road excitations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalPreset {
    Noise,
    Step,
    SineLow,
    SineHigh,
    SineNoise,
}

impl SignalPreset {
    pub const ALL: [SignalPreset; 5] = [
        SignalPreset::Noise,
        SignalPreset::Step,
        SignalPreset::SineLow,
        SignalPreset::SineHigh,
        SignalPreset::SineNoise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SignalPreset::Noise => "noise",
            SignalPreset::Step => "step",
            SignalPreset::SineLow => "sine-low",
            SignalPreset::SineHigh => "sine-high",
            SignalPreset::SineNoise => "sine-noise",
        }
    }

    pub fn signal(self, seed: u64) -> RoadSignal {
        match self {
            SignalPreset::Noise => RoadSignal::white_noise(REFERENCE_NOISE_BOUND, DEFAULT_SAMPLE_PERIOD, seed),
            SignalPreset::Step => RoadSignal::step(REFERENCE_MAGNITUDE),
            SignalPreset::SineLow => RoadSignal::sine(REFERENCE_MAGNITUDE, LOW_FREQUENCY),
            SignalPreset::SineHigh => RoadSignal::sine(REFERENCE_MAGNITUDE, HIGH_FREQUENCY),
            SignalPreset::SineNoise => RoadSignal::sine_noise(
                REFERENCE_MAGNITUDE,
                HIGH_FREQUENCY,
                REFERENCE_NOISE_BOUND,
                DEFAULT_SAMPLE_PERIOD,
                seed,
            ),
        }
    }
}

impl fmt::Display for SignalPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignalPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            format!("unknown signal preset `{s}` (expected noise, step, sine-low, sine-high or sine-noise)")
        })
    }
}
