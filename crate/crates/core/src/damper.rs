//! Magnetorheological damper force laws.
//!
//! Every model maps a stroke (displacement `z`, velocity `dz`) plus at most
//! one scalar internal state to a damper force and the time derivative of
//! that internal state:
//!
//! | model    | internal state | force                                       |
//! |----------|----------------|---------------------------------------------|
//! | Bingham  | none           | `Fc·sgn(dz) + c0·dz + F0`                   |
//! | Dahl     | `w`            | `k·dz + (k_wa + k_wb·v)·w`                  |
//! | LuGre    | `y` [m]        | `σ0·y + σ1·dy + σ2·dz`                      |
//! | Bouc-Wen | `y`            | `(C0a + C0b·u)·dz + K0·z + (α0a + α0b·u)·y + f0` |
//!
//! The internal-state equations are
//!
//! ```text
//! Dahl:     dw/dt = ρ (dz − |dz| w)
//! LuGre:    dy/dt = dz − |dz| y / y_ss(dz),
//!           y_ss(dz) = (Fc + (Fs − Fc) exp(−(dz/vs)²)) / σ0
//! Bouc-Wen: dy/dt = −γ |dz| y |y|^(n−1) − β dz |y|^n + A dz
//! ```
//!
//! Control voltages (`v` for Dahl, `u` for Bouc-Wen) are constant for a run.

use serde::{Deserialize, Serialize};

use crate::error::{DamperError, ParamError};
use crate::model::PlantState;

fn check_finite(name: &'static str, v: f64) -> Result<(), ParamError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ParamError::NonFinite(name))
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<(), ParamError> {
    check_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(ParamError::NonPositiveParameter(name))
    }
}

fn check_non_negative(name: &'static str, v: f64) -> Result<(), ParamError> {
    check_finite(name, v)?;
    if v >= 0.0 {
        Ok(())
    } else {
        Err(ParamError::NegativeParameter(name))
    }
}

/// Sign function with `sgn(0) = 0`.
#[inline]
pub fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Viscous-plus-Coulomb (Bingham plastic) damper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinghamParams {
    /// Damping constant [N·s/m].
    pub c0: f64,
    /// Offset force [N].
    pub f0: f64,
    /// Frictional (yield) force [N].
    pub fc: f64,
    /// When set, `sgn(v)` is replaced by `tanh(v/ε)` with this ε [m/s].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smoothing: Option<f64>,
}

impl Default for BinghamParams {
    fn default() -> Self {
        Self {
            c0: 320.0,
            f0: 10.0,
            fc: 100.0,
            smoothing: None,
        }
    }
}

impl BinghamParams {
    /// Default smoothing width when smoothing is switched on.
    pub const DEFAULT_SMOOTHING: f64 = 1e-4;

    pub fn validate(&self) -> Result<(), ParamError> {
        check_positive("c0", self.c0)?;
        check_non_negative("fc", self.fc)?;
        check_finite("f0", self.f0)?;
        if let Some(eps) = self.smoothing {
            check_positive("smoothing", eps)?;
        }
        Ok(())
    }
}

/// Dahl hysteresis damper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DahlParams {
    pub k: f64,
    pub k_wa: f64,
    pub k_wb: f64,
    /// Hysteresis rate [1/m].
    pub rho: f64,
    /// Control voltage [V].
    pub v: f64,
}

impl Default for DahlParams {
    fn default() -> Self {
        Self {
            k: 350.0,
            k_wa: 800.0,
            k_wb: 250.0,
            rho: 25.0,
            v: 5.0,
        }
    }
}

impl DahlParams {
    /// `k_wa + k_wb·v`, the force carried by a fully saturated `w`.
    pub fn hysteresis_gain(&self) -> f64 {
        self.k_wa + self.k_wb * self.v
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_finite("k", self.k)?;
        check_finite("k_wa", self.k_wa)?;
        check_finite("k_wb", self.k_wb)?;
        check_finite("v", self.v)?;
        check_positive("rho", self.rho)?;
        if self.hysteresis_gain() < 0.0 {
            return Err(ParamError::Invalid {
                name: "k_wa",
                reason: "k_wa + k_wb·v must be non-negative".into(),
            });
        }
        Ok(())
    }
}

/// LuGre bristle-friction damper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LuGreParams {
    /// Bristle stiffness [N/m].
    pub sigma0: f64,
    /// Bristle damping [N·s/m].
    pub sigma1: f64,
    /// Viscous friction [N·s/m].
    pub sigma2: f64,
    /// Coulomb friction force [N].
    pub fc: f64,
    /// Stiction force [N].
    pub fs: f64,
    /// Stribeck velocity [m/s].
    pub vs: f64,
}

impl Default for LuGreParams {
    fn default() -> Self {
        Self {
            sigma0: 500.0,
            sigma1: 1e4,
            sigma2: 0.6,
            fc: 10.0,
            fs: 25.0,
            vs: 0.04,
        }
    }
}

impl LuGreParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        check_positive("sigma0", self.sigma0)?;
        check_finite("sigma1", self.sigma1)?;
        check_finite("sigma2", self.sigma2)?;
        check_positive("fc", self.fc)?;
        check_positive("vs", self.vs)?;
        check_finite("fs", self.fs)?;
        if self.fs < self.fc {
            return Err(ParamError::Invalid {
                name: "fs",
                reason: "stiction force must be at least the Coulomb force".into(),
            });
        }
        Ok(())
    }
}

/// Bouc-Wen hysteresis damper with voltage-dependent coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoucWenParams {
    pub gamma: f64,
    pub beta: f64,
    pub a: f64,
    /// Loop sharpness exponent, at least 1.
    pub n: u32,
    /// Spring element stiffness [N/m].
    pub k0: f64,
    /// Control voltage [V].
    pub u: f64,
    pub c0a: f64,
    pub c0b: f64,
    pub alpha0a: f64,
    pub alpha0b: f64,
    /// Pre-yield force [N].
    pub f0: f64,
    /// Use `β·z` instead of `β·dz` in the evolution equation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub literal_beta_z: bool,
}

impl Default for BoucWenParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            beta: 0.0,
            a: 1.5,
            n: 2,
            k0: 300.0,
            u: 5.0,
            c0a: 4400.0,
            c0b: 442.0,
            alpha0a: 10872.0,
            alpha0b: 49616.0,
            f0: 0.0,
            literal_beta_z: false,
        }
    }
}

impl BoucWenParams {
    /// Viscous coefficient `C0(u) = C0a + C0b·u`.
    pub fn c0(&self) -> f64 {
        self.c0a + self.c0b * self.u
    }

    /// Hysteretic coefficient `α(u) = α0a + α0b·u`.
    pub fn alpha(&self) -> f64 {
        self.alpha0a + self.alpha0b * self.u
    }

    /// Saturation magnitude `(A/(γ+β))^(1/n)` of the evolutionary variable.
    pub fn saturation(&self) -> f64 {
        (self.a / (self.gamma + self.beta)).powf(1.0 / f64::from(self.n))
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, v) in [
            ("gamma", self.gamma),
            ("beta", self.beta),
            ("k0", self.k0),
            ("u", self.u),
            ("c0a", self.c0a),
            ("c0b", self.c0b),
            ("alpha0a", self.alpha0a),
            ("alpha0b", self.alpha0b),
            ("f0", self.f0),
        ] {
            check_finite(name, v)?;
        }
        if self.n < 1 {
            return Err(ParamError::Invalid {
                name: "n",
                reason: "exponent must be at least 1".into(),
            });
        }
        check_positive("a", self.a)?;
        if self.gamma + self.beta <= 0.0 {
            return Err(ParamError::Invalid {
                name: "gamma",
                reason: "gamma + beta must be strictly positive".into(),
            });
        }
        if self.c0() <= 0.0 {
            return Err(ParamError::Invalid {
                name: "c0a",
                reason: "C0a + C0b·u must be strictly positive".into(),
            });
        }
        Ok(())
    }
}

/// `Fc·sgn(dz) + c0·dz + F0`, with `sgn(0) = 0` unless smoothing is enabled.
pub fn bingham_force(dz_rel: f64, p: &BinghamParams) -> f64 {
    let s = match p.smoothing {
        Some(eps) => (dz_rel / eps).tanh(),
        None => sgn(dz_rel),
    };
    p.fc * s + p.c0 * dz_rel + p.f0
}

pub fn dahl_force(dz: f64, w: f64, p: &DahlParams) -> f64 {
    p.k * dz + p.hysteresis_gain() * w
}

pub fn dahl_state_deriv(dz: f64, w: f64, p: &DahlParams) -> f64 {
    p.rho * (dz - dz.abs() * w)
}

/// Steady-state bristle deflection for a constant sliding velocity.
pub fn lugre_yss(dz: f64, p: &LuGreParams) -> f64 {
    let ratio = dz / p.vs;
    (p.fc + (p.fs - p.fc) * (-ratio * ratio).exp()) / p.sigma0
}

pub fn lugre_state_deriv(dz: f64, y: f64, p: &LuGreParams) -> f64 {
    dz - dz.abs() / lugre_yss(dz, p) * y
}

pub fn lugre_force(y: f64, dy: f64, dz: f64, p: &LuGreParams) -> f64 {
    p.sigma0 * y + p.sigma1 * dy + p.sigma2 * dz
}

/// Evolution of the Bouc-Wen variable. The `β` term is driven by `dz`
/// unless [`BoucWenParams::literal_beta_z`] asks for the displacement.
pub fn boucwen_state_deriv(dz: f64, z: f64, y: f64, p: &BoucWenParams) -> f64 {
    let ay = y.abs();
    let ay_n1 = ay.powi(p.n as i32 - 1);
    let ay_n = ay_n1 * ay;
    let beta_drive = if p.literal_beta_z { z } else { dz };
    -p.gamma * dz.abs() * y * ay_n1 - p.beta * beta_drive * ay_n + p.a * dz
}

pub fn boucwen_force(dz: f64, z: f64, y: f64, p: &BoucWenParams) -> f64 {
    p.c0() * dz + p.k0 * z + p.alpha() * y + p.f0
}

/// Which kinematic signal the damper sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputMode {
    /// Stroke across the damper: `(z_s − z_u, ż_s − ż_u)`.
    #[default]
    Relative,
    /// Sprung-mass absolute motion: `(z_s, ż_s)`.
    SprungAbsolute,
}

impl InputMode {
    /// Stroke displacement and velocity seen by the damper.
    #[inline]
    pub fn stroke(self, x: &PlantState) -> (f64, f64) {
        match self {
            InputMode::Relative => (x.z_s - x.z_u, x.dz_s - x.dz_u),
            InputMode::SprungAbsolute => (x.z_s, x.dz_s),
        }
    }
}

/// One damper model, or none at all for the passive plant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum DamperModel {
    Passive,
    Bingham(BinghamParams),
    Dahl(DahlParams),
    #[serde(rename = "lugre")]
    LuGre(LuGreParams),
    #[serde(rename = "boucwen")]
    BoucWen(BoucWenParams),
}

impl DamperModel {
    pub fn name(&self) -> &'static str {
        match self {
            DamperModel::Passive => "passive",
            DamperModel::Bingham(_) => "bingham",
            DamperModel::Dahl(_) => "dahl",
            DamperModel::LuGre(_) => "lugre",
            DamperModel::BoucWen(_) => "boucwen",
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match self {
            DamperModel::Passive => Ok(()),
            DamperModel::Bingham(p) => p.validate(),
            DamperModel::Dahl(p) => p.validate(),
            DamperModel::LuGre(p) => p.validate(),
            DamperModel::BoucWen(p) => p.validate(),
        }
    }

    /// Whether the model carries an internal state variable.
    pub fn has_internal_state(&self) -> bool {
        matches!(
            self,
            DamperModel::Dahl(_) | DamperModel::LuGre(_) | DamperModel::BoucWen(_)
        )
    }

    /// Zero (unmagnetized) internal state matching this model.
    pub fn rest_state(&self) -> DamperInternalState {
        match self {
            DamperModel::Passive | DamperModel::Bingham(_) => DamperInternalState::Empty,
            DamperModel::Dahl(_) => DamperInternalState::Dahl { w: 0.0 },
            DamperModel::LuGre(_) => DamperInternalState::LuGre { y: 0.0 },
            DamperModel::BoucWen(_) => DamperInternalState::BoucWen { y: 0.0 },
        }
    }

    /// Name and magnitude bound of the internal state, for models where a
    /// trajectory started inside the bound can never leave it.
    pub fn internal_bound(&self) -> Option<(&'static str, f64)> {
        match self {
            DamperModel::Dahl(_) => Some(("w", 1.0)),
            DamperModel::BoucWen(p) if !p.literal_beta_z => Some(("y", p.saturation())),
            _ => None,
        }
    }

    /// Force and internal-state rate for a scalar internal state. Models
    /// without internal state ignore `s` and return a zero rate.
    #[inline]
    pub fn evaluate(&self, z: f64, dz: f64, s: f64) -> (f64, f64) {
        match self {
            DamperModel::Passive => (0.0, 0.0),
            DamperModel::Bingham(p) => (bingham_force(dz, p), 0.0),
            DamperModel::Dahl(p) => (dahl_force(dz, s, p), dahl_state_deriv(dz, s, p)),
            DamperModel::LuGre(p) => {
                let dy = lugre_state_deriv(dz, s, p);
                (lugre_force(s, dy, dz, p), dy)
            }
            DamperModel::BoucWen(p) => (boucwen_force(dz, z, s, p), boucwen_state_deriv(dz, z, s, p)),
        }
    }
}

/// Damper model plus the choice of kinematic input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DamperConfig {
    pub model: DamperModel,
    #[serde(default)]
    pub input_mode: InputMode,
}

impl DamperConfig {
    pub fn new(model: DamperModel) -> Self {
        Self {
            model,
            input_mode: InputMode::Relative,
        }
    }

    pub fn with_input_mode(mut self, mode: InputMode) -> Self {
        self.input_mode = mode;
        self
    }

    pub fn passive() -> Self {
        Self::new(DamperModel::Passive)
    }

    pub fn bingham() -> Self {
        Self::new(DamperModel::Bingham(BinghamParams::default()))
    }

    pub fn dahl() -> Self {
        Self::new(DamperModel::Dahl(DahlParams::default()))
    }

    pub fn lugre() -> Self {
        Self::new(DamperModel::LuGre(LuGreParams::default()))
    }

    pub fn boucwen() -> Self {
        Self::new(DamperModel::BoucWen(BoucWenParams::default()))
    }

    /// The five reference configurations: passive and the four MR models
    /// with their default parameter sets.
    pub fn reference_set() -> [Self; 5] {
        [
            Self::passive(),
            Self::bingham(),
            Self::dahl(),
            Self::lugre(),
            Self::boucwen(),
        ]
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.model.validate()
    }
}

/// Internal hysteresis variable of the active damper.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum DamperInternalState {
    /// Passive and Bingham carry no state.
    #[default]
    Empty,
    Dahl {
        w: f64,
    },
    #[serde(rename = "lugre")]
    LuGre {
        y: f64,
    },
    #[serde(rename = "boucwen")]
    BoucWen {
        y: f64,
    },
}

impl DamperInternalState {
    pub fn name(&self) -> &'static str {
        match self {
            DamperInternalState::Empty => "empty",
            DamperInternalState::Dahl { .. } => "dahl",
            DamperInternalState::LuGre { .. } => "lugre",
            DamperInternalState::BoucWen { .. } => "boucwen",
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            DamperInternalState::Empty => None,
            DamperInternalState::Dahl { w } => Some(w),
            DamperInternalState::LuGre { y } | DamperInternalState::BoucWen { y } => Some(y),
        }
    }

    /// Checks that this state belongs to `model`.
    pub fn check_matches(&self, model: &DamperModel) -> Result<(), DamperError> {
        let ok = matches!(
            (model, self),
            (DamperModel::Passive, DamperInternalState::Empty)
                | (DamperModel::Bingham(_), DamperInternalState::Empty)
                | (DamperModel::Dahl(_), DamperInternalState::Dahl { .. })
                | (DamperModel::LuGre(_), DamperInternalState::LuGre { .. })
                | (DamperModel::BoucWen(_), DamperInternalState::BoucWen { .. })
        );
        if ok {
            Ok(())
        } else {
            Err(DamperError::StateModelMismatch {
                model: model.name(),
                state: self.name(),
            })
        }
    }

    fn with_value(self, v: f64) -> Self {
        match self {
            DamperInternalState::Empty => DamperInternalState::Empty,
            DamperInternalState::Dahl { .. } => DamperInternalState::Dahl { w: v },
            DamperInternalState::LuGre { .. } => DamperInternalState::LuGre { y: v },
            DamperInternalState::BoucWen { .. } => DamperInternalState::BoucWen { y: v },
        }
    }
}

/// Evaluates the configured damper at the given stroke.
///
/// Returns the damper force and the internal-state derivative, the latter
/// tagged with the same variant as `s`.
pub fn damper_eval(
    cfg: &DamperConfig,
    z_rel: f64,
    dz_rel: f64,
    s: DamperInternalState,
) -> Result<(f64, DamperInternalState), DamperError> {
    s.check_matches(&cfg.model)?;
    let (force, rate) = cfg.model.evaluate(z_rel, dz_rel, s.value().unwrap_or(0.0));
    Ok((force, s.with_value(rate)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn bingham_examples() {
        let p = BinghamParams::default();
        assert_eq!(bingham_force(0.0, &p), 10.0);
        assert!(close(bingham_force(1.0, &p), 430.0, TOL));
        assert!(close(bingham_force(-0.5, &p), -250.0, TOL));
    }

    #[test]
    fn bingham_smoothing_is_continuous_at_zero() {
        let p = BinghamParams {
            smoothing: Some(BinghamParams::DEFAULT_SMOOTHING),
            ..Default::default()
        };
        assert_eq!(bingham_force(0.0, &p), 10.0);
        assert!((bingham_force(1e-10, &p) - 10.0).abs() < 1e-3);
        // far from zero it matches the exact signum
        assert!(close(bingham_force(1.0, &p), 430.0, 1e-9));
    }

    #[test]
    fn dahl_examples() {
        let p = DahlParams::default();
        assert_eq!(dahl_force(0.0, 0.0, &p), 0.0);
        assert!(close(dahl_force(0.0, 1.0, &p), 2050.0, TOL));
        assert!(close(dahl_force(0.2, -1.0, &p), -1980.0, TOL));

        assert_eq!(dahl_state_deriv(0.0, 0.5, &p), 0.0);
        assert_eq!(dahl_state_deriv(1.0, 1.0, &p), 0.0);
        assert!(close(dahl_state_deriv(1.0, 0.0, &p), 25.0, TOL));
    }

    #[test]
    fn lugre_yss_examples() {
        let p = LuGreParams::default();
        assert!(close(lugre_yss(0.0, &p), 0.05, TOL));
        let expected = (10.0 + 15.0 * (-1.0f64).exp()) / 500.0;
        assert!(close(lugre_yss(0.04, &p), expected, 1e-12));
        assert!((lugre_yss(0.04, &p) - 0.0310364).abs() < 1e-7);
        assert!((lugre_yss(10.0, &p) - 0.02).abs() < 1e-9);
        assert!((lugre_yss(-10.0, &p) - 0.02).abs() < 1e-9);
    }

    #[test]
    fn lugre_state_examples() {
        let p = LuGreParams::default();
        for y in [-0.3, 0.0, 0.01, 7.0] {
            assert_eq!(lugre_state_deriv(0.0, y, &p), 0.0);
        }
        for dz in [0.01, 0.04, 0.3, 2.0] {
            let y = lugre_yss(dz, &p);
            assert!(lugre_state_deriv(dz, y, &p).abs() < 1e-15);
        }
        assert!(close(lugre_state_deriv(0.1, 0.0, &p), 0.1, TOL));
    }

    #[test]
    fn lugre_force_examples() {
        let p = LuGreParams::default();
        assert_eq!(lugre_force(0.0, 0.0, 0.0, &p), 0.0);
        assert!(close(lugre_force(0.05, 0.0, 0.0, &p), 25.0, TOL));
        assert!(close(lugre_force(0.0, 0.0, 1.0, &p), 0.6, TOL));
    }

    #[test]
    fn boucwen_state_examples() {
        let p = BoucWenParams::default();
        for y in [-1.0, 0.0, 0.4, 1.2] {
            assert_eq!(boucwen_state_deriv(0.0, 0.3, y, &p), 0.0);
        }
        assert!(close(boucwen_state_deriv(1.0, 0.0, 0.0, &p), 1.5, TOL));
        let y_eq = 1.5f64.sqrt();
        assert!(boucwen_state_deriv(1.0, 0.0, y_eq, &p).abs() < 1e-12);
        assert!((y_eq - 1.224745).abs() < 1e-6);
        assert!(close(p.saturation(), y_eq, 1e-15));
    }

    #[test]
    fn boucwen_literal_flag_only_matters_with_beta() {
        let mut p = BoucWenParams::default();
        let a = boucwen_state_deriv(0.3, 0.02, 0.5, &p);
        p.literal_beta_z = true;
        assert_eq!(a, boucwen_state_deriv(0.3, 0.02, 0.5, &p));

        p.beta = 0.5;
        // -β·z·|y|^n with z = 0.02, |y| = 0.5
        let lit = boucwen_state_deriv(0.3, 0.02, 0.5, &p);
        p.literal_beta_z = false;
        let std = boucwen_state_deriv(0.3, 0.02, 0.5, &p);
        assert!(close(lit - std, -0.5 * (0.02 - 0.3) * 0.25, 1e-12));
    }

    #[test]
    fn boucwen_force_examples() {
        let p = BoucWenParams::default();
        assert_eq!(boucwen_force(0.0, 0.0, 0.0, &p), 0.0);
        assert_eq!(p.c0(), 6610.0);
        assert_eq!(p.alpha(), 258952.0);
        assert!(close(boucwen_force(0.01, 0.0, 0.0, &p), 66.1, TOL));
        assert!(close(boucwen_force(0.0, 0.0, 0.001, &p), 258.952, TOL));
    }

    #[test]
    fn eval_dispatch() {
        let passive = DamperConfig::passive();
        assert_eq!(
            damper_eval(&passive, 0.3, -2.0, DamperInternalState::Empty),
            Ok((0.0, DamperInternalState::Empty))
        );

        let (f, ds) = damper_eval(&DamperConfig::bingham(), 0.0, 1.0, DamperInternalState::Empty).unwrap();
        assert!(close(f, 430.0, TOL));
        assert_eq!(ds, DamperInternalState::Empty);

        let (f, ds) = damper_eval(&DamperConfig::dahl(), 0.0, 1.0, DamperInternalState::Dahl { w: 0.0 }).unwrap();
        assert!(close(f, 350.0, TOL));
        assert_eq!(ds, DamperInternalState::Dahl { w: 25.0 });

        let err = damper_eval(&DamperConfig::dahl(), 0.0, 1.0, DamperInternalState::LuGre { y: 0.0 });
        assert_eq!(
            err,
            Err(DamperError::StateModelMismatch {
                model: "dahl",
                state: "lugre"
            })
        );
    }

    #[test]
    fn stroke_modes() {
        let x = PlantState::new(0.3, 1.0, 0.1, -0.5);
        assert_eq!(InputMode::Relative.stroke(&x), (0.3 - 0.1, 1.5));
        assert_eq!(InputMode::SprungAbsolute.stroke(&x), (0.3, 1.0));
        assert_eq!(InputMode::default(), InputMode::Relative);
    }

    #[test]
    fn reference_parameters_validate() {
        for cfg in DamperConfig::reference_set() {
            cfg.validate().unwrap();
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        let p = LuGreParams {
            fs: 5.0,
            ..Default::default()
        };
        assert!(matches!(p.validate(), Err(ParamError::Invalid { name: "fs", .. })));
        let p = BinghamParams {
            c0: 0.0,
            ..Default::default()
        };
        assert_eq!(p.validate(), Err(ParamError::NonPositiveParameter("c0")));
        let p = BoucWenParams {
            n: 0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let p = BoucWenParams {
            gamma: -1.0,
            beta: 0.5,
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let p = DahlParams {
            rho: 0.0,
            ..Default::default()
        };
        assert_eq!(p.validate(), Err(ParamError::NonPositiveParameter("rho")));
        let p = DahlParams {
            k_wa: -2000.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }
}
