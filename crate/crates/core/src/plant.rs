//! Equations of motion of the two-mass quarter car.
//!
//! ```text
//! m_s z̈_s = −c_s(ż_s − ż_u) − k_s(z_s − z_u) − F
//! m_u z̈_u = −c_s(ż_u − ż_s) − k_s(z_u − z_s) − c_u ż_u − k_u z_u + F + k_u r + c_u ṙ
//! ```
//!
//! `F` is the MR damper force (zero for the passive plant). It acts on the
//! sprung mass with a minus sign and on the unsprung mass with a plus sign,
//! so a positive force for a positive stroke rate resists extension.

use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::model::{PlantState, QuarterCarParams};

/// Road displacement and its time derivative under the tire.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RoadInput {
    pub r: f64,
    pub dr: f64,
}

impl RoadInput {
    pub const ZERO: Self = Self { r: 0.0, dr: 0.0 };

    pub fn new(r: f64, dr: f64) -> Self {
        Self { r, dr }
    }
}

/// Time derivative of [`PlantState`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantDerivative {
    pub dz_s: f64,
    pub ddz_s: f64,
    pub dz_u: f64,
    pub ddz_u: f64,
}

impl PlantDerivative {
    pub fn is_zero(&self) -> bool {
        self.dz_s == 0.0 && self.ddz_s == 0.0 && self.dz_u == 0.0 && self.ddz_u == 0.0
    }
}

/// How the damper force enters the two equations of motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForceSign {
    /// `−F` on the sprung mass, `+F` on the unsprung mass.
    #[default]
    Opposing,
    /// `+F` on the sprung mass, `−F` on the unsprung mass.
    Literal,
}

impl ForceSign {
    #[inline]
    fn sprung_factor(self) -> f64 {
        match self {
            ForceSign::Opposing => -1.0,
            ForceSign::Literal => 1.0,
        }
    }
}

#[inline]
fn rhs(x: &PlantState, road: RoadInput, sprung_force: f64, p: &QuarterCarParams) -> PlantDerivative {
    let suspension = p.c_s * (x.dz_s - x.dz_u) + p.k_s * (x.z_s - x.z_u);
    let tire = p.k_u * (road.r - x.z_u) + p.c_u * (road.dr - x.dz_u);
    PlantDerivative {
        dz_s: x.dz_s,
        ddz_s: (sprung_force - suspension) / p.m_s,
        dz_u: x.dz_u,
        ddz_u: (suspension - sprung_force + tire) / p.m_u,
    }
}

/// Passive plant: no damper force.
pub fn passive_rhs(x: &PlantState, road: RoadInput, p: &QuarterCarParams) -> PlantDerivative {
    rhs(x, road, 0.0, p)
}

/// Semi-active plant with MR damper force `f_mr` in the default sign convention.
pub fn semiactive_rhs(x: &PlantState, road: RoadInput, f_mr: f64, p: &QuarterCarParams) -> PlantDerivative {
    semiactive_rhs_signed(x, road, f_mr, ForceSign::Opposing, p)
}

pub fn semiactive_rhs_signed(
    x: &PlantState,
    road: RoadInput,
    f_mr: f64,
    sign: ForceSign,
    p: &QuarterCarParams,
) -> PlantDerivative {
    // 0·F must stay an exact zero so a zero force reproduces the passive path
    rhs(x, road, sign.sprung_factor() * f_mr + 0.0, p)
}

/// Undamped natural frequencies in Hz, ascending.
///
/// Roots of `det(K − ω²M) = 0` with `M = diag(m_s, m_u)` and
/// `K = [[k_s, −k_s], [−k_s, k_s + k_u]]`, i.e.
/// `m_s m_u λ² − (k_s m_u + (k_s + k_u) m_s) λ + k_s k_u = 0` in `λ = ω²`.
pub fn undamped_natural_frequencies(p: &QuarterCarParams) -> Result<(f64, f64), ParamError> {
    p.validate()?;
    let a = p.m_s * p.m_u;
    let b = p.k_s * p.m_u + (p.k_s + p.k_u) * p.m_s;
    let c = p.k_s * p.k_u;
    let disc = (b * b - 4.0 * a * c).sqrt();
    // stable pairing: the large root directly, the small one from Vieta
    let lambda_hi = (b + disc) / (2.0 * a);
    let lambda_lo = c / (a * lambda_hi);
    let to_hz = |lambda: f64| lambda.sqrt() / (2.0 * std::f64::consts::PI);
    Ok((to_hz(lambda_lo), to_hz(lambda_hi)))
}
