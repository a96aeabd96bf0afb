//! Quarter-car suspension simulation with magnetorheological (MR) damper
//! hysteresis models.
//!
//! The crate integrates a two-mass vertical vehicle model driven by a road
//! profile. The suspension can be passive or carry an MR damper described by
//! one of four force laws (Bingham, Dahl, LuGre, Bouc-Wen). Runs are fully
//! deterministic: fixed-step RK4, seeded noise and no platform entropy.
//!
//! ```
//! use qcar_core::{simulate, DamperConfig, Scenario, SignalPreset};
//!
//! let sc = Scenario::reference(DamperConfig::boucwen(), SignalPreset::Step.signal(0))
//!     .with_duration(1.0);
//! let ts = simulate(&sc).unwrap();
//! assert_eq!(ts.len(), 1001);
//! ```

pub mod analysis;
pub mod damper;
pub mod error;
pub mod model;
pub mod plant;
pub mod road;
pub mod series;
pub mod sim;

pub use analysis::{
    compare, extract_loop, metrics, rms, settling_time, steady_band, ComparisonRow, ComparisonTable, HysteresisLoop,
    MetricOptions, Metrics,
};
pub use damper::{
    damper_eval, BinghamParams, BoucWenParams, DahlParams, DamperConfig, DamperInternalState, DamperModel, InputMode,
    LuGreParams,
};
pub use error::{AnalysisError, DamperError, ParamError, SimError};
pub use model::{validate_params, PlantState, QuarterCarParams};
pub use plant::{passive_rhs, semiactive_rhs, undamped_natural_frequencies, ForceSign, PlantDerivative, RoadInput};
pub use road::{eval_signal, RoadSignal, SignalPreset};
pub use series::{Column, TimeSeries};
pub use sim::{run_matrix, simulate, Scenario};
