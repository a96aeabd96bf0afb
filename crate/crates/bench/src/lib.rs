//! Benchmark fixtures shared by the criterion targets.

use qcar_core::{DamperConfig, Scenario, SignalPreset};

/// One reference scenario per damper model on the given road.
pub fn reference_scenarios(signal: SignalPreset, duration: f64) -> Vec<(&'static str, Scenario)> {
    DamperConfig::reference_set()
        .into_iter()
        .map(|d| {
            (
                d.model.name(),
                Scenario::reference(d, signal.signal(0)).with_duration(duration),
            )
        })
        .collect()
}
