//! Time evolution of the four-spin model: leakage out of the computational
//! subspace and cZ gate fidelity.

mod gate;
mod leakage;
mod sweep;

pub use gate::{
    cz_fidelity, cz_target, fidelity_against_cz, gate_time, ising_coupling, GateReport,
    LocalPhaseOptimum, LEAKAGE_SAMPLES,
};
pub use leakage::{
    block_leakage, frobenius_leakage, leakage_trace, validate_times, LeakageMode, LeakageTrace,
};
pub use sweep::{fidelity_map, grid_points, linspace, DeviceAxis, SweepAxis, SweepRow};
