//! Consumption theory, goodness-of-fit tests and the experiment runners
//! built on them.

mod experiment;
mod gof;
mod theory;

pub use experiment::{
    consumption_csv, experiment_key, format_sig, geometric_n_sequence, map_chunks,
    run_consumption_experiment, run_monotonicity_check, run_reassignment_check,
    run_uniformity_check, worker_count, ConsumptionSummary, RunningMoments, UniformityReport,
    CONSUMPTION_CSV_HEADER, WORKERS_ENV,
};
pub use gof::{
    chi_square_sf, g_statistic, g_test, kolmogorov_sf, ks_statistic, ks_test, GofMethod,
    GofResult,
};
pub use theory::{rho, theory_jbh, theory_jbh_packed, theory_jump_hash, ConsumptionTheory};
