//! Integration of the Leibniz cocycle into a local augmented Lie rack.

mod augmented;
mod chart;
mod config;
mod paths;
mod suite;

pub use augmented::{delta2, mixed_difference, LocalAugmentedRack, LocalRackElement};
pub use chart::{family_nilpotency, GroupElement, LocalGroupChart, ModuleAction};
pub use config::{IntegratorConfig, DEFAULT_CHART_RADIUS, DEFAULT_FD_STEP, DEFAULT_TOL_IDENTITY};
pub use paths::{dexp, path_frame};
pub use suite::{
    cocycle_identities, lie_properties, module_properties, quadrature_stability, rack_axioms,
    round_trips, run_suite, sample_element, sample_elements, sample_log, Bound, PropertyResult,
    SuiteOptions, SuiteReport, TOL_DELTA, TOL_DERIVED, TOL_MODULE, TOL_POINTED, TOL_QUADRATURE,
    TOL_RACK, TOL_TANGENT,
};
