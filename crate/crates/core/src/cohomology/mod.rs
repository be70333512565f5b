//! Leibniz cochains and the differential `dL`, the `tau` isomorphism, and
//! rack modules with the rack differential `d_R`.

mod cochain;
mod leibniz;
mod rack;

pub use cochain::{Cochain, MultiIndex};
pub use leibniz::{
    check_lie_cocycle, differential_matrix, hom_representation, leibniz_differential, tau,
    tau_inverse,
};
pub use rack::{
    check_module_axioms, rack_differential_1_symmetric, rack_differential_2_antisymmetric,
    rack_differential_eval, ActionModule, ModuleAxiomReport, PointedRack, RackCochainFn,
    RackModule,
};
