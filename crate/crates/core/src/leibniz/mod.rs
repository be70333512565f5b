//! Leibniz algebras by structure constants, their representations, and the
//! canonical extension by the left center.

mod algebra;
mod extension;
mod representation;

pub use algebra::{default_names, span_contains, unit, LeibnizAlgebra};
pub use extension::{canonical_extension, CentralExtensionData};
pub use representation::{Flavor, Representation};
