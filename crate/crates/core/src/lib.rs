//! Integration of finite-dimensional Leibniz algebras into local augmented Lie racks.
//!
//! The pipeline: a [`LeibnizAlgebra`](leibniz::LeibnizAlgebra) given by exact
//! structure constants is split as an abelian extension of the Lie algebra
//! `g0 = g / Z_L(g)` by its left center; the extension cocycle is integrated by
//! iterated path integrals into a local rack 2-cocycle on the matrix group
//! `G0 = exp(ad_L g0)`, which defines the rack product on `G0 x Z_L(g)`. Every
//! identity along the way is checkable, exactly on the Lie/Leibniz side and to
//! stated float tolerances on the group side.

pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod integration;
pub mod leibniz;
pub mod linalg;

pub use error::{Error, Result};
