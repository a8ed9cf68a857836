//! Exact computations for the universal family of marked poset polyhedra.
//!
//! A marked poset `(P, λ)` together with a parameter `t ∈ [0,1]^P̃` defines a
//! polyhedron `O_t(P, λ)`. At `t = 0` it is the marked order polyhedron, at
//! `t = 1` the marked chain polyhedron, and the remaining hypercube vertices
//! give the chain-order polyhedra. This crate builds those descriptions,
//! enumerates vertices and faces with exact rational arithmetic, and checks
//! the structural relations between members of the family: transfer maps,
//! tropical subdivisions, degenerations, Ehrhart equivalence and facet counts.

pub mod degeneration;
pub mod family;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod poset;
pub mod rational;
pub mod tropical;

pub use geometry::GeometryError;
pub use poset::{MarkedPoset, PosetError};
pub use rational::Rat;
