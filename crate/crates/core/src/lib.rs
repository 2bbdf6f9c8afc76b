//! Exact combinatorics for Ramsey-type hypergraphs.
//!
//! This crate builds the hypergraph families that encode Ramsey, van der
//! Waerden and Schur properties, decides their structural predicates by
//! complete search (densities, collapsibility, the rainbow star-constellation
//! criterion, proper colourability, 2-choosability, layer reveals and clots),
//! and provides the deterministic sampling and counting kernels behind the
//! Monte Carlo threshold experiments and Janson-bound calculators.
//!
//! The crate is `no_std` + `alloc`; all IO, file formats and the CLI live in
//! the companion `ramsey-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod arrow;
pub mod clots;
pub mod collapse;
pub mod colouring;
pub mod counting;
pub mod curve;
pub mod density;
pub mod error;
pub mod families;
pub mod flow;
pub mod graph;
pub mod hom;
pub mod hypergraph;
pub mod janson;
pub mod listcol;
pub mod rational;
pub mod reveal;
pub mod sampling;
pub mod stars;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{DegreeProfile, UniformHypergraph};
