//! Exact computation with partial actions of free groups on
//! boundary-path spaces of finite graphs: the spaces and their clopen
//! calculus, prefix-exchange partial homeomorphisms, the groupoid
//! convolution ring, a contracting homotopy verifier for its length-one
//! resolution, and groupoid homology via integer Smith normal form.
//!
//! Everything is exact: coefficient arithmetic uses unbounded integers
//! and all reported groups are computed, never approximated by floats.

#![no_std]

extern crate alloc;

pub mod action;
pub mod algebra;
pub mod clopen;
pub mod dr;
pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod graph;
pub mod homology;
pub mod intfun;
pub mod matrix;
pub mod prefix;
pub mod resolution;
pub mod sample;
pub mod word;

pub use action::PartialAction;
pub use algebra::AlgElement;
pub use clopen::ClopenSet;
pub use dr::DRSystem;
pub use error::{Error, Result};
pub use homology::{TowerLevel, TowerOutcome};
pub use graph::{EdgeId, Graph, Path, VertexId};
pub use intfun::IntFun;
pub use matrix::{GroupPresentation, IntMatrix, SNFResult, Stability};
pub use prefix::PrefixMap;
pub use resolution::{HomotopyReport, P1Element};
pub use word::{GenId, Letter, ReducedWord, Sign};
