#![allow(clippy::needless_range_loop, clippy::type_complexity)]

//! Exact computations around categorifications of the group birig `N[G]` and
//! of the Drinfel'd double `D(N[G])` of a finite group.
//!
//! Scalars are `N`-th roots of unity written additively: a residue `v` in
//! `Z/N` stands for `zeta_N^v`. Every structure map of a skeletal
//! categorification is then a cochain with values in `Z/N`, every coherence
//! diagram is a linear equation mod `N`, and every classification question is
//! a kernel/image computation handled by [`homology`].

pub mod cochain;
pub mod double;
pub mod error;
pub mod group;
pub mod homology;
pub mod json;
pub mod ng;
pub mod report;
pub mod rig;

pub use cochain::{BiCochain, TotalCochain};
pub use double::{CocycleTriple, DoubleCategorification, DoubleEquivalenceWitness};
pub use error::{Error, Result};
pub use group::{FiniteGroup, ParityMap};
pub use homology::{CohomologyResult, IntMatrix, SparseMatrix};
pub use ng::{Level, NgCategorification, NgEquivalenceWitness};
pub use report::{Check, Report, Violation};
pub use rig::FusionBirig;
