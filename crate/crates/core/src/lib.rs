//! Equilibrium analysis, simulation and perfect sampling for R/Y + YpR
//! neighbor-dependent substitution models of DNA.

// NaN must fail parameter checks, hence `!(x >= 0.0)` over `x < 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cftp;
pub mod cli;
pub mod closed_forms;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod model;
pub mod nucleotide;
pub mod rng;
pub mod scalar;
pub mod simulator;
pub mod stats;
pub mod table;

pub use error::{Error, Result};
pub use model::{derive, validate, DerivedRates, RateParameters, ValidationReport, YprEdge};
pub use nucleotide::Nucleotide;
