//! Forward simulation of the circle process.
//!
//! The main engine is the graphical construction: independent Poisson clocks
//! per site and target, each ring interpreted by [`apply_move`] according to
//! its flag. Gillespie simulation from the substitution rates is kept as an
//! independent oracle.

mod clocks;
mod ensemble;
mod evolve;
mod moves;

pub use clocks::{sample_clocks, ClockEvent, ClockRealization, MoveDescription};
pub use ensemble::{replicate_seed, simulate_replicates, Engine, InitialState};
pub use evolve::{
    clock_ready, evolve, evolve_snapshots, evolve_with_clocks, gillespie_evolve, gillespie_snapshots, ry_from_clocks,
    ry_project,
};
pub use moves::{accepts, apply_move, apply_move_with, MoveRules};
