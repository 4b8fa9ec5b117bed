//! Exact stationary statistics on finite circles and the 4x4 YpR system.

mod circle;
mod frequency;
mod orbit;
pub mod rational;
mod solve;
mod ypr;

pub use circle::{
    build_generator, decode_state, encode_state, set_site, site, substitution_rate, CircleChain, MAX_CIRCLE,
};
pub use frequency::{poly_frequency, solve_circle, solve_circle_full, stationary, word_frequencies, CircleSolution};
pub use orbit::{canonical_rotation, lumped_chain, orbit_count, reduce_by_rotation, OrbitReduction};
pub use solve::{solve_stationary, SparseGenerator, DENSE_LIMIT, RESIDUAL_TOL};
pub use ypr::{
    couplings, nucleotide_frequencies, nucleotide_frequencies_generic, ypr_frequencies, ypr_system, ypr_system_generic,
    YprCouplings, YprSystem,
};
