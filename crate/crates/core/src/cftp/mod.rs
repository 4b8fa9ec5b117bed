//! Perfect sampling of a window by coupling from the past.
//!
//! The circle `a..=b` is driven backward in time by its U and V rings only.
//! Once every interior site is locked, a forward pass from an arbitrary
//! start (all `A`) replays those rings with fresh W, R and Q rings in
//! between; the interior at time 0 is then an exact equilibrium draw.

mod bounds;
mod detect;
mod sample;
mod stream;

pub use bounds::{
    consecutive_threshold, k_ab, lock_bound, locking_tail_bound, modified_tail_bound, n_alpha, readable_threshold,
    single_site_tail_bound, t_ab, tail_threshold, tv_convergence_time, LockBound,
};
pub use detect::{detect_locking, scan, v1_locked_sites, v2_locked_sites, CouplingEvent, Qualifiers, Scan};
pub use sample::{
    cftp_ready, cftp_replicate_seed, cftp_replicates, cftp_sample, cftp_sample_special, cftp_sample_v1, cftp_sample_v2,
    coalescence_depth, locking_times, sample_from_stream, Algorithm, CftpSample, Schedule,
};
pub use stream::BackwardEventStream;
