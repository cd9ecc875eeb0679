//! Subtournament profiles of tournaments.
//!
//! * [`tournament`]: packed representation, `TRN v1` I/O, canonical codes and
//!   the extremal constructions (transitive, cyclic, interval, random,
//!   blow-ups, random flips, mixing).
//! * [`profiles`]: exact 3- and 4-vertex counts, per-edge statistics, edge
//!   moments, sampling, and counts maintained under arc reversals.
//! * [`bounds`]: upper and lower bound curves for `c4` in terms of `c3`, the
//!   blow-up minimiser and its replacement steps, and profile predictions.
//! * [`flags`]: flags over the edge type, product tables and lower-bound
//!   certificates.
//! * [`search`]: simulated annealing over arc reversals.

pub mod bounds;
pub mod error;
pub mod flags;
pub mod profiles;
pub mod search;
pub mod tournament;

pub use error::{Error, Result};
pub use tournament::Tournament;
