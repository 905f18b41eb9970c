//! Toolkit for the Rubiks-M-N cube manipulation benchmark.
//!
//! - [`cube`]: exact cube state, moves and facelet/cubie conversion.
//! - [`notation`]: Singmaster parsing and formatting.
//! - [`scramble`]: seeded benchmark sequences.
//! - [`validator`]: expected final state and verdicts.
//! - [`protocol`]: tier catalog, timed sessions, scoring and reports.
//! - [`sim`]: bimanual regrasp planner and pose-uncertainty simulation.

pub mod cube;
pub mod geometry;
pub mod notation;
pub mod protocol;
pub mod rng;
pub mod scramble;
pub mod sim;
pub mod validator;

pub use cube::{CubieState, Face, FaceletState, Move, MoveSequence, Turns};
pub use scramble::{Seed, TierSpec};
