//! Test-only support shared by the integration suites.

#![allow(dead_code)]

pub mod operator;
pub mod oracle;

use rubiks_bench::cube::{Face, Move, MoveSequence, Turns};
use rubiks_bench::rng::SplitMix64;

/// Unconstrained random sequence (any face may follow any face).
pub fn random_sequence(rng: &mut SplitMix64, len: usize) -> MoveSequence {
    (0..len)
        .map(|_| {
            let face = Face::ALL[(rng.next_u64() % 6) as usize];
            let turns = Turns::ALL[(rng.next_u64() % 3) as usize];
            Move::new(face, turns)
        })
        .collect()
}
