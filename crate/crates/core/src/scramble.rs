//! Seeded generation of benchmark rotation sequences.
//!
//! Each trial has its own SplitMix64 stream, so trial `m` of a tier can be
//! regenerated without producing trials `1..m` first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{Face, Move, MoveSequence, Turns};
use crate::notation::{self, ParseError};
use crate::rng::{next_u64, SplitMix64};

const TRIAL_STRIDE: u64 = 0x632B_E59B_D9B4_E019;

/// Face order used when building the allowed-face list.
const DRAW_ORDER: [Face; 6] = [Face::U, Face::D, Face::L, Face::R, Face::F, Face::B];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Rubiks-M-N tier: M consecutive trials of N rotations each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TierSpec {
    trials: u32,
    rotations: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TierError {
    #[error("tier counts must be positive (got M={trials}, N={rotations})")]
    NonPositive { trials: u32, rotations: u32 },
    #[error("malformed tier name {0:?}, expected Rubiks-M-N")]
    BadName(String),
}

impl TierSpec {
    pub fn new(trials: u32, rotations: u32) -> Result<TierSpec, TierError> {
        if trials == 0 || rotations == 0 {
            return Err(TierError::NonPositive { trials, rotations });
        }
        Ok(TierSpec { trials, rotations })
    }

    /// M.
    pub fn trials(&self) -> u32 {
        self.trials
    }

    /// N.
    pub fn rotations(&self) -> u32 {
        self.rotations
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn is_standard(&self) -> bool {
        standard_tiers().contains(self)
    }
}

/// The twelve standard tiers, M ∈ {1, 5} × N ∈ {5, 10, 20, 50, 100, 200}, in
/// catalog order.
pub fn standard_tiers() -> Vec<TierSpec> {
    [1, 5]
        .into_iter()
        .flat_map(|m| {
            [5, 10, 20, 50, 100, 200]
                .into_iter()
                .map(move |n| TierSpec {
                    trials: m,
                    rotations: n,
                })
        })
        .collect()
}

impl fmt::Display for TierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rubiks-{}-{}", self.trials, self.rotations)
    }
}

impl FromStr for TierSpec {
    type Err = TierError;

    /// Parses any `Rubiks-M-N` name; membership in the standard catalog is
    /// a separate question.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TierError::BadName(s.to_string());
        let rest = s.strip_prefix("Rubiks-").ok_or_else(bad)?;
        let (m, n) = rest.split_once('-').ok_or_else(bad)?;
        let digits = |t: &str| -> Result<u32, TierError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        TierSpec::new(digits(m)?, digits(n)?)
    }
}

impl Serialize for TierSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TierSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Initial PRNG state for a trial's stream.
fn trial_stream(seed: Seed, trial_index: u32) -> SplitMix64 {
    let mut start = seed
        .0
        .wrapping_add((trial_index as u64).wrapping_mul(TRIAL_STRIDE));
    SplitMix64::new(next_u64(&mut start))
}

/// Generates trial `trial_index` (1-based) of length `n`.
///
/// No move repeats the previous face, and a move never returns to the face
/// two back when the move in between shares its axis (`U D U`).
pub fn generate_sequence(seed: Seed, trial_index: u32, n: u32) -> MoveSequence {
    assert!(trial_index >= 1, "trial indices are 1-based");
    let mut rng = trial_stream(seed, trial_index);
    let mut moves: Vec<Move> = Vec::with_capacity(n as usize);
    let mut allowed: Vec<Face> = Vec::with_capacity(6);

    for _ in 0..n {
        let prev = moves.last().map(|m| m.face);
        let prev2 = moves.len().checked_sub(2).map(|i| moves[i].face);
        allowed.clear();
        allowed.extend(DRAW_ORDER.into_iter().filter(|&c| match prev {
            None => true,
            Some(p) if c == p => false,
            Some(p) => !(c.axis() == p.axis() && Some(c) == prev2),
        }));
        let face = allowed[(rng.next_u64() % allowed.len() as u64) as usize];
        let turns = Turns::from_count(1 + (rng.next_u64() % 3) as u8).expect("1..=3");
        moves.push(Move::new(face, turns));
    }
    MoveSequence::from(moves)
}

/// All M sequences of a tier, trial 1 first.
pub fn generate_tier(seed: Seed, tier: TierSpec) -> Vec<MoveSequence> {
    (1..=tier.trials())
        .map(|m| generate_sequence(seed, m, tier.rotations()))
        .collect()
}

/// Renders a sequence file: a header line then one sequence per line.
pub fn write_sequence_file(seed: Seed, tier: TierSpec, sequences: &[MoveSequence]) -> String {
    let mut out = format!("# rubiks-benchmark seed={seed} tier={tier}\n");
    for seq in sequences {
        out.push_str(&notation::format(seq));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceFileError {
    #[error("missing or malformed header line")]
    Header,
    #[error(transparent)]
    Tier(#[from] TierError),
    #[error("line {line}: {source}")]
    Notation { line: usize, source: ParseError },
    #[error("expected {expected} sequences, found {found}")]
    Count { expected: u32, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub seed: Seed,
    pub tier: TierSpec,
    pub sequences: Vec<MoveSequence>,
}

pub fn read_sequence_file(text: &str) -> Result<SequenceFile, SequenceFileError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(SequenceFileError::Header)?;
    let fields = header
        .strip_prefix("# rubiks-benchmark ")
        .ok_or(SequenceFileError::Header)?;
    let mut seed = None;
    let mut tier = None;
    for field in fields.split_whitespace() {
        match field.split_once('=') {
            Some(("seed", v)) => {
                seed = Some(Seed(v.parse().map_err(|_| SequenceFileError::Header)?))
            }
            Some(("tier", v)) => tier = Some(v.parse::<TierSpec>()?),
            _ => return Err(SequenceFileError::Header),
        }
    }
    let (seed, tier) = seed.zip(tier).ok_or(SequenceFileError::Header)?;
    let sequences = lines
        .enumerate()
        .map(|(i, l)| {
            notation::parse(l).map_err(|source| SequenceFileError::Notation {
                line: i + 2,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if sequences.len() != tier.trials() as usize {
        return Err(SequenceFileError::Count {
            expected: tier.trials(),
            found: sequences.len(),
        });
    }
    Ok(SequenceFile {
        seed,
        tier,
        sequences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_vectors_seed_42() {
        // Frozen from an independent reference implementation of the
        // generator.
        let cases = [
            (42, 1, 5, "B2 F R B D"),
            (42, 2, 5, "R2 L2 U L F'"),
            (
                42,
                1,
                20,
                "B2 F R B D F D2 F2 B' R F2 L2 U' R L U' B2 D2 U' R'",
            ),
            (0, 1, 10, "U2 F2 D2 U2 F D U F2 D' B2"),
            (7, 3, 12, "B' R' L2 D L D L' D2 U' R2 F2 L2"),
        ];
        for (seed, trial, n, expected) in cases {
            assert_eq!(
                generate_sequence(Seed(seed), trial, n).to_string(),
                expected,
                "seed={seed} trial={trial} n={n}"
            );
        }
    }

    #[test]
    fn tier_shapes() {
        let one = generate_tier(Seed(42), "Rubiks-1-5".parse().unwrap());
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].len(), 5);

        let tier: TierSpec = "Rubiks-5-20".parse().unwrap();
        let five = generate_tier(Seed(42), tier);
        assert_eq!(five.len(), 5);
        assert!(five.iter().all(|s| s.len() == 20));
        assert_eq!(five[2], generate_sequence(Seed(42), 3, 20));
    }

    #[test]
    fn tier_names() {
        let t: TierSpec = "Rubiks-5-100".parse().unwrap();
        assert_eq!((t.trials(), t.rotations()), (5, 100));
        assert_eq!(t.name(), "Rubiks-5-100");
        assert!(t.is_standard());
        assert!(!"Rubiks-9-9".parse::<TierSpec>().unwrap().is_standard());
        assert!("Rubiks-0-5".parse::<TierSpec>().is_err());
        assert!("Rubiks-1".parse::<TierSpec>().is_err());
        assert!("rubiks-1-5".parse::<TierSpec>().is_err());
        assert!("Rubiks-+1-5".parse::<TierSpec>().is_err());
    }

    #[test]
    fn standard_catalog_order() {
        let names: Vec<String> = standard_tiers().iter().map(TierSpec::name).collect();
        assert_eq!(
            names,
            [
                "Rubiks-1-5",
                "Rubiks-1-10",
                "Rubiks-1-20",
                "Rubiks-1-50",
                "Rubiks-1-100",
                "Rubiks-1-200",
                "Rubiks-5-5",
                "Rubiks-5-10",
                "Rubiks-5-20",
                "Rubiks-5-50",
                "Rubiks-5-100",
                "Rubiks-5-200"
            ]
        );
    }

    #[test]
    fn sequence_file_round_trip() {
        let tier: TierSpec = "Rubiks-5-10".parse().unwrap();
        let seqs = generate_tier(Seed(3), tier);
        let text = write_sequence_file(Seed(3), tier, &seqs);
        assert!(text.starts_with("# rubiks-benchmark seed=3 tier=Rubiks-5-10\n"));
        let parsed = read_sequence_file(&text).unwrap();
        assert_eq!(parsed.seed, Seed(3));
        assert_eq!(parsed.tier, tier);
        assert_eq!(parsed.sequences, seqs);
    }

    #[test]
    fn sequence_file_errors() {
        assert_eq!(read_sequence_file(""), Err(SequenceFileError::Header));
        assert_eq!(
            read_sequence_file("# rubiks-benchmark seed=1 tier=Rubiks-1-5\n"),
            Err(SequenceFileError::Count {
                expected: 1,
                found: 0
            })
        );
        assert!(matches!(
            read_sequence_file("# rubiks-benchmark seed=1 tier=Rubiks-1-5\nU Q\n"),
            Err(SequenceFileError::Notation { line: 2, .. })
        ));
    }
}
