//! The Rubiks-M-N benchmark lifecycle: tier catalog, timed trials, scoring
//! and report construction.

mod report;
mod session;

pub use report::{BenchmarkReport, DuplicateTier, ReportJson, TierJson, TrialJson};
pub use session::{
    read_event_log, run_session, write_event_log, EventKind, EventLogError, EventPayload,
    EventSource, MonotonicClock, Prompt, ReplaySource, SessionError, SessionEvent, SessionOutcome,
    Timestamp,
};

pub use crate::scramble::standard_tiers;

use thiserror::Error;

use crate::cube::{FaceletState, MoveSequence};
use crate::scramble::{generate_sequence, Seed, TierSpec};
use crate::validator::Verdict;

/// One timed attempt at a tier's trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// 1-based.
    pub trial_index: u32,
    pub sequence: MoveSequence,
    pub initial_state: FaceletState,
    pub observed_state: FaceletState,
    /// First contact to termination of manipulation.
    pub elapsed_seconds: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TierResult {
    pub tier: TierSpec,
    pub seed: Seed,
    pub trials: Vec<TrialRecord>,
    /// All M trials passed.
    pub completed: bool,
    /// Present iff completed.
    pub mean_seconds: Option<f64>,
    /// Sample standard deviation; present iff completed and M > 1.
    pub stddev_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScoreError {
    #[error("tier {tier} has {expected} trials but {found} were supplied")]
    WrongTrialCount {
        tier: TierSpec,
        expected: u32,
        found: usize,
    },
    #[error("trial at position {position} carries index {found}")]
    TrialIndex { position: usize, found: u32 },
    #[error("trial {trial} was not run on the seeded sequence")]
    SequenceMismatch { trial: u32 },
    #[error("trial {trial} has invalid elapsed time {elapsed}")]
    InvalidElapsed { trial: u32, elapsed: f64 },
}

/// Scores a tier.
///
/// A session that stopped at its first failed trial supplies fewer than M
/// trials; that is accepted only when the last supplied trial failed and
/// all earlier ones passed.
pub fn score_tier(
    trials: Vec<TrialRecord>,
    tier: TierSpec,
    seed: Seed,
) -> Result<TierResult, ScoreError> {
    let m = tier.trials() as usize;
    let stopped_early = trials.len() < m
        && trials.last().is_some_and(|t| !t.verdict.pass)
        && trials[..trials.len() - 1].iter().all(|t| t.verdict.pass);
    if trials.len() != m && !stopped_early {
        return Err(ScoreError::WrongTrialCount {
            tier,
            expected: tier.trials(),
            found: trials.len(),
        });
    }
    for (position, t) in trials.iter().enumerate() {
        if t.trial_index as usize != position + 1 {
            return Err(ScoreError::TrialIndex {
                position,
                found: t.trial_index,
            });
        }
        if t.sequence != generate_sequence(seed, t.trial_index, tier.rotations()) {
            return Err(ScoreError::SequenceMismatch {
                trial: t.trial_index,
            });
        }
        if !t.elapsed_seconds.is_finite() || t.elapsed_seconds < 0.0 {
            return Err(ScoreError::InvalidElapsed {
                trial: t.trial_index,
                elapsed: t.elapsed_seconds,
            });
        }
    }

    let completed = trials.len() == m && trials.iter().all(|t| t.verdict.pass);
    let (mean_seconds, stddev_seconds) = if completed {
        let times: Vec<f64> = trials.iter().map(|t| t.elapsed_seconds).collect();
        (Some(mean(&times)), sample_stddev(&times))
    } else {
        (None, None)
    };
    Ok(TierResult {
        tier,
        seed,
        trials,
        completed,
        mean_seconds,
        stddev_seconds,
    })
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard deviation with the n-1 divisor; `None` for fewer than two
/// samples.
pub fn sample_stddev(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let mu = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - mu) * (x - mu)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}
