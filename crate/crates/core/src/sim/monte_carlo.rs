use rayon::prelude::*;
use serde::Serialize;

use super::fsm::{compile_sequence, Mode};
use super::trial::{simulate_trial, TimingModel, UncertaintyModel};
use crate::protocol::{mean, sample_stddev};
use crate::rng::next_u64;
use crate::scramble::{generate_sequence, Seed, TierSpec};

const RUN_STRIDE: u64 = 0xD1B5_4A32_D192_ED03;

/// Seeds for one run: the scramble seed, then one simulation seed per
/// trial, all drawn from a stream keyed by the run index.
pub fn run_seeds(seed: Seed, run: u64, trials: u32) -> (Seed, Vec<Seed>) {
    let mut state = seed
        .0
        .wrapping_add(run.wrapping_add(1).wrapping_mul(RUN_STRIDE));
    let scramble = Seed(next_u64(&mut state));
    let sims = (0..trials).map(|_| Seed(next_u64(&mut state))).collect();
    (scramble, sims)
}

/// Outcome of one simulated attempt at a whole tier.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub success: bool,
    /// Elapsed time of each trial attempted, ending with the failed one if
    /// any.
    pub trial_seconds: Vec<f64>,
}

/// Simulates run `run`: M consecutive trials on freshly seeded sequences,
/// stopping at the first failure.
pub fn simulate_run(
    tier: TierSpec,
    mode: Mode,
    model: &UncertaintyModel,
    timing: &TimingModel,
    seed: Seed,
    run: u64,
) -> RunOutcome {
    let (scramble, sims) = run_seeds(seed, run, tier.trials());
    let mut trial_seconds = Vec::with_capacity(tier.trials() as usize);
    for (trial, sim_seed) in (1..=tier.trials()).zip(sims) {
        let seq = generate_sequence(scramble, trial, tier.rotations());
        let plan = compile_sequence(&seq, mode);
        let r = simulate_trial(&plan, model, timing, sim_seed);
        trial_seconds.push(r.elapsed_seconds);
        if !r.success {
            return RunOutcome {
                success: false,
                trial_seconds,
            };
        }
    }
    RunOutcome {
        success: true,
        trial_seconds,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub tier: String,
    pub mode: String,
    pub runs: u64,
    /// Fraction of runs in which all M trials succeeded.
    pub success_rate: f64,
    /// Mean trial time over the trials of successful runs.
    pub mean_s: Option<f64>,
    /// Sample standard deviation of those trial times.
    pub stddev_s: Option<f64>,
}

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

/// Monte Carlo estimate of tier success and timing. Runs execute in
/// parallel; results are reduced in run order, so the summary does not
/// depend on scheduling.
pub fn monte_carlo(
    tier: TierSpec,
    mode: Mode,
    model: &UncertaintyModel,
    timing: &TimingModel,
    seed: Seed,
    runs: u64,
) -> Summary {
    assert!(runs >= 1, "at least one run");
    let outcomes: Vec<RunOutcome> = (0..runs)
        .into_par_iter()
        .map(|run| simulate_run(tier, mode, model, timing, seed, run))
        .collect();

    let successes = outcomes.iter().filter(|o| o.success).count();
    let times: Vec<f64> = outcomes
        .iter()
        .filter(|o| o.success)
        .flat_map(|o| o.trial_seconds.iter().copied())
        .collect();
    Summary {
        tier: tier.name(),
        mode: mode.name().to_string(),
        runs,
        success_rate: successes as f64 / runs as f64,
        mean_s: (!times.is_empty()).then(|| mean(&times)),
        stddev_s: sample_stddev(&times),
    }
}
