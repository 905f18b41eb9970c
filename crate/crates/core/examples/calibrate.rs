//! Derives the shipped simulator constants in `config/*.conf`.
//!
//! sigma_step_cm is bisected so that dead-reckoning Rubiks-5-5 success sits
//! as far above 0.8 as Rubiks-5-10 success sits below 0.2. The four action
//! durations are a least-squares fit of the plan durations to the completed
//! cells of the baseline score table, each bounded below by `MIN_ACTION_S`.
//!
//! Run with `cargo run --release --example calibrate`.

use rubiks_bench::scramble::{generate_sequence, Seed, TierSpec};
use rubiks_bench::sim::{
    compile_sequence, monte_carlo, ActionKind, Mode, TimingModel, UncertaintyModel,
};

const SEED: Seed = Seed(2016);
const RUNS: u64 = 10_000;
const MIN_ACTION_S: f64 = 1.0;

/// (mode, M, N, mean trial seconds)
const CELLS: [(Mode, u32, u32, f64); 12] = [
    (Mode::DeadReckoning, 1, 5, 139.07),
    (Mode::DeadReckoning, 1, 10, 248.43),
    (Mode::DeadReckoning, 1, 20, 463.45),
    (Mode::DeadReckoning, 5, 5, 113.35),
    (Mode::SensorAided, 1, 5, 126.67),
    (Mode::SensorAided, 1, 10, 215.37),
    (Mode::SensorAided, 1, 20, 447.96),
    (Mode::SensorAided, 1, 50, 1123.04),
    (Mode::SensorAided, 1, 100, 2207.97),
    (Mode::SensorAided, 5, 5, 113.81),
    (Mode::SensorAided, 5, 10, 214.71),
    (Mode::SensorAided, 5, 20, 416.61),
];

fn unit_timing() -> TimingModel {
    TimingModel::new(1.0, 1.0, 1.0, 1.0).unwrap()
}

fn margin(sigma: f64) -> (f64, f64, f64) {
    let u = UncertaintyModel::new(sigma, 0.5).unwrap();
    let rate = |m, n| {
        monte_carlo(
            TierSpec::new(m, n).unwrap(),
            Mode::DeadReckoning,
            &u,
            &unit_timing(),
            SEED,
            RUNS,
        )
        .success_rate
    };
    let r5 = rate(5, 5);
    let r10 = rate(5, 10);
    ((r5 - 0.8) - (0.2 - r10), r5, r10)
}

fn bisect_sigma() -> f64 {
    let (mut lo, mut hi) = (0.05, 0.3);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        let (m, r5, r10) = margin(mid);
        eprintln!("sigma {mid:.6}: 5-5 {r5:.4}  5-10 {r10:.4}");
        if m > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-4 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Mean action counts [pickup, handoff, rotate, localize] per trial.
fn features(mode: Mode, m: u32, n: u32) -> [f64; 4] {
    let mut sum = [0.0; 4];
    let samples = 2_000u64;
    for s in 0..samples {
        for trial in 1..=m {
            for a in compile_sequence(&generate_sequence(Seed(s), trial, n), mode) {
                let k = match a.kind() {
                    ActionKind::Pickup => 0,
                    ActionKind::Handoff => 1,
                    ActionKind::RotateLayer => 2,
                    ActionKind::Localize => 3,
                };
                sum[k] += 1.0;
            }
        }
    }
    sum.map(|c| c / (samples * m as u64) as f64)
}

fn solve(a: &[[f64; 4]], b: &[f64], active: &[usize]) -> Option<Vec<f64>> {
    let k = active.len();
    let mut m = vec![vec![0.0; k + 1]; k];
    for (row, x) in a.iter().zip(b) {
        for i in 0..k {
            for j in 0..k {
                m[i][j] += row[active[i]] * row[active[j]];
            }
            m[i][k] += row[active[i]] * x;
        }
    }
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, p);
        for r in 0..k {
            if r != c {
                let f = m[r][c] / m[c][c];
                for j in c..=k {
                    m[r][j] -= f * m[c][j];
                }
            }
        }
    }
    Some((0..k).map(|i| m[i][k] / m[i][i]).collect())
}

/// Exhaustive non-negative least squares over the 16 active sets.
fn nnls(a: &[[f64; 4]], b: &[f64]) -> [f64; 4] {
    let mut best = ([0.0; 4], f64::INFINITY);
    for mask in 1u32..16 {
        let active: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        let Some(x) = solve(a, b, &active) else {
            continue;
        };
        if x.iter().any(|&v| v < 0.0) {
            continue;
        }
        let mut full = [0.0; 4];
        for (&i, v) in active.iter().zip(x) {
            full[i] = v;
        }
        let sse: f64 = a
            .iter()
            .zip(b)
            .map(|(row, y)| {
                let p: f64 = row.iter().zip(full).map(|(r, f)| r * f).sum();
                (p - y) * (p - y)
            })
            .sum();
        if sse < best.1 {
            best = (full, sse);
        }
    }
    best.0
}

fn main() {
    let sigma = if std::env::args().any(|a| a == "--timing-only") {
        0.1161
    } else {
        bisect_sigma()
    };
    let (_, r5, r10) = margin(sigma);
    println!("sigma_step_cm = {sigma:.4}  (5-5 {r5:.4}, 5-10 {r10:.4})");

    let a: Vec<[f64; 4]> = CELLS
        .iter()
        .map(|&(mode, m, n, _)| features(mode, m, n))
        .collect();
    let b: Vec<f64> = CELLS.iter().map(|c| c.3).collect();
    let shifted: Vec<f64> = a
        .iter()
        .zip(&b)
        .map(|(row, y)| y - MIN_ACTION_S * row.iter().sum::<f64>())
        .collect();
    let x = nnls(&a, &shifted).map(|v| v + MIN_ACTION_S);
    println!(
        "pickup_s = {:.2}\nhandoff_s = {:.2}\nrotate_s = {:.2}\nlocalize_s = {:.2}",
        x[0], x[1], x[2], x[3]
    );
    for (row, &(mode, m, n, y)) in a.iter().zip(&CELLS) {
        let p: f64 = row.iter().zip(x).map(|(r, f)| r * f).sum();
        println!(
            "{mode:>15} Rubiks-{m}-{n:<4} table {y:8.2}  fit {p:8.2}  ({:+.1}%)",
            100.0 * (p - y) / y
        );
    }
}
