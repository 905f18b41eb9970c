//! `rubiks-bench`: issue sequences, time sessions, validate cubes, simulate
//! the baselines and assemble reports.

mod colors;
mod live;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rubiks_bench::notation::{format, parse};
use rubiks_bench::protocol::{
    read_event_log, run_session, write_event_log, BenchmarkReport, EventPayload, ReplaySource,
    ReportJson, SessionOutcome,
};
use rubiks_bench::scramble::{generate_tier, write_sequence_file, Seed, TierSpec};
use rubiks_bench::sim::{monte_carlo, Mode, SimConfig};
use rubiks_bench::validator::{expected_final, validate};
use rubiks_bench::FaceletState;

use colors::ColorMap;
use live::LiveSource;

#[derive(Parser)]
#[command(
    name = "rubiks-bench",
    version,
    about = "Rubik's cube manipulation benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the seeded sequences for a tier.
    Scramble(TierArgs),
    /// Apply a sequence to a state and print the result.
    Apply {
        #[arg(long)]
        sequence: String,
        /// Facelet string; defaults to solved.
        #[arg(long)]
        initial: Option<String>,
        #[command(flatten)]
        colors: ColorArgs,
    },
    /// Judge an observed state. Exit 0 on PASS, 1 on FAIL.
    Validate {
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        observed: String,
        #[arg(long)]
        initial: Option<String>,
        #[command(flatten)]
        colors: ColorArgs,
    },
    /// Conduct a timed tier session, or replay a recorded one.
    Run(RunArgs),
    /// Monte Carlo estimate of tier success for a baseline.
    Simulate(SimulateArgs),
    /// Merge tier reports into one.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        system_name: Option<String>,
        #[arg(long)]
        video: Option<String>,
    },
}

#[derive(Args, Clone)]
struct TierArgs {
    /// A catalog tier such as Rubiks-5-20.
    #[arg(long, conflicts_with_all = ["m", "n"])]
    tier: Option<String>,
    /// Trials, for tiers outside the catalog.
    #[arg(long, requires = "n")]
    m: Option<u32>,
    /// Rotations per trial.
    #[arg(long, requires = "m")]
    n: Option<u32>,
    #[arg(long, env = "RUBIKS_BENCH_SEED")]
    seed: Option<u64>,
}

impl TierArgs {
    fn tier(&self) -> Result<Option<TierSpec>> {
        match (&self.tier, self.m, self.n) {
            (Some(name), _, _) => {
                let tier: TierSpec = name.parse().map_err(|_| anyhow!("unknown tier {name:?}"))?;
                if !tier.is_standard() {
                    bail!("unknown tier {name:?}; use --m and --n for tiers outside the catalog");
                }
                Ok(Some(tier))
            }
            (None, Some(m), Some(n)) => Ok(Some(TierSpec::new(m, n)?)),
            _ => Ok(None),
        }
    }

    fn required(&self) -> Result<(TierSpec, Seed)> {
        let tier = self.tier()?.context("give --tier, or --m and --n")?;
        let seed = self.seed.context("give --seed or set RUBIKS_BENCH_SEED")?;
        Ok((tier, Seed(seed)))
    }
}

#[derive(Args)]
struct ColorArgs {
    /// Accept color letters in facelet strings. Without a value the
    /// white/red/green/yellow/orange/blue scheme is used.
    #[arg(long, num_args = 0..=1, default_missing_value = colors::WESTERN)]
    colors: Option<String>,
}

impl ColorArgs {
    fn map(&self) -> Result<Option<ColorMap>> {
        self.colors.as_deref().map(ColorMap::parse).transpose()
    }

    fn state(&self, raw: &str) -> Result<FaceletState> {
        let text = match self.map()? {
            Some(m) => m.translate(raw),
            None => raw.to_string(),
        };
        let state: FaceletState = text.parse().with_context(|| format!("state {raw:?}"))?;
        state.to_cubie().with_context(|| format!("state {raw:?}"))?;
        Ok(state)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    tier: TierArgs,
    /// Where to write the report JSON.
    #[arg(long, short)]
    output: PathBuf,
    /// Where to write the event log of a live session.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Replay this event log instead of prompting.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long, default_value = "unnamed system")]
    system_name: String,
    #[arg(long, default_value = "")]
    video: String,
    #[command(flatten)]
    colors: ColorArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Config file; overrides --mode.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use the shipped config for dead_reckoning or sensor_aided.
    #[arg(long, default_value = "dead_reckoning")]
    mode: String,
    #[command(flatten)]
    tier: TierArgs,
    #[arg(long)]
    runs: Option<u64>,
    /// Print the effective config and exit.
    #[arg(long)]
    show_config: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match command {
        Command::Scramble(args) => {
            let (tier, seed) = args.required()?;
            out.write_all(write_sequence_file(seed, tier, &generate_tier(seed, tier)).as_bytes())?;
        }
        Command::Apply {
            sequence,
            initial,
            colors,
        } => {
            let seq = parse(&sequence).with_context(|| format!("sequence {sequence:?}"))?;
            let initial = match initial {
                Some(raw) => colors.state(&raw)?,
                None => FaceletState::solved(),
            };
            writeln!(out, "{}", expected_final(&initial, &seq)?)?;
        }
        Command::Validate {
            sequence,
            observed,
            initial,
            colors,
        } => {
            let seq = parse(&sequence).with_context(|| format!("sequence {sequence:?}"))?;
            let initial = match initial {
                Some(raw) => colors.state(&raw)?,
                None => FaceletState::solved(),
            };
            let observed = colors.state(&observed)?;
            let v = validate(&initial, &seq, &observed)?;
            writeln!(out, "{}", if v.pass { "PASS" } else { "FAIL" })?;
            writeln!(out, "expected {}", v.expected)?;
            write!(out, "mismatched")?;
            for i in &v.mismatched_indices {
                write!(out, " {i}")?;
            }
            writeln!(out)?;
            if !v.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Run(args) => run(args)?,
        Command::Simulate(args) => {
            let mut config = match &args.config {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    SimConfig::parse(&text).with_context(|| format!("config {}", path.display()))?
                }
                None => {
                    let mode = Mode::from_name(&args.mode)
                        .with_context(|| format!("unknown mode {:?}", args.mode))?;
                    SimConfig::default_for(mode)
                }
            };
            if let Some(runs) = args.runs {
                if runs == 0 {
                    bail!("--runs must be at least 1");
                }
                config.runs = runs;
            }
            if let Some(seed) = args.tier.seed {
                config.seed = Seed(seed);
            }
            if args.show_config {
                out.write_all(config.render().as_bytes())?;
                return Ok(ExitCode::SUCCESS);
            }
            let tier = args.tier.tier()?.context("give --tier, or --m and --n")?;
            let summary = monte_carlo(
                tier,
                config.mode,
                &config.model,
                &config.timing,
                config.seed,
                config.runs,
            );
            writeln!(out, "{}", summary.to_json())?;
        }
        Command::Report {
            inputs,
            output,
            system_name,
            video,
        } => {
            let mut merged: Option<ReportJson> = None;
            for path in &inputs {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let report = ReportJson::parse(&text)
                    .with_context(|| format!("report {}", path.display()))?;
                match merged.as_mut() {
                    None => merged = Some(report),
                    Some(m) => m.merge(report)?,
                }
            }
            let mut merged = merged.expect("at least one input");
            if let Some(name) = system_name {
                merged.system_name = name;
            }
            if let Some(video) = video {
                merged.video_reference = video;
            }
            emit(&merged.render(), output.as_ref(), &mut out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut impl Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let outcome: SessionOutcome = match &args.replay {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let events =
                read_event_log(&text).with_context(|| format!("event log {}", path.display()))?;
            let (tier, seed) = match (args.tier.tier()?, args.tier.seed) {
                (Some(t), Some(s)) => (t, Seed(s)),
                _ => match events.first().map(|e| &e.payload) {
                    Some(EventPayload::TierChosen { tier, seed }) => (*tier, *seed),
                    _ => bail!("event log does not start with TierChosen"),
                },
            };
            let mut source = ReplaySource::new(events);
            let outcome = run_session(tier, seed, &mut source)?;
            source.finish()?;
            outcome
        }
        None => {
            let (tier, seed) = args.tier.required()?;
            let stdin = io::stdin().lock();
            let mut source = LiveSource::new(stdin, io::stderr(), args.colors.map()?);
            let outcome = run_session(tier, seed, &mut source)?;
            if let Some(log) = &args.log {
                fs::write(log, write_event_log(&outcome.events))
                    .with_context(|| format!("writing {}", log.display()))?;
            }
            outcome
        }
    };

    let result = &outcome.result;
    eprintln!(
        "{}: {}",
        result.tier,
        if result.completed {
            "completed"
        } else {
            "not completed"
        }
    );
    for t in &result.trials {
        eprintln!(
            "  trial {} {} {:.3} s  {}",
            t.trial_index,
            if t.verdict.pass { "PASS" } else { "FAIL" },
            t.elapsed_seconds,
            format(&t.sequence)
        );
    }
    let date = outcome.date().context("session recorded no events")?;
    let report = BenchmarkReport::new(args.system_name, date, args.video, vec![result.clone()])?;
    fs::write(&args.output, report.to_json().render())
        .with_context(|| format!("writing {}", args.output.display()))?;
    Ok(())
}
