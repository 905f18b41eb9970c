//! Benchmark report and its JSON form.

use std::collections::HashSet;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::TierResult;
use crate::notation;

/// Everything the experimenter reports: completed tiers, their scores and
/// where the video evidence is.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub system_name: String,
    pub date: NaiveDate,
    pub tier_results: Vec<TierResult>,
    /// URL or file name; may be empty.
    pub video_reference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("tier {0} appears more than once")]
pub struct DuplicateTier(pub String);

impl BenchmarkReport {
    pub fn new(
        system_name: impl Into<String>,
        date: NaiveDate,
        video_reference: impl Into<String>,
        tier_results: Vec<TierResult>,
    ) -> Result<BenchmarkReport, DuplicateTier> {
        let report = BenchmarkReport {
            system_name: system_name.into(),
            date,
            tier_results,
            video_reference: video_reference.into(),
        };
        check_unique(report.tier_results.iter().map(|t| t.tier.name()))?;
        Ok(report)
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            system_name: self.system_name.clone(),
            date: self.date.format("%Y-%m-%d").to_string(),
            video_reference: self.video_reference.clone(),
            tiers: self.tier_results.iter().map(TierJson::from).collect(),
        }
    }
}

fn check_unique(names: impl Iterator<Item = String>) -> Result<(), DuplicateTier> {
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.clone()) {
            return Err(DuplicateTier(name));
        }
    }
    Ok(())
}

/// Rounds to at most three decimals for serialization.
fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub system_name: String,
    pub date: String,
    pub video_reference: String,
    pub tiers: Vec<TierJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierJson {
    pub name: String,
    pub seed: u64,
    pub completed: bool,
    pub mean_seconds: Option<f64>,
    pub stddev_seconds: Option<f64>,
    pub trials: Vec<TrialJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialJson {
    pub index: u32,
    pub sequence: String,
    pub initial_state: String,
    pub observed_state: String,
    pub elapsed_seconds: f64,
    pub pass: bool,
}

impl From<&TierResult> for TierJson {
    fn from(r: &TierResult) -> Self {
        TierJson {
            name: r.tier.name(),
            seed: r.seed.0,
            completed: r.completed,
            mean_seconds: r.mean_seconds.map(round3),
            stddev_seconds: r.stddev_seconds.map(round3),
            trials: r
                .trials
                .iter()
                .map(|t| TrialJson {
                    index: t.trial_index,
                    sequence: notation::format(&t.sequence),
                    initial_state: t.initial_state.to_string(),
                    observed_state: t.observed_state.to_string(),
                    elapsed_seconds: round3(t.elapsed_seconds),
                    pass: t.verdict.pass,
                })
                .collect(),
        }
    }
}

impl ReportJson {
    /// Pretty-printed with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> serde_json::Result<ReportJson> {
        serde_json::from_str(text)
    }

    /// Appends the tiers of `other`. Header fields of `self` win.
    pub fn merge(&mut self, other: ReportJson) -> Result<(), DuplicateTier> {
        check_unique(
            self.tiers
                .iter()
                .chain(other.tiers.iter())
                .map(|t| t.name.clone()),
        )?;
        self.tiers.extend(other.tiers);
        Ok(())
    }
}
