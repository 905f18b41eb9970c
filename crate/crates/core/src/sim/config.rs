//! `key = value` simulation config files.

use std::collections::HashMap;

use thiserror::Error;

use super::fsm::Mode;
use super::trial::{ModelError, TimingModel, UncertaintyModel};
use crate::scramble::Seed;

const DEAD_RECKONING: &str = include_str!("../../config/dead_reckoning.conf");
const SENSOR_AIDED: &str = include_str!("../../config/sensor_aided.conf");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub mode: Mode,
    pub model: UncertaintyModel,
    pub timing: TimingModel,
    pub runs: u64,
    pub seed: Seed,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key {0:?}")]
    MissingKey(&'static str),
    #[error("bad value for {key}: {value:?}")]
    BadValue { key: &'static str, value: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

const KEYS: [&str; 10] = [
    "mode",
    "sigma_step_cm",
    "localize_bound_cm",
    "initial_sigma_cm",
    "pickup_s",
    "handoff_s",
    "rotate_s",
    "localize_s",
    "runs",
    "seed",
];

impl SimConfig {
    /// The shipped calibrated configuration for `mode`.
    pub fn default_for(mode: Mode) -> SimConfig {
        let text = match mode {
            Mode::DeadReckoning => DEAD_RECKONING,
            Mode::SensorAided => SENSOR_AIDED,
        };
        SimConfig::parse(text).expect("shipped config parses")
    }

    pub fn default_text(mode: Mode) -> &'static str {
        match mode {
            Mode::DeadReckoning => DEAD_RECKONING,
            Mode::SensorAided => SENSOR_AIDED,
        }
    }

    /// Parses a config. `#` starts a comment; `initial_sigma_cm` is optional
    /// and defaults to 0.
    pub fn parse(text: &str) -> Result<SimConfig, ConfigError> {
        let mut values: HashMap<&'static str, String> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or_default().trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content
                .split_once('=')
                .ok_or(ConfigError::Syntax { line })?;
            let k = k.trim();
            let key = KEYS.into_iter().find(|&known| known == k).ok_or_else(|| {
                ConfigError::UnknownKey {
                    line,
                    key: k.to_string(),
                }
            })?;
            if values.insert(key, v.trim().to_string()).is_some() {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
        }

        let get = |key: &'static str| values.get(key).ok_or(ConfigError::MissingKey(key));
        let bad = |key: &'static str, value: &str| ConfigError::BadValue {
            key,
            value: value.to_string(),
        };
        let float = |key: &'static str| -> Result<f64, ConfigError> {
            let v = get(key)?;
            v.parse().map_err(|_| bad(key, v))
        };

        let mode_str = get("mode")?;
        let mode = Mode::from_name(mode_str).ok_or_else(|| bad("mode", mode_str))?;
        let mut model =
            UncertaintyModel::new(float("sigma_step_cm")?, float("localize_bound_cm")?)?;
        if values.contains_key("initial_sigma_cm") {
            model = model.with_initial_sigma(float("initial_sigma_cm")?)?;
        }
        let timing = TimingModel::new(
            float("pickup_s")?,
            float("handoff_s")?,
            float("rotate_s")?,
            float("localize_s")?,
        )?;
        let runs_str = get("runs")?;
        let runs = runs_str
            .parse::<u64>()
            .ok()
            .filter(|&r| r >= 1)
            .ok_or_else(|| bad("runs", runs_str))?;
        let seed_str = get("seed")?;
        let seed = Seed(seed_str.parse().map_err(|_| bad("seed", seed_str))?);

        Ok(SimConfig {
            mode,
            model,
            timing,
            runs,
            seed,
        })
    }

    pub fn render(&self) -> String {
        format!(
            "mode = {}\nsigma_step_cm = {}\nlocalize_bound_cm = {}\ninitial_sigma_cm = {}\n\
             pickup_s = {}\nhandoff_s = {}\nrotate_s = {}\nlocalize_s = {}\nruns = {}\nseed = {}\n",
            self.mode,
            self.model.sigma_step_cm,
            self.model.localize_bound_cm,
            self.model.initial_sigma_cm,
            self.timing.pickup_s,
            self.timing.handoff_s,
            self.timing.rotate_s,
            self.timing.localize_s,
            self.runs,
            self.seed,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_defaults_parse() {
        let dr = SimConfig::default_for(Mode::DeadReckoning);
        let sa = SimConfig::default_for(Mode::SensorAided);
        assert_eq!(dr.mode, Mode::DeadReckoning);
        assert_eq!(sa.mode, Mode::SensorAided);
        assert_eq!(sa.model.localize_bound_cm, 0.5);
        assert_eq!(dr.model.sigma_step_cm, sa.model.sigma_step_cm);
        assert_eq!(dr.timing, sa.timing);
        assert_eq!(dr.model.initial_sigma_cm, 0.0);
    }

    #[test]
    fn render_parse_round_trip() {
        let c = SimConfig::default_for(Mode::SensorAided);
        assert_eq!(SimConfig::parse(&c.render()).unwrap(), c);
    }

    #[test]
    fn errors() {
        let good = SimConfig::default_for(Mode::DeadReckoning).render();
        assert!(matches!(
            SimConfig::parse(&format!("{good}colour = red\n")),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            SimConfig::parse(&format!("{good}runs = 5\n")),
            Err(ConfigError::DuplicateKey { .. })
        ));
        assert!(matches!(
            SimConfig::parse(&good.replace("mode = dead_reckoning", "mode = psychic")),
            Err(ConfigError::BadValue { key: "mode", .. })
        ));
        assert!(matches!(
            SimConfig::parse(&good.replace("pickup_s", "# pickup_s")),
            Err(ConfigError::MissingKey("pickup_s"))
        ));
        assert!(matches!(
            SimConfig::parse("just words\n"),
            Err(ConfigError::Syntax { line: 1 })
        ));
        let negative = good
            .lines()
            .map(|l| {
                if l.starts_with("sigma_step_cm") {
                    "sigma_step_cm = -1"
                } else {
                    l
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(
            SimConfig::parse(&negative),
            Err(ConfigError::Model(_))
        ));
    }
}
