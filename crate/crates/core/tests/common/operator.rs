//! A scripted experimenter that answers session prompts like a careful
//! human would: correct sequences, the cube placed solved, the observed
//! state typed in after each trial.

use chrono::{DateTime, Duration, Utc};
use rubiks_bench::cube::FaceletState;
use rubiks_bench::protocol::{
    EventPayload, EventSource, Prompt, SessionError, SessionEvent, Timestamp,
};
use rubiks_bench::validator::expected_final;

pub struct ScriptedOperator {
    now: DateTime<Utc>,
    /// Manipulation time per trial, in milliseconds.
    trial_ms: Vec<i64>,
    /// Trials whose observed state is entered wrongly (as the initial state).
    botched: Vec<u32>,
    initial: FaceletState,
    observed: Option<FaceletState>,
}

impl ScriptedOperator {
    pub fn new(start: &str, trial_ms: Vec<i64>, botched: Vec<u32>) -> ScriptedOperator {
        ScriptedOperator {
            now: start.parse().expect("RFC 3339 start"),
            trial_ms,
            botched,
            initial: FaceletState::solved(),
            observed: None,
        }
    }

    fn stamp(&mut self, ms: i64, payload: EventPayload) -> SessionEvent {
        self.now += Duration::milliseconds(ms);
        SessionEvent::new(Timestamp::from_datetime(self.now), payload)
    }
}

impl EventSource for ScriptedOperator {
    fn next_event(&mut self, prompt: &Prompt<'_>) -> Result<SessionEvent, SessionError> {
        Ok(match *prompt {
            Prompt::ChooseTier { tier, seed } => {
                self.stamp(0, EventPayload::TierChosen { tier, seed })
            }
            Prompt::IssueSequence { trial, sequence } => {
                let expected = expected_final(&self.initial, sequence).unwrap();
                self.observed = Some(if self.botched.contains(&trial) {
                    self.initial
                } else {
                    expected
                });
                self.stamp(
                    4_250,
                    EventPayload::SequenceIssued {
                        trial,
                        sequence: sequence.clone(),
                    },
                )
            }
            Prompt::PlaceCube { trial } => self.stamp(
                20_125,
                EventPayload::CubePlaced {
                    trial,
                    initial: self.initial.to_string(),
                },
            ),
            Prompt::MarkContact { trial } => {
                self.stamp(3_000, EventPayload::ContactMarked { trial })
            }
            Prompt::MarkTermination { trial } => {
                let ms = self.trial_ms[trial as usize - 1];
                self.stamp(
                    ms,
                    EventPayload::TerminationMarked {
                        trial,
                        manual_elapsed: None,
                    },
                )
            }
            Prompt::EnterObserved { trial } => {
                let observed = self.observed.take().unwrap().to_string();
                self.stamp(
                    41_500,
                    EventPayload::ObservedStateEntered { trial, observed },
                )
            }
            Prompt::ReportVerdict { trial, verdict } => self.stamp(
                1_000,
                EventPayload::TrialValidated {
                    trial,
                    pass: verdict.pass,
                },
            ),
        })
    }
}
