//! Interactive event source: prompts on stderr, answers from a line reader.

use std::io::{BufRead, Write};

use rubiks_bench::notation::format;
use rubiks_bench::protocol::{
    EventPayload, EventSource, MonotonicClock, Prompt, SessionError, SessionEvent,
};
use rubiks_bench::validator::ConversionError;
use rubiks_bench::FaceletState;

use crate::colors::ColorMap;

pub struct LiveSource<R, W> {
    input: R,
    prompts: W,
    clock: MonotonicClock,
    colors: Option<ColorMap>,
}

impl<R: BufRead, W: Write> LiveSource<R, W> {
    pub fn new(input: R, prompts: W, colors: Option<ColorMap>) -> Self {
        LiveSource {
            input,
            prompts,
            clock: MonotonicClock::start(),
            colors,
        }
    }

    fn say(&mut self, text: &str) -> Result<(), SessionError> {
        writeln!(self.prompts, "{text}").map_err(io)
    }

    fn ask(&mut self, text: &str) -> Result<String, SessionError> {
        write!(self.prompts, "{text}").map_err(io)?;
        self.prompts.flush().map_err(io)?;
        let mut line = String::new();
        if self.input.read_line(&mut line).map_err(io)? == 0 {
            return Err(SessionError::Io("input closed".into()));
        }
        Ok(line.trim().to_string())
    }

    fn state(&mut self, text: &str, default: Option<String>) -> Result<String, SessionError> {
        let raw = self.ask(text)?;
        Ok(match (&self.colors, raw.is_empty(), default) {
            (_, true, Some(d)) => d,
            (Some(map), _, _) => map.translate(&raw),
            (None, _, _) => raw,
        })
    }

    fn event(&self, payload: EventPayload) -> SessionEvent {
        SessionEvent::new(self.clock.now(), payload)
    }
}

fn io(e: std::io::Error) -> SessionError {
    SessionError::Io(e.to_string())
}

impl<R: BufRead, W: Write> EventSource for LiveSource<R, W> {
    fn next_event(&mut self, prompt: &Prompt<'_>) -> Result<SessionEvent, SessionError> {
        let payload = match *prompt {
            Prompt::ChooseTier { tier, seed } => {
                self.say(&format!("{tier}, seed {seed}"))?;
                EventPayload::TierChosen { tier, seed }
            }
            Prompt::IssueSequence { trial, sequence } => {
                self.say(&format!("\ntrial {trial}: {}", format(sequence)))?;
                EventPayload::SequenceIssued {
                    trial,
                    sequence: sequence.clone(),
                }
            }
            Prompt::PlaceCube { trial } => {
                let initial = self.state(
                    "place the cube, then enter its state (ENTER = solved): ",
                    Some(FaceletState::solved().to_string()),
                )?;
                EventPayload::CubePlaced { trial, initial }
            }
            Prompt::MarkContact { trial } => {
                self.ask("press ENTER at first contact")?;
                EventPayload::ContactMarked { trial }
            }
            Prompt::MarkTermination { trial } => {
                self.ask("press ENTER at termination")?;
                EventPayload::TerminationMarked {
                    trial,
                    manual_elapsed: None,
                }
            }
            Prompt::EnterObserved { trial } => {
                let observed = self.state("enter the observed state: ", None)?;
                EventPayload::ObservedStateEntered { trial, observed }
            }
            Prompt::ReportVerdict { trial, verdict } => {
                if verdict.pass {
                    self.say(&format!("trial {trial}: PASS"))?;
                } else {
                    self.say(&format!(
                        "trial {trial}: FAIL\n  expected {}\n  mismatched {:?}",
                        verdict.expected, verdict.mismatched_indices
                    ))?;
                }
                EventPayload::TrialValidated {
                    trial,
                    pass: verdict.pass,
                }
            }
        };
        Ok(self.event(payload))
    }

    fn rejected(&mut self, _event: &SessionEvent, error: &ConversionError) -> bool {
        let _ = writeln!(self.prompts, "rejected: {error}; try again");
        true
    }
}
