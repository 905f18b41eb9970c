//! Step-by-step protocol sessions driven by an event source.
//!
//! The same loop serves interactive runs (events synthesized from
//! experimenter key presses) and replays of a recorded log. Elapsed trial
//! time is always the difference of two event timestamps, and those
//! timestamps come from a monotonic clock, so a replay reproduces the
//! original result exactly.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use chrono::{DateTime, Duration, NaiveDate, SecondsFormat, Utc};
use thiserror::Error;

use super::{score_tier, ScoreError, TierResult, TrialRecord};
use crate::cube::{FaceletState, MoveSequence, StateError};
use crate::notation::{self, ParseError};
use crate::scramble::{generate_sequence, Seed, TierError, TierSpec};
use crate::validator::{validate, ConversionError, Input, Verdict};

/// Event time with microsecond resolution, rendered as RFC 3339 UTC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(DateTime<Utc>);

impl Timestamp {
    pub fn from_datetime(t: DateTime<Utc>) -> Timestamp {
        Timestamp(truncate_to_micros(t))
    }

    pub fn datetime(&self) -> DateTime<Utc> {
        self.0
    }

    pub fn date(&self) -> NaiveDate {
        self.0.date_naive()
    }

    /// `self - earlier` in seconds.
    pub fn seconds_since(&self, earlier: &Timestamp) -> f64 {
        let micros = (self.0 - earlier.0)
            .num_microseconds()
            .expect("session shorter than 292k years");
        micros as f64 / 1e6
    }
}

fn truncate_to_micros(t: DateTime<Utc>) -> DateTime<Utc> {
    let nanos = t.timestamp_subsec_nanos();
    t - Duration::nanoseconds((nanos % 1000) as i64)
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_rfc3339_opts(SecondsFormat::Micros, true))
    }
}

impl FromStr for Timestamp {
    type Err = chrono::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DateTime::parse_from_rfc3339(s).map(|t| Timestamp::from_datetime(t.with_timezone(&Utc)))
    }
}

/// Wall-clock anchor plus a monotonic offset. Readings never go backwards
/// and their differences are monotonic-clock differences.
#[derive(Debug, Clone, Copy)]
pub struct MonotonicClock {
    anchor: DateTime<Utc>,
    start: Instant,
}

impl MonotonicClock {
    pub fn start() -> MonotonicClock {
        MonotonicClock {
            anchor: truncate_to_micros(Utc::now()),
            start: Instant::now(),
        }
    }

    pub fn now(&self) -> Timestamp {
        let offset = Duration::from_std(self.start.elapsed()).expect("offset fits");
        Timestamp::from_datetime(self.anchor + offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    TierChosen,
    SequenceIssued,
    CubePlaced,
    ContactMarked,
    TerminationMarked,
    ObservedStateEntered,
    TrialValidated,
}

impl EventKind {
    pub const ALL: [EventKind; 7] = [
        EventKind::TierChosen,
        EventKind::SequenceIssued,
        EventKind::CubePlaced,
        EventKind::ContactMarked,
        EventKind::TerminationMarked,
        EventKind::ObservedStateEntered,
        EventKind::TrialValidated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EventKind::TierChosen => "TierChosen",
            EventKind::SequenceIssued => "SequenceIssued",
            EventKind::CubePlaced => "CubePlaced",
            EventKind::ContactMarked => "ContactMarked",
            EventKind::TerminationMarked => "TerminationMarked",
            EventKind::ObservedStateEntered => "ObservedStateEntered",
            EventKind::TrialValidated => "TrialValidated",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Facelet strings are kept raw so that a mistyped entry surfaces as a
/// conversion error inside the session rather than a log syntax error.
#[derive(Debug, Clone, PartialEq)]
pub enum EventPayload {
    TierChosen {
        tier: TierSpec,
        seed: Seed,
    },
    SequenceIssued {
        trial: u32,
        sequence: MoveSequence,
    },
    CubePlaced {
        trial: u32,
        initial: String,
    },
    ContactMarked {
        trial: u32,
    },
    /// `manual_elapsed` overrides the timestamp difference, for times read
    /// off a video afterwards.
    TerminationMarked {
        trial: u32,
        manual_elapsed: Option<f64>,
    },
    ObservedStateEntered {
        trial: u32,
        observed: String,
    },
    TrialValidated {
        trial: u32,
        pass: bool,
    },
}

impl EventPayload {
    pub fn kind(&self) -> EventKind {
        match self {
            EventPayload::TierChosen { .. } => EventKind::TierChosen,
            EventPayload::SequenceIssued { .. } => EventKind::SequenceIssued,
            EventPayload::CubePlaced { .. } => EventKind::CubePlaced,
            EventPayload::ContactMarked { .. } => EventKind::ContactMarked,
            EventPayload::TerminationMarked { .. } => EventKind::TerminationMarked,
            EventPayload::ObservedStateEntered { .. } => EventKind::ObservedStateEntered,
            EventPayload::TrialValidated { .. } => EventKind::TrialValidated,
        }
    }

    fn trial(&self) -> Option<u32> {
        match *self {
            EventPayload::TierChosen { .. } => None,
            EventPayload::SequenceIssued { trial, .. }
            | EventPayload::CubePlaced { trial, .. }
            | EventPayload::ContactMarked { trial }
            | EventPayload::TerminationMarked { trial, .. }
            | EventPayload::ObservedStateEntered { trial, .. }
            | EventPayload::TrialValidated { trial, .. } => Some(trial),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionEvent {
    pub timestamp: Timestamp,
    pub payload: EventPayload,
}

impl SessionEvent {
    pub fn new(timestamp: Timestamp, payload: EventPayload) -> SessionEvent {
        SessionEvent { timestamp, payload }
    }

    pub fn kind(&self) -> EventKind {
        self.payload.kind()
    }

    /// `kind<TAB>timestamp<TAB>payload`, no trailing newline.
    pub fn to_line(&self) -> String {
        let payload = match &self.payload {
            EventPayload::TierChosen { tier, seed } => format!("{tier} seed={seed}"),
            EventPayload::SequenceIssued { trial, sequence } => {
                format!("{trial} {}", notation::format(sequence))
            }
            EventPayload::CubePlaced { trial, initial } => format!("{trial} {initial}"),
            EventPayload::ContactMarked { trial } => trial.to_string(),
            EventPayload::TerminationMarked {
                trial,
                manual_elapsed: None,
            } => trial.to_string(),
            EventPayload::TerminationMarked {
                trial,
                manual_elapsed: Some(s),
            } => format!("{trial} elapsed={s}"),
            EventPayload::ObservedStateEntered { trial, observed } => format!("{trial} {observed}"),
            EventPayload::TrialValidated { trial, pass } => {
                format!("{trial} {}", if *pass { "PASS" } else { "FAIL" })
            }
        };
        format!("{}\t{}\t{}", self.kind(), self.timestamp, payload)
    }

    pub fn from_line(line: &str) -> Result<SessionEvent, EventLogError> {
        let mut fields = line.splitn(3, '\t');
        let kind_str = fields.next().unwrap_or_default();
        let kind = EventKind::ALL
            .into_iter()
            .find(|k| k.name() == kind_str)
            .ok_or_else(|| EventLogError::UnknownKind(kind_str.to_string()))?;
        let ts_str = fields
            .next()
            .ok_or(EventLogError::MissingField("timestamp"))?;
        let timestamp = ts_str
            .parse()
            .map_err(|_| EventLogError::BadTimestamp(ts_str.to_string()))?;
        let payload = fields.next().unwrap_or_default();
        let bad = |why: &str| EventLogError::BadPayload {
            kind,
            detail: why.to_string(),
        };

        let (head, rest) = match payload.split_once(' ') {
            Some((h, r)) => (h, r),
            None => (payload, ""),
        };
        let trial = || -> Result<u32, EventLogError> {
            head.parse::<u32>()
                .ok()
                .filter(|&t| t >= 1)
                .ok_or_else(|| bad("expected a 1-based trial number"))
        };
        let payload = match kind {
            EventKind::TierChosen => {
                let tier = head.parse::<TierSpec>()?;
                let seed = rest
                    .strip_prefix("seed=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected seed=<u64>"))?;
                EventPayload::TierChosen {
                    tier,
                    seed: Seed(seed),
                }
            }
            EventKind::SequenceIssued => EventPayload::SequenceIssued {
                trial: trial()?,
                sequence: notation::parse(rest)?,
            },
            EventKind::CubePlaced => EventPayload::CubePlaced {
                trial: trial()?,
                initial: rest.to_string(),
            },
            EventKind::ContactMarked => {
                if !rest.is_empty() {
                    return Err(bad("unexpected trailing text"));
                }
                EventPayload::ContactMarked { trial: trial()? }
            }
            EventKind::TerminationMarked => {
                let manual_elapsed = if rest.is_empty() {
                    None
                } else {
                    let secs = rest
                        .strip_prefix("elapsed=")
                        .and_then(|s| s.parse::<f64>().ok())
                        .filter(|s| s.is_finite() && *s >= 0.0)
                        .ok_or_else(|| bad("expected elapsed=<non-negative seconds>"))?;
                    Some(secs)
                };
                EventPayload::TerminationMarked {
                    trial: trial()?,
                    manual_elapsed,
                }
            }
            EventKind::ObservedStateEntered => EventPayload::ObservedStateEntered {
                trial: trial()?,
                observed: rest.to_string(),
            },
            EventKind::TrialValidated => EventPayload::TrialValidated {
                trial: trial()?,
                pass: match rest {
                    "PASS" => true,
                    "FAIL" => false,
                    _ => return Err(bad("expected PASS or FAIL")),
                },
            },
        };
        Ok(SessionEvent { timestamp, payload })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EventLogError {
    #[error("unknown event kind {0:?}")]
    UnknownKind(String),
    #[error("missing {0} field")]
    MissingField(&'static str),
    #[error("bad timestamp {0:?}")]
    BadTimestamp(String),
    #[error("bad {kind} payload: {detail}")]
    BadPayload { kind: EventKind, detail: String },
    #[error(transparent)]
    Tier(#[from] TierError),
    #[error(transparent)]
    Notation(#[from] ParseError),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        source: Box<EventLogError>,
    },
}

/// Parses an event log. Blank lines and `#` comments are skipped.
pub fn read_event_log(text: &str) -> Result<Vec<SessionEvent>, EventLogError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            SessionEvent::from_line(l).map_err(|e| EventLogError::Line {
                line: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn write_event_log(events: &[SessionEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&e.to_line());
        out.push('\n');
    }
    out
}

/// What the session is waiting for next.
#[derive(Debug, Clone, Copy)]
pub enum Prompt<'a> {
    ChooseTier {
        tier: TierSpec,
        seed: Seed,
    },
    IssueSequence {
        trial: u32,
        sequence: &'a MoveSequence,
    },
    PlaceCube {
        trial: u32,
    },
    MarkContact {
        trial: u32,
    },
    MarkTermination {
        trial: u32,
    },
    EnterObserved {
        trial: u32,
    },
    ReportVerdict {
        trial: u32,
        verdict: &'a Verdict,
    },
}

impl Prompt<'_> {
    pub fn expected_kind(&self) -> EventKind {
        match self {
            Prompt::ChooseTier { .. } => EventKind::TierChosen,
            Prompt::IssueSequence { .. } => EventKind::SequenceIssued,
            Prompt::PlaceCube { .. } => EventKind::CubePlaced,
            Prompt::MarkContact { .. } => EventKind::ContactMarked,
            Prompt::MarkTermination { .. } => EventKind::TerminationMarked,
            Prompt::EnterObserved { .. } => EventKind::ObservedStateEntered,
            Prompt::ReportVerdict { .. } => EventKind::TrialValidated,
        }
    }

    fn trial(&self) -> Option<u32> {
        match *self {
            Prompt::ChooseTier { .. } => None,
            Prompt::IssueSequence { trial, .. }
            | Prompt::PlaceCube { trial }
            | Prompt::MarkContact { trial }
            | Prompt::MarkTermination { trial }
            | Prompt::EnterObserved { trial }
            | Prompt::ReportVerdict { trial, .. } => Some(trial),
        }
    }
}

pub trait EventSource {
    /// Produces the next event. Replay sources return whatever the log holds
    /// next; the session checks it against `prompt`.
    fn next_event(&mut self, prompt: &Prompt<'_>) -> Result<SessionEvent, SessionError>;

    /// Called when an entered state cannot be interpreted. Returning `true`
    /// discards the event and prompts again; `false` aborts the session.
    fn rejected(&mut self, _event: &SessionEvent, _error: &ConversionError) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error("expected {expected} but got {found}")]
    OutOfOrderEvent {
        expected: EventKind,
        found: EventKind,
    },
    #[error("{kind} is for trial {found}, expected trial {expected}")]
    WrongTrial {
        kind: EventKind,
        expected: u32,
        found: u32,
    },
    #[error("event timestamp {found} is earlier than {previous}")]
    ClockRegression {
        previous: Timestamp,
        found: Timestamp,
    },
    #[error("log chose {found_tier} seed={found_seed}, session is {tier} seed={seed}")]
    TierMismatch {
        tier: TierSpec,
        seed: Seed,
        found_tier: TierSpec,
        found_seed: Seed,
    },
    #[error("trial {trial} was issued a sequence other than the seeded one")]
    SequenceMismatch { trial: u32 },
    #[error("trial {trial} recorded {recorded} but validates as {computed}")]
    VerdictMismatch {
        trial: u32,
        recorded: &'static str,
        computed: &'static str,
    },
    #[error("trial {trial}: {source}")]
    Conversion { trial: u32, source: ConversionError },
    #[error("event log ended while waiting for {0}")]
    UnexpectedEnd(EventKind),
    #[error("{0} unconsumed event(s) after the session finished")]
    TrailingEvents(usize),
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionOutcome {
    pub result: TierResult,
    /// Accepted events, in order. Rejected entries are not included, so this
    /// log replays to the same result.
    pub events: Vec<SessionEvent>,
}

impl SessionOutcome {
    /// Date of the first event, used as the report date.
    pub fn date(&self) -> Option<NaiveDate> {
        self.events.first().map(|e| e.timestamp.date())
    }
}

/// Replays a recorded event log.
#[derive(Debug, Clone)]
pub struct ReplaySource {
    events: std::vec::IntoIter<SessionEvent>,
}

impl ReplaySource {
    pub fn new(events: Vec<SessionEvent>) -> ReplaySource {
        ReplaySource {
            events: events.into_iter(),
        }
    }

    pub fn from_log(text: &str) -> Result<ReplaySource, EventLogError> {
        Ok(ReplaySource::new(read_event_log(text)?))
    }

    /// Errors if the log holds events the session never asked for.
    pub fn finish(self) -> Result<(), SessionError> {
        match self.events.len() {
            0 => Ok(()),
            n => Err(SessionError::TrailingEvents(n)),
        }
    }
}

impl EventSource for ReplaySource {
    fn next_event(&mut self, prompt: &Prompt<'_>) -> Result<SessionEvent, SessionError> {
        self.events
            .next()
            .ok_or(SessionError::UnexpectedEnd(prompt.expected_kind()))
    }
}

struct Driver<'s> {
    source: &'s mut dyn EventSource,
    events: Vec<SessionEvent>,
}

impl Driver<'_> {
    /// Pulls the next event and checks kind, trial number and clock order.
    fn expect(&mut self, prompt: Prompt<'_>) -> Result<SessionEvent, SessionError> {
        let event = self.source.next_event(&prompt)?;
        let expected = prompt.expected_kind();
        if event.kind() != expected {
            return Err(SessionError::OutOfOrderEvent {
                expected,
                found: event.kind(),
            });
        }
        if let (Some(want), Some(got)) = (prompt.trial(), event.payload.trial()) {
            if want != got {
                return Err(SessionError::WrongTrial {
                    kind: expected,
                    expected: want,
                    found: got,
                });
            }
        }
        if let Some(previous) = self.events.last().map(|e| e.timestamp) {
            if event.timestamp < previous {
                return Err(SessionError::ClockRegression {
                    previous,
                    found: event.timestamp,
                });
            }
        }
        Ok(event)
    }

    /// Repeats `prompt` until `accept` succeeds or the source gives up.
    fn expect_state<T>(
        &mut self,
        prompt: Prompt<'_>,
        trial: u32,
        mut accept: impl FnMut(&EventPayload) -> Result<T, ConversionError>,
    ) -> Result<T, SessionError> {
        loop {
            let event = self.expect(prompt)?;
            match accept(&event.payload) {
                Ok(value) => {
                    self.events.push(event);
                    return Ok(value);
                }
                Err(error) => {
                    if !self.source.rejected(&event, &error) {
                        return Err(SessionError::Conversion {
                            trial,
                            source: error,
                        });
                    }
                }
            }
        }
    }
}

fn parse_state(raw: &str, input: Input) -> Result<FaceletState, ConversionError> {
    let state: FaceletState = raw
        .parse()
        .map_err(|source: StateError| ConversionError { input, source })?;
    state
        .to_cubie()
        .map_err(|source| ConversionError { input, source })?;
    Ok(state)
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs one tier: for each trial, issue the sequence, place the cube, time
/// contact to termination, take the observed state and validate it. Stops
/// after the first failed trial.
pub fn run_session(
    tier: TierSpec,
    seed: Seed,
    source: &mut dyn EventSource,
) -> Result<SessionOutcome, SessionError> {
    let mut d = Driver {
        source,
        events: Vec::new(),
    };

    let chosen = d.expect(Prompt::ChooseTier { tier, seed })?;
    if let EventPayload::TierChosen {
        tier: found_tier,
        seed: found_seed,
    } = chosen.payload
    {
        if (found_tier, found_seed) != (tier, seed) {
            return Err(SessionError::TierMismatch {
                tier,
                seed,
                found_tier,
                found_seed,
            });
        }
    }
    d.events.push(chosen);

    let mut records = Vec::new();
    for trial in 1..=tier.trials() {
        let sequence = generate_sequence(seed, trial, tier.rotations());

        let issued = d.expect(Prompt::IssueSequence {
            trial,
            sequence: &sequence,
        })?;
        if !matches!(&issued.payload, EventPayload::SequenceIssued { sequence: s, .. } if *s == sequence)
        {
            return Err(SessionError::SequenceMismatch { trial });
        }
        d.events.push(issued);

        let initial = d.expect_state(Prompt::PlaceCube { trial }, trial, |p| match p {
            EventPayload::CubePlaced { initial, .. } => parse_state(initial, Input::Initial),
            _ => unreachable!("kind checked"),
        })?;

        let contact = d.expect(Prompt::MarkContact { trial })?;
        let contact_at = contact.timestamp;
        d.events.push(contact);

        let termination = d.expect(Prompt::MarkTermination { trial })?;
        let elapsed_seconds = match termination.payload {
            EventPayload::TerminationMarked {
                manual_elapsed: Some(secs),
                ..
            } => secs,
            _ => termination.timestamp.seconds_since(&contact_at),
        };
        d.events.push(termination);

        let (observed, verdict) =
            d.expect_state(Prompt::EnterObserved { trial }, trial, |p| match p {
                EventPayload::ObservedStateEntered { observed, .. } => {
                    let observed = parse_state(observed, Input::Observed)?;
                    let verdict = validate(&initial, &sequence, &observed)?;
                    Ok((observed, verdict))
                }
                _ => unreachable!("kind checked"),
            })?;

        let validated = d.expect(Prompt::ReportVerdict {
            trial,
            verdict: &verdict,
        })?;
        if let EventPayload::TrialValidated { pass, .. } = validated.payload {
            if pass != verdict.pass {
                return Err(SessionError::VerdictMismatch {
                    trial,
                    recorded: pass_word(pass),
                    computed: pass_word(verdict.pass),
                });
            }
        }
        d.events.push(validated);

        let pass = verdict.pass;
        records.push(TrialRecord {
            trial_index: trial,
            sequence,
            initial_state: initial,
            observed_state: observed,
            elapsed_seconds,
            verdict,
        });
        if !pass {
            break;
        }
    }

    let result = score_tier(records, tier, seed)?;
    Ok(SessionOutcome {
        result,
        events: d.events,
    })
}
