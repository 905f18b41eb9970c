//! Expected final state and facelet-exact judgement of an observed cube.
//!
//! Comparison is strict: the observed state must be entered in the same
//! global orientation as the initial state. A whole-cube rotation of the
//! correct result is reported as a mismatch.

use serde::{Deserialize, Serialize};

use crate::cube::{apply_sequence, FaceletState, MoveSequence, StateError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub expected: FaceletState,
    pub observed: FaceletState,
    /// Facelet indices (0..54) where observed differs from expected,
    /// ascending.
    pub mismatched_indices: Vec<usize>,
}

/// Which input a conversion error came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Input {
    Initial,
    Observed,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{input:?} state: {source}")]
pub struct ConversionError {
    pub input: Input,
    pub source: StateError,
}

pub fn expected_final(
    initial: &FaceletState,
    seq: &MoveSequence,
) -> Result<FaceletState, ConversionError> {
    let start = initial.to_cubie().map_err(|source| ConversionError {
        input: Input::Initial,
        source,
    })?;
    Ok(FaceletState::from_cubie(&apply_sequence(&start, seq)))
}

/// Compares `observed` with the state `seq` should produce from `initial`.
/// Both facelet inputs must describe legal cubes.
pub fn validate(
    initial: &FaceletState,
    seq: &MoveSequence,
    observed: &FaceletState,
) -> Result<Verdict, ConversionError> {
    let expected = expected_final(initial, seq)?;
    observed.to_cubie().map_err(|source| ConversionError {
        input: Input::Observed,
        source,
    })?;
    let mismatched_indices = expected.diff(observed);
    Ok(Verdict {
        pass: mismatched_indices.is_empty(),
        expected,
        observed: *observed,
        mismatched_indices,
    })
}
