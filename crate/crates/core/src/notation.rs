//! Singmaster notation for outer-layer turns.
//!
//! Grammar: `sequence := (ws* move)* ws*`, `move := face modifier?`,
//! `face ∈ {U,D,L,R,F,B}`, `modifier ∈ {', 2}`. Whitespace between moves is
//! optional, so `UR2F'` and `U R2 F'` parse the same.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cube::{Face, Move, MoveSequence, Turns};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A letter that is not one of the six outer faces (includes lowercase
    /// wide-move letters and slice/rotation letters).
    UnknownFaceLetter,
    /// A `'` or `2` with no face letter directly before it.
    DanglingModifier,
    /// Anything else.
    UnexpectedCharacter,
}

/// Position is a zero-based character (not byte) index into the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{kind:?} at position {position} ({found:?})")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub found: char,
}

fn modifier(c: char) -> Option<Turns> {
    match c {
        '\'' => Some(Turns::Ccw),
        '2' => Some(Turns::Half),
        _ => None,
    }
}

pub fn parse(text: &str) -> Result<MoveSequence, ParseError> {
    let mut moves = Vec::new();
    // Set right after a face letter, cleared once a modifier is consumed or
    // anything else is seen.
    let mut open: Option<Face> = None;

    for (position, c) in text.chars().enumerate() {
        let error = |kind| ParseError {
            position,
            kind,
            found: c,
        };
        if let Some(face) = Face::from_letter(c) {
            if let Some(prev) = open.take() {
                moves.push(Move::new(prev, Turns::Cw));
            }
            open = Some(face);
        } else if let Some(turns) = modifier(c) {
            let face = open.take().ok_or(error(ParseErrorKind::DanglingModifier))?;
            moves.push(Move::new(face, turns));
        } else if matches!(c, ' ' | '\t' | '\n' | '\r') {
            if let Some(prev) = open.take() {
                moves.push(Move::new(prev, Turns::Cw));
            }
        } else if c.is_alphabetic() {
            return Err(error(ParseErrorKind::UnknownFaceLetter));
        } else {
            return Err(error(ParseErrorKind::UnexpectedCharacter));
        }
    }
    if let Some(prev) = open {
        moves.push(Move::new(prev, Turns::Cw));
    }
    Ok(MoveSequence::from(moves))
}

/// Single-space separated; `U`, `U2`, `U'`.
pub fn format(seq: &MoveSequence) -> String {
    seq.to_string()
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
