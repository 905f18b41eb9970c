//! Exact 3x3x3 cube state: face turns, the cubie model and the facelet
//! interchange format.

mod cubie;
mod facelet;

use std::fmt;

pub use cubie::{CubieState, Unreachable};
pub use facelet::FaceletState;

use thiserror::Error;

/// One of the six outer layers. The discriminant order (U, R, F, D, L, B) is
/// the face order of the facelet string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    U = 0,
    R = 1,
    F = 2,
    D = 3,
    L = 4,
    B = 5,
}

impl Face {
    /// Facelet-string order.
    pub const ALL: [Face; 6] = [Face::U, Face::R, Face::F, Face::D, Face::L, Face::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Face::U => 'U',
            Face::R => 'R',
            Face::F => 'F',
            Face::D => 'D',
            Face::L => 'L',
            Face::B => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Face> {
        Some(match c {
            'U' => Face::U,
            'R' => Face::R,
            'F' => Face::F,
            'D' => Face::D,
            'L' => Face::L,
            'B' => Face::B,
            _ => return None,
        })
    }

    /// The axis this face is perpendicular to: U/D → y, L/R → x, F/B → z.
    pub fn axis(self) -> Axis {
        match self {
            Face::U | Face::D => Axis::Y,
            Face::L | Face::R => Axis::X,
            Face::F | Face::B => Axis::Z,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Cube axes, ordered x < y < z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Number of clockwise quarter turns in a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turns {
    /// One quarter turn clockwise (`U`).
    Cw = 1,
    /// Half turn (`U2`).
    Half = 2,
    /// One quarter turn counter-clockwise (`U'`).
    Ccw = 3,
}

impl Turns {
    pub const ALL: [Turns; 3] = [Turns::Cw, Turns::Half, Turns::Ccw];

    pub fn count(self) -> u8 {
        self as u8
    }

    pub fn from_count(n: u8) -> Option<Turns> {
        match n {
            1 => Some(Turns::Cw),
            2 => Some(Turns::Half),
            3 => Some(Turns::Ccw),
            _ => None,
        }
    }

    pub fn inverse(self) -> Turns {
        match self {
            Turns::Cw => Turns::Ccw,
            Turns::Half => Turns::Half,
            Turns::Ccw => Turns::Cw,
        }
    }
}

/// A single outer-layer turn. A half turn is one move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub face: Face,
    pub turns: Turns,
}

impl Move {
    pub const fn new(face: Face, turns: Turns) -> Move {
        Move { face, turns }
    }

    /// All 18 moves, face-major in facelet order.
    pub fn all() -> impl Iterator<Item = Move> {
        Face::ALL.into_iter().flat_map(|face| {
            Turns::ALL
                .into_iter()
                .map(move |turns| Move { face, turns })
        })
    }

    pub fn inverse(self) -> Move {
        Move::new(self.face, self.turns.inverse())
    }

    /// Group order of the move: 4 for quarter turns, 2 for half turns.
    pub fn order(self) -> usize {
        match self.turns {
            Turns::Half => 2,
            _ => 4,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.turns {
            Turns::Cw => write!(f, "{}", self.face),
            Turns::Half => write!(f, "{}2", self.face),
            Turns::Ccw => write!(f, "{}'", self.face),
        }
    }
}

/// An ordered list of moves. Each element counts as one rotation toward a
/// tier's N.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence(Vec<Move>);

impl MoveSequence {
    pub fn new() -> MoveSequence {
        MoveSequence(Vec::new())
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.0.iter()
    }

    /// Reversed order with every move inverted.
    pub fn inverse(&self) -> MoveSequence {
        self.0.iter().rev().map(|m| m.inverse()).collect()
    }

    /// The sequence repeated `times` times.
    pub fn repeat(&self, times: usize) -> MoveSequence {
        MoveSequence(self.0.repeat(times))
    }
}

impl From<Vec<Move>> for MoveSequence {
    fn from(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MoveSequence {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for MoveSequence {
    type Item = Move;
    type IntoIter = std::vec::IntoIter<Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Inverse of a sequence: applying `seq` then `inverse_sequence(seq)` is the
/// identity on every state.
pub fn inverse_sequence(seq: &MoveSequence) -> MoveSequence {
    seq.inverse()
}

pub fn apply_move(state: &CubieState, m: Move) -> CubieState {
    state.apply_move(m)
}

/// Left-to-right fold of [`apply_move`].
pub fn apply_sequence(state: &CubieState, seq: &MoveSequence) -> CubieState {
    seq.iter().fold(*state, |s, &m| s.apply_move(m))
}

pub fn facelet_to_cubie(f: &FaceletState) -> Result<CubieState, StateError> {
    f.to_cubie()
}

pub fn cubie_to_facelet(c: &CubieState) -> FaceletState {
    FaceletState::from_cubie(c)
}

pub fn is_solved(c: &CubieState) -> bool {
    c.is_solved()
}

/// Errors from reading or interpreting a facelet state.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("facelet string has {0} characters, expected 54")]
    InvalidLength(usize),
    #[error("invalid facelet label {found:?} at position {position}")]
    InvalidLabel { position: usize, found: char },
    #[error("malformed labels: {0}")]
    MalformedLabels(String),
    #[error("unrecognized {kind} at slot {slot}: stickers {stickers}")]
    UnrecognizedCubie {
        kind: &'static str,
        slot: usize,
        stickers: String,
    },
    #[error("unreachable cube state: {0}")]
    UnreachableState(Unreachable),
}
