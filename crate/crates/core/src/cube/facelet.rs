use std::fmt;
use std::str::FromStr;

use super::cubie::{CubieState, NUM_CORNERS, NUM_EDGES};
use super::{Face, StateError, Unreachable};

// Facelet indices: face base (U=0, R=9, F=18, D=27, L=36, B=45) plus the
// row-major position 0..9 within the face.
const U1: u8 = 0;
const U2: u8 = 1;
const U3: u8 = 2;
const U4: u8 = 3;
const U6: u8 = 5;
const U7: u8 = 6;
const U8: u8 = 7;
const U9: u8 = 8;
const R1: u8 = 9;
const R2: u8 = 10;
const R3: u8 = 11;
const R4: u8 = 12;
const R6: u8 = 14;
const R7: u8 = 15;
const R8: u8 = 16;
const R9: u8 = 17;
const F1: u8 = 18;
const F2: u8 = 19;
const F3: u8 = 20;
const F4: u8 = 21;
const F6: u8 = 23;
const F7: u8 = 24;
const F8: u8 = 25;
const F9: u8 = 26;
const D1: u8 = 27;
const D2: u8 = 28;
const D3: u8 = 29;
const D4: u8 = 30;
const D6: u8 = 32;
const D7: u8 = 33;
const D8: u8 = 34;
const D9: u8 = 35;
const L1: u8 = 36;
const L2: u8 = 37;
const L3: u8 = 38;
const L4: u8 = 39;
const L6: u8 = 41;
const L7: u8 = 42;
const L8: u8 = 43;
const L9: u8 = 44;
const B1: u8 = 45;
const B2: u8 = 46;
const B3: u8 = 47;
const B4: u8 = 48;
const B6: u8 = 50;
const B7: u8 = 51;
const B8: u8 = 52;
const B9: u8 = 53;

/// Stickers of each corner slot, starting with its U or D sticker and going
/// clockwise around the corner.
const CORNER_FACELETS: [[u8; 3]; NUM_CORNERS] = [
    [U9, R1, F3],
    [U7, F1, L3],
    [U1, L1, B3],
    [U3, B1, R3],
    [D3, F9, R7],
    [D1, L9, F7],
    [D7, B9, L7],
    [D9, R9, B7],
];

const CORNER_COLORS: [[Face; 3]; NUM_CORNERS] = {
    use Face::*;
    [
        [U, R, F],
        [U, F, L],
        [U, L, B],
        [U, B, R],
        [D, F, R],
        [D, L, F],
        [D, B, L],
        [D, R, B],
    ]
};

/// Stickers of each edge slot; the first one is the orientation reference.
const EDGE_FACELETS: [[u8; 2]; NUM_EDGES] = [
    [U6, R2],
    [U8, F2],
    [U4, L2],
    [U2, B2],
    [D6, R8],
    [D2, F8],
    [D4, L8],
    [D8, B8],
    [F6, R4],
    [F4, L6],
    [B6, L4],
    [B4, R6],
];

const EDGE_COLORS: [[Face; 2]; NUM_EDGES] = {
    use Face::*;
    [
        [U, R],
        [U, F],
        [U, L],
        [U, B],
        [D, R],
        [D, F],
        [D, L],
        [D, B],
        [F, R],
        [F, L],
        [B, L],
        [B, R],
    ]
};

/// 54 face labels in U, R, F, D, L, B face order, row-major within a face.
///
/// The value is not necessarily a legal cube; [`FaceletState::to_cubie`]
/// is where legality is decided.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceletState([Face; 54]);

impl FaceletState {
    pub const SOLVED_STR: &'static str = "UUUUUUUUURRRRRRRRRFFFFFFFFFDDDDDDDDDLLLLLLLLLBBBBBBBBB";

    pub fn solved() -> FaceletState {
        let mut labels = [Face::U; 54];
        for (i, label) in labels.iter_mut().enumerate() {
            *label = Face::ALL[i / 9];
        }
        FaceletState(labels)
    }

    pub fn from_labels(labels: [Face; 54]) -> FaceletState {
        FaceletState(labels)
    }

    pub fn labels(&self) -> &[Face; 54] {
        &self.0
    }

    /// Indices where `self` and `other` carry different labels, ascending.
    pub fn diff(&self, other: &FaceletState) -> Vec<usize> {
        (0..54).filter(|&i| self.0[i] != other.0[i]).collect()
    }

    pub fn from_cubie(c: &CubieState) -> FaceletState {
        let mut out = FaceletState::solved();
        for slot in 0..NUM_CORNERS {
            let cubie = c.corner_perm()[slot] as usize;
            let ori = c.corner_ori()[slot] as usize;
            for n in 0..3 {
                out.0[CORNER_FACELETS[slot][(n + ori) % 3] as usize] = CORNER_COLORS[cubie][n];
            }
        }
        for slot in 0..NUM_EDGES {
            let cubie = c.edge_perm()[slot] as usize;
            let ori = c.edge_ori()[slot] as usize;
            for n in 0..2 {
                out.0[EDGE_FACELETS[slot][(n + ori) % 2] as usize] = EDGE_COLORS[cubie][n];
            }
        }
        out
    }

    /// The unique cubie state whose sticker projection is `self`.
    pub fn to_cubie(&self) -> Result<CubieState, StateError> {
        self.check_labels()?;
        let at = |i: u8| self.0[i as usize];

        let mut corner_perm = [0u8; NUM_CORNERS];
        let mut corner_ori = [0u8; NUM_CORNERS];
        for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
            let colors = stickers.map(at);
            let found = colors
                .iter()
                .position(|&c| c == Face::U || c == Face::D)
                .and_then(|ori| {
                    let next = colors[(ori + 1) % 3];
                    let prev = colors[(ori + 2) % 3];
                    CORNER_COLORS
                        .iter()
                        .position(|cc| cc[0] == colors[ori] && cc[1] == next && cc[2] == prev)
                        .map(|cubie| (cubie, ori))
                });
            let (cubie, ori) = found.ok_or_else(|| StateError::UnrecognizedCubie {
                kind: "corner",
                slot,
                stickers: colors.iter().map(|f| f.letter()).collect(),
            })?;
            corner_perm[slot] = cubie as u8;
            corner_ori[slot] = ori as u8;
        }

        let mut edge_perm = [0u8; NUM_EDGES];
        let mut edge_ori = [0u8; NUM_EDGES];
        for (slot, stickers) in EDGE_FACELETS.iter().enumerate() {
            let colors = stickers.map(at);
            let found = EDGE_COLORS.iter().enumerate().find_map(|(cubie, ec)| {
                if *ec == colors {
                    Some((cubie, 0))
                } else if ec[0] == colors[1] && ec[1] == colors[0] {
                    Some((cubie, 1))
                } else {
                    None
                }
            });
            let (cubie, ori) = found.ok_or_else(|| StateError::UnrecognizedCubie {
                kind: "edge",
                slot,
                stickers: colors.iter().map(|f| f.letter()).collect(),
            })?;
            edge_perm[slot] = cubie as u8;
            edge_ori[slot] = ori;
        }

        CubieState::from_parts(corner_perm, corner_ori, edge_perm, edge_ori)
            .map_err(StateError::UnreachableState)
    }

    fn check_labels(&self) -> Result<(), StateError> {
        let mut counts = [0usize; 6];
        for f in self.0 {
            counts[f.index()] += 1;
        }
        if let Some(face) = Face::ALL.into_iter().find(|f| counts[f.index()] != 9) {
            return Err(StateError::MalformedLabels(format!(
                "label {face} appears {} times, expected 9",
                counts[face.index()]
            )));
        }
        for face in Face::ALL {
            let center = self.0[face.index() * 9 + 4];
            if center != face {
                return Err(StateError::MalformedLabels(format!(
                    "center of face {face} is {center}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for FaceletState {
    fn default() -> Self {
        FaceletState::solved()
    }
}

impl fmt::Display for FaceletState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for label in self.0 {
            write!(f, "{}", label.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FaceletState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaceletState({self})")
    }
}

impl FromStr for FaceletState {
    type Err = StateError;

    /// Parses the 54-character facelet string. Only length and alphabet are
    /// checked here.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 54 {
            return Err(StateError::InvalidLength(chars.len()));
        }
        let mut labels = [Face::U; 54];
        for (position, (&c, label)) in chars.iter().zip(labels.iter_mut()).enumerate() {
            *label = Face::from_letter(c).ok_or(StateError::InvalidLabel { position, found: c })?;
        }
        Ok(FaceletState(labels))
    }
}

impl From<Unreachable> for StateError {
    fn from(u: Unreachable) -> Self {
        StateError::UnreachableState(u)
    }
}
