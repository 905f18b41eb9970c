use std::fmt;

use super::{Face, Move};

// Corner slots: URF, UFL, ULB, UBR, DFR, DLF, DBL, DRB.
// Edge slots:   UR, UF, UL, UB, DR, DF, DL, DB, FR, FL, BL, BR.
pub(crate) const NUM_CORNERS: usize = 8;
pub(crate) const NUM_EDGES: usize = 12;

/// Cube configuration as cubie permutations and orientations.
///
/// `corner_perm[i]` is the corner cubie occupying slot `i`, and
/// `corner_ori[i]` its twist (0..3) relative to the slot's reference sticker.
/// Edges are the same with flips in 0..2. Every value of this type satisfies
/// the reachability invariants: bijective permutations, orientation sums of
/// zero and equal permutation parities.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubieState {
    corner_perm: [u8; NUM_CORNERS],
    corner_ori: [u8; NUM_CORNERS],
    edge_perm: [u8; NUM_EDGES],
    edge_ori: [u8; NUM_EDGES],
}

/// Why a cubie assignment cannot occur on a physical cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unreachable {
    /// Some cubie appears twice, so the permutation is not a bijection.
    DuplicateCubie,
    /// Corner twists do not sum to 0 mod 3.
    CornerTwist,
    /// Edge flips do not sum to 0 mod 2.
    EdgeFlip,
    /// Corner and edge permutations have different parity.
    PermutationParity,
}

impl fmt::Display for Unreachable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unreachable::DuplicateCubie => "a cubie appears more than once",
            Unreachable::CornerTwist => "corner orientation sum is not 0 mod 3",
            Unreachable::EdgeFlip => "edge orientation sum is not 0 mod 2",
            Unreachable::PermutationParity => "corner and edge permutation parities differ",
        })
    }
}

const fn face_turn(
    corner_perm: [u8; NUM_CORNERS],
    corner_ori: [u8; NUM_CORNERS],
    edge_perm: [u8; NUM_EDGES],
    edge_ori: [u8; NUM_EDGES],
) -> CubieState {
    CubieState {
        corner_perm,
        corner_ori,
        edge_perm,
        edge_ori,
    }
}

// Clockwise quarter turn of each face, indexed by `Face as usize`.
const FACE_TURNS: [CubieState; 6] = [
    // U
    face_turn(
        [3, 0, 1, 2, 4, 5, 6, 7],
        [0; 8],
        [3, 0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11],
        [0; 12],
    ),
    // R
    face_turn(
        [4, 1, 2, 0, 7, 5, 6, 3],
        [2, 0, 0, 1, 1, 0, 0, 2],
        [8, 1, 2, 3, 11, 5, 6, 7, 4, 9, 10, 0],
        [0; 12],
    ),
    // F
    face_turn(
        [1, 5, 2, 3, 0, 4, 6, 7],
        [1, 2, 0, 0, 2, 1, 0, 0],
        [0, 9, 2, 3, 4, 8, 6, 7, 1, 5, 10, 11],
        [0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0],
    ),
    // D
    face_turn(
        [0, 1, 2, 3, 5, 6, 7, 4],
        [0; 8],
        [0, 1, 2, 3, 5, 6, 7, 4, 8, 9, 10, 11],
        [0; 12],
    ),
    // L
    face_turn(
        [0, 2, 6, 3, 4, 1, 5, 7],
        [0, 1, 2, 0, 0, 2, 1, 0],
        [0, 1, 10, 3, 4, 5, 9, 7, 8, 2, 6, 11],
        [0; 12],
    ),
    // B
    face_turn(
        [0, 1, 3, 7, 4, 5, 2, 6],
        [0, 0, 1, 2, 0, 0, 2, 1],
        [0, 1, 2, 11, 4, 5, 6, 10, 8, 9, 3, 7],
        [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1],
    ),
];

impl CubieState {
    pub const SOLVED: CubieState = CubieState {
        corner_perm: [0, 1, 2, 3, 4, 5, 6, 7],
        corner_ori: [0; NUM_CORNERS],
        edge_perm: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        edge_ori: [0; NUM_EDGES],
    };

    /// Builds a state from raw arrays, rejecting anything a physical cube
    /// cannot reach.
    pub fn from_parts(
        corner_perm: [u8; NUM_CORNERS],
        corner_ori: [u8; NUM_CORNERS],
        edge_perm: [u8; NUM_EDGES],
        edge_ori: [u8; NUM_EDGES],
    ) -> Result<CubieState, Unreachable> {
        let state = CubieState {
            corner_perm,
            corner_ori,
            edge_perm,
            edge_ori,
        };
        state.check()?;
        Ok(state)
    }

    pub fn corner_perm(&self) -> &[u8; NUM_CORNERS] {
        &self.corner_perm
    }

    pub fn corner_ori(&self) -> &[u8; NUM_CORNERS] {
        &self.corner_ori
    }

    pub fn edge_perm(&self) -> &[u8; NUM_EDGES] {
        &self.edge_perm
    }

    pub fn edge_ori(&self) -> &[u8; NUM_EDGES] {
        &self.edge_ori
    }

    pub fn is_solved(&self) -> bool {
        *self == CubieState::SOLVED
    }

    /// Verifies every reachability invariant.
    pub fn check(&self) -> Result<(), Unreachable> {
        if !is_bijection(&self.corner_perm) || !is_bijection(&self.edge_perm) {
            return Err(Unreachable::DuplicateCubie);
        }
        if self.corner_ori.iter().any(|&o| o > 2)
            || self.corner_ori.iter().map(|&o| o as u32).sum::<u32>() % 3 != 0
        {
            return Err(Unreachable::CornerTwist);
        }
        if self.edge_ori.iter().any(|&o| o > 1)
            || self.edge_ori.iter().map(|&o| o as u32).sum::<u32>() % 2 != 0
        {
            return Err(Unreachable::EdgeFlip);
        }
        if is_odd(&self.corner_perm) != is_odd(&self.edge_perm) {
            return Err(Unreachable::PermutationParity);
        }
        Ok(())
    }

    /// Group product: the state reached by performing `self` and then `other`.
    pub fn then(&self, other: &CubieState) -> CubieState {
        let mut out = CubieState::SOLVED;
        for i in 0..NUM_CORNERS {
            let from = other.corner_perm[i] as usize;
            out.corner_perm[i] = self.corner_perm[from];
            out.corner_ori[i] = (self.corner_ori[from] + other.corner_ori[i]) % 3;
        }
        for i in 0..NUM_EDGES {
            let from = other.edge_perm[i] as usize;
            out.edge_perm[i] = self.edge_perm[from];
            out.edge_ori[i] = (self.edge_ori[from] + other.edge_ori[i]) % 2;
        }
        out
    }

    pub fn inverse(&self) -> CubieState {
        let mut out = CubieState::SOLVED;
        for i in 0..NUM_CORNERS {
            let cubie = self.corner_perm[i] as usize;
            out.corner_perm[cubie] = i as u8;
            out.corner_ori[cubie] = (3 - self.corner_ori[i]) % 3;
        }
        for i in 0..NUM_EDGES {
            let cubie = self.edge_perm[i] as usize;
            out.edge_perm[cubie] = i as u8;
            out.edge_ori[cubie] = self.edge_ori[i];
        }
        out
    }

    /// The cubie action of a single clockwise quarter turn of `face`.
    pub fn face_turn(face: Face) -> CubieState {
        FACE_TURNS[face.index()]
    }

    pub fn apply_move(&self, m: Move) -> CubieState {
        let turn = &FACE_TURNS[m.face.index()];
        let mut out = *self;
        for _ in 0..m.turns.count() {
            out = out.then(turn);
        }
        debug_assert_eq!(out.check(), Ok(()));
        out
    }
}

impl Default for CubieState {
    fn default() -> Self {
        CubieState::SOLVED
    }
}

impl fmt::Debug for CubieState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubieState")
            .field("cp", &self.corner_perm)
            .field("co", &self.corner_ori)
            .field("ep", &self.edge_perm)
            .field("eo", &self.edge_ori)
            .finish()
    }
}

fn is_bijection(perm: &[u8]) -> bool {
    let mut seen = [false; NUM_EDGES];
    for &p in perm {
        let p = p as usize;
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Parity via cycle decomposition. Assumes `perm` is a bijection.
fn is_odd(perm: &[u8]) -> bool {
    let mut visited = [false; NUM_EDGES];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}
