//! Cube as a bare 54-sticker permutation.
//!
//! Stickers are located by their cubie position in {-1,0,1}^3 and outward
//! normal (x toward R, y toward U, z toward F). A clockwise face turn is a
//! -90° rotation about the face normal applied to every sticker in that
//! layer. Nothing here shares tables with the library's cubie model.

use rubiks_bench::cube::{Face, Move, MoveSequence};

type V = [i32; 3];

fn dot(a: V, b: V) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V, b: V) -> V {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Outward normal, screen-right and screen-down directions of each face as
/// seen in the facelet-string viewing convention. Order U, R, F, D, L, B.
const FRAMES: [(V, V, V); 6] = [
    ([0, 1, 0], [1, 0, 0], [0, 0, 1]),    // U from above, B edge on top
    ([1, 0, 0], [0, 0, -1], [0, -1, 0]),  // R from the right, U on top
    ([0, 0, 1], [1, 0, 0], [0, -1, 0]),   // F from the front, U on top
    ([0, -1, 0], [1, 0, 0], [0, 0, -1]),  // D from below, F edge on top
    ([-1, 0, 0], [0, 0, 1], [0, -1, 0]),  // L from the left, U on top
    ([0, 0, -1], [-1, 0, 0], [0, -1, 0]), // B from the back, U on top
];

fn sticker(index: usize) -> (V, V) {
    let (n, r, d) = FRAMES[index / 9];
    let row = (index % 9 / 3) as i32 - 1;
    let col = (index % 3) as i32 - 1;
    let pos = [
        n[0] + col * r[0] + row * d[0],
        n[1] + col * r[1] + row * d[1],
        n[2] + col * r[2] + row * d[2],
    ];
    (pos, n)
}

fn index_of(pos: V, normal: V) -> usize {
    let face = FRAMES.iter().position(|f| f.0 == normal).unwrap();
    let (n, r, d) = FRAMES[face];
    let rel = [pos[0] - n[0], pos[1] - n[1], pos[2] - n[2]];
    let col = dot(rel, r) + 1;
    let row = dot(rel, d) + 1;
    face * 9 + (row * 3 + col) as usize
}

/// -90° about unit axis `n`: v' = n(n·v) - n×v.
fn rotate_cw(n: V, v: V) -> V {
    let c = cross(n, v);
    let k = dot(n, v);
    [n[0] * k - c[0], n[1] * k - c[1], n[2] * k - c[2]]
}

/// `perm[i]` = index of the sticker that moves into position `i`.
fn quarter_turn(face: Face) -> [usize; 54] {
    let n = FRAMES[face as usize].0;
    let mut perm = [0usize; 54];
    for (i, slot) in perm.iter_mut().enumerate() {
        *slot = i;
    }
    for src in 0..54 {
        let (pos, normal) = sticker(src);
        if dot(pos, n) == 1 {
            let dst = index_of(rotate_cw(n, pos), rotate_cw(n, normal));
            perm[dst] = src;
        }
    }
    perm
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StickerCube(pub [u8; 54]);

impl StickerCube {
    pub fn solved() -> StickerCube {
        let mut s = [0u8; 54];
        for (i, v) in s.iter_mut().enumerate() {
            *v = (i / 9) as u8;
        }
        StickerCube(s)
    }

    pub fn from_string(s: &str) -> StickerCube {
        let mut out = [0u8; 54];
        for (i, c) in s.chars().enumerate() {
            out[i] = "URFDLB".find(c).unwrap() as u8;
        }
        StickerCube(out)
    }

    pub fn apply_move(&self, m: Move) -> StickerCube {
        let perm = quarter_turn(m.face);
        let mut cur = self.0;
        for _ in 0..m.turns.count() {
            let mut next = [0u8; 54];
            for i in 0..54 {
                next[i] = cur[perm[i]];
            }
            cur = next;
        }
        StickerCube(cur)
    }

    pub fn apply_sequence(&self, seq: &MoveSequence) -> StickerCube {
        seq.iter().fold(self.clone(), |c, &m| c.apply_move(m))
    }

    pub fn to_facelet_string(&self) -> String {
        self.0
            .iter()
            .map(|&f| b"URFDLB"[f as usize] as char)
            .collect()
    }
}
