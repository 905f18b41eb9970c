//! Typing sticker colors instead of face letters.

use std::collections::HashMap;

use anyhow::{bail, Context, Result};
use rubiks_bench::Face;

/// White top, green front: the scheme of most retail cubes.
pub const WESTERN: &str = "white=U,red=R,green=F,yellow=D,orange=L,blue=B";

/// Maps the first letter of each color name (case-insensitive) to a face.
#[derive(Debug, Clone)]
pub struct ColorMap(HashMap<char, Face>);

impl ColorMap {
    /// Parses `name=Face,name=Face,...`. A name may be a single letter.
    pub fn parse(spec: &str) -> Result<ColorMap> {
        let mut map = HashMap::new();
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (name, face) = entry
                .split_once('=')
                .with_context(|| format!("color entry {entry:?} is not name=FACE"))?;
            let alias = name
                .trim()
                .chars()
                .next()
                .with_context(|| format!("empty color name in {entry:?}"))?
                .to_ascii_lowercase();
            let mut letters = face.trim().chars();
            let face = match (letters.next().and_then(Face::from_letter), letters.next()) {
                (Some(f), None) => f,
                _ => bail!("color entry {entry:?} does not name a face"),
            };
            if map.insert(alias, face).is_some() {
                bail!("two colors start with {alias:?}");
            }
        }
        if map.len() != 6 || Face::ALL.iter().any(|f| !map.values().any(|v| v == f)) {
            bail!("the color map must assign each of the six faces exactly once");
        }
        Ok(ColorMap(map))
    }

    /// Replaces color letters with face letters. Anything else passes
    /// through so the state parser can report it.
    pub fn translate(&self, input: &str) -> String {
        input
            .chars()
            .map(|c| match self.0.get(&c.to_ascii_lowercase()) {
                Some(face) => face.letter(),
                None => c,
            })
            .collect()
    }
}
