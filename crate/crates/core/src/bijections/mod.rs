//! Explicit bijections between avoidance classes and the harness that checks
//! them exhaustively.

mod decompose;
mod maps;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use decompose::{prime_map, LRDecomposition, TopDecomposition};
pub use maps::{
    map_1342_to_3142, map_1423_to_1243, map_3124_to_1324, map_4123_to_1423, slide_minimum,
};
pub use verify::{verify_bijection, BijectionReport, Violation};

use crate::error::{Error, Result};
use crate::patterns::{Permutation, StatKind, VincularPattern};

/// The maps addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum NamedMap {
    /// 1-42-3 to 1-24-3 via left-to-right minima.
    F1423,
    /// 41-2-3 to 14-2-3 by sliding the letter 1.
    G4123,
    /// 13-4-2 to 31-4-2 via the bands around the maximum.
    Block1342,
    /// 31-2-4 to 13-2-4 by sliding the letter 1.
    Slide3124,
}

impl NamedMap {
    pub const ALL: [NamedMap; 4] = [NamedMap::F1423, NamedMap::G4123, NamedMap::Block1342, NamedMap::Slide3124];

    pub fn name(self) -> &'static str {
        match self {
            NamedMap::F1423 => "f-1423",
            NamedMap::G4123 => "g-4123",
            NamedMap::Block1342 => "block-1342",
            NamedMap::Slide3124 => "slide-3124",
        }
    }

    pub fn domain(self) -> &'static VincularPattern {
        match self {
            NamedMap::F1423 => maps::p1_42_3(),
            NamedMap::G4123 => maps::p41_2_3(),
            NamedMap::Block1342 => maps::p13_4_2(),
            NamedMap::Slide3124 => maps::p31_2_4(),
        }
    }

    pub fn codomain(self) -> &'static VincularPattern {
        match self {
            NamedMap::F1423 => maps::p1_24_3(),
            NamedMap::G4123 => maps::p14_2_3(),
            NamedMap::Block1342 => maps::p31_4_2(),
            NamedMap::Slide3124 => maps::p13_2_4(),
        }
    }

    /// Statistics the map is claimed to keep.
    pub fn preserved(self) -> &'static [StatKind] {
        match self {
            NamedMap::F1423 => &[StatKind::LrMinPositions, StatKind::LrMinValues],
            NamedMap::Block1342 => &[StatKind::LastLetter],
            NamedMap::G4123 | NamedMap::Slide3124 => &[],
        }
    }

    pub fn apply(self, pi: &Permutation) -> Result<Permutation> {
        match self {
            NamedMap::F1423 => map_1423_to_1243(pi),
            NamedMap::G4123 => map_4123_to_1423(pi),
            NamedMap::Block1342 => map_1342_to_3142(pi),
            NamedMap::Slide3124 => map_3124_to_1324(pi),
        }
    }

    /// `verify_bijection` with the map's own patterns and statistics.
    pub fn verify(self, n: usize) -> BijectionReport {
        verify_bijection(|p| self.apply(p), self.domain(), self.codomain(), n, self.preserved())
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedMap::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown map {s:?}")))
    }
}

impl From<NamedMap> for &'static str {
    fn from(m: NamedMap) -> Self {
        m.name()
    }
}

impl TryFrom<String> for NamedMap {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
