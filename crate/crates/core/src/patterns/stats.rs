use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::Permutation;
use crate::error::{Error, Result};

/// Permutation statistics tracked by distribution tables and bijection checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    FirstLetter,
    LastLetter,
    LrMinPositions,
    LrMinValues,
    DescentSet,
    NumDescents,
}

impl StatKind {
    pub const ALL: [StatKind; 6] = [
        StatKind::FirstLetter,
        StatKind::LastLetter,
        StatKind::LrMinPositions,
        StatKind::LrMinValues,
        StatKind::DescentSet,
        StatKind::NumDescents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatKind::FirstLetter => "first_letter",
            StatKind::LastLetter => "last_letter",
            StatKind::LrMinPositions => "lr_min_positions",
            StatKind::LrMinValues => "lr_min_values",
            StatKind::DescentSet => "descent_set",
            StatKind::NumDescents => "num_descents",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown statistic {s:?}")))
    }
}

/// The value of a statistic. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatValue {
    Letter(u8),
    Positions(Vec<usize>),
    Letters(Vec<u8>),
    Count(usize),
}

impl StatValue {
    /// String form used as a JSON key: numbers as decimals, sequences
    /// comma-joined (the empty set is the empty string).
    pub fn key(&self) -> String {
        fn join<T: ToString>(v: &[T]) -> String {
            v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            StatValue::Letter(l) => l.to_string(),
            StatValue::Positions(p) => join(p),
            StatValue::Letters(l) => join(l),
            StatValue::Count(c) => c.to_string(),
        }
    }

    pub fn from_key(kind: StatKind, key: &str) -> Result<Self> {
        fn split<T: FromStr>(key: &str) -> Result<Vec<T>> {
            if key.is_empty() {
                return Ok(Vec::new());
            }
            key.split(',')
                .map(|p| p.parse().map_err(|_| Error::parse(0, format!("bad key {key:?}"))))
                .collect()
        }
        let bad = || Error::parse(0, format!("bad key {key:?}"));
        Ok(match kind {
            StatKind::FirstLetter | StatKind::LastLetter => {
                StatValue::Letter(key.parse().map_err(|_| bad())?)
            }
            StatKind::LrMinPositions | StatKind::DescentSet => StatValue::Positions(split(key)?),
            StatKind::LrMinValues => StatValue::Letters(split(key)?),
            StatKind::NumDescents => StatValue::Count(key.parse().map_err(|_| bad())?),
        })
    }
}

impl fmt::Display for StatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatValue::Positions(_) | StatValue::Letters(_) => write!(f, "{{{}}}", self.key()),
            _ => f.write_str(&self.key()),
        }
    }
}

pub fn statistic(pi: &Permutation, kind: StatKind) -> Result<StatValue> {
    if pi.is_empty() {
        return Err(Error::Empty("statistics need a nonempty permutation"));
    }
    Ok(statistic_of(pi.letters(), kind))
}

pub(crate) fn statistic_of(l: &[u8], kind: StatKind) -> StatValue {
    match kind {
        StatKind::FirstLetter => StatValue::Letter(l[0]),
        StatKind::LastLetter => StatValue::Letter(l[l.len() - 1]),
        StatKind::LrMinPositions => StatValue::Positions(
            lr_minima(l).map(|(i, _)| i + 1).collect(),
        ),
        StatKind::LrMinValues => StatValue::Letters(lr_minima(l).map(|(_, v)| v).collect()),
        StatKind::DescentSet => StatValue::Positions(descents(l).collect()),
        StatKind::NumDescents => StatValue::Count(descents(l).count()),
    }
}

/// (0-based index, value) of each left-to-right minimum.
pub(crate) fn lr_minima(l: &[u8]) -> impl Iterator<Item = (usize, u8)> + '_ {
    let mut min = u8::MAX;
    l.iter().enumerate().filter_map(move |(i, &v)| {
        if v < min {
            min = v;
            Some((i, v))
        } else {
            None
        }
    })
}

/// 1-based descent indices.
fn descents(l: &[u8]) -> impl Iterator<Item = usize> + '_ {
    l.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stat(p: &str, kind: StatKind) -> StatValue {
        statistic(&p.parse().unwrap(), kind).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(stat("34152", StatKind::LrMinValues), StatValue::Letters(vec![3, 1]));
        assert_eq!(stat("34152", StatKind::LrMinPositions), StatValue::Positions(vec![1, 3]));
        assert_eq!(stat("12345", StatKind::DescentSet), StatValue::Positions(vec![]));
        assert_eq!(
            stat("148769523", StatKind::DescentSet),
            StatValue::Positions(vec![3, 4, 6, 7])
        );
        assert_eq!(stat("148769523", StatKind::NumDescents), StatValue::Count(4));
        assert_eq!(stat("34152", StatKind::FirstLetter), StatValue::Letter(3));
        assert_eq!(stat("34152", StatKind::LastLetter), StatValue::Letter(2));
        assert!(statistic(&Permutation::default(), StatKind::FirstLetter).is_err());
    }

    #[test]
    fn keys_round_trip() {
        for kind in StatKind::ALL {
            let v = stat("148769523", kind);
            assert_eq!(StatValue::from_key(kind, &v.key()).unwrap(), v);
            assert_eq!(kind.name().parse::<StatKind>().unwrap(), kind);
        }
        assert_eq!(stat("12345", StatKind::DescentSet).key(), "");
    }
}
