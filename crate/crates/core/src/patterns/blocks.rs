use serde::{Deserialize, Serialize};

use super::word::Permutation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A maximal monotone factor. Singletons are labelled increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub letters: Vec<u8>,
    pub direction: Direction,
}

/// Splits `pi` greedily into maximal monotone initial factors.
pub fn blocks(pi: &Permutation) -> Result<Vec<Block>> {
    if pi.is_empty() {
        return Err(Error::Empty("blocks of the empty permutation"));
    }
    let l = pi.letters();
    let mut out = Vec::new();
    let mut start = 0;
    while start < l.len() {
        let mut end = start + 1;
        let direction = if end < l.len() && l[end] < l[start] {
            Direction::Decreasing
        } else {
            Direction::Increasing
        };
        while end < l.len() && (l[end] > l[end - 1]) == (direction == Direction::Increasing) {
            end += 1;
        }
        out.push(Block {
            letters: l[start..end].to_vec(),
            direction,
        });
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn letters(pi: &str) -> Vec<String> {
        blocks(&pi.parse().unwrap())
            .unwrap()
            .into_iter()
            .map(|b| b.letters.iter().map(|l| l.to_string()).collect())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(letters("148769523"), ["148", "76", "952", "3"]);
        assert_eq!(letters("12345"), ["12345"]);
        assert_eq!(letters("2143"), ["21", "43"]);
        assert!(blocks(&Permutation::default()).is_err());
        let b = blocks(&"21".parse().unwrap()).unwrap();
        assert_eq!(b[0].direction, Direction::Decreasing);
        let b = blocks(&"1".parse().unwrap()).unwrap();
        assert_eq!(b[0].direction, Direction::Increasing);
    }

    #[test]
    fn reassembles_and_is_monotone() {
        for n in 1..=7u8 {
            for p in (1..=n).permutations(n as usize) {
                let pi = Permutation::new(p.clone()).unwrap();
                let bs = blocks(&pi).unwrap();
                let joined: Vec<u8> = bs.iter().flat_map(|b| b.letters.clone()).collect();
                assert_eq!(joined, p);
                for (i, b) in bs.iter().enumerate() {
                    assert!(!b.letters.is_empty());
                    let inc = b.direction == Direction::Increasing;
                    assert!(b.letters.windows(2).all(|w| (w[1] > w[0]) == inc));
                    // a singleton can only come last under the greedy rule
                    if b.letters.len() == 1 {
                        assert_eq!(i + 1, bs.len());
                    }
                }
            }
        }
    }
}
